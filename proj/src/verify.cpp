#include "dynirr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "dynirr/census.hpp"
#include "dynirr/enumr.hpp"
#include "dynirr/error.hpp"
#include "dynirr/multiset.hpp"
#include "dynirr/orbit.hpp"
#include "dynirr/parallel.hpp"
#include "dynirr/poly.hpp"
#include "dynirr/quad.hpp"

namespace dynirr::verify {

namespace {

using ff::Element;
using ff::Field;
using json = report::json;
using quad::QuadPoly;

// Odd prime powers q with lo <= q <= hi, ascending.
std::vector<Field> odd_fields(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::pair<std::uint64_t, Field>> out;
  for (std::uint64_t p = 3; p <= hi; p += 2) {
    if (!ff::is_prime(p)) continue;
    std::uint64_t q = p;
    for (unsigned k = 1; q <= hi; ++k, q *= p)
      if (q >= lo) out.emplace_back(q, Field::create(p, k));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Field> fields;
  for (auto& [q, f] : out) fields.push_back(f);
  return fields;
}

std::vector<Field> fields_or_override(const Config& c, std::vector<Field> defaults) {
  if (c.field) return {*c.field};
  return defaults;
}

std::vector<Field> fields_of(std::initializer_list<std::pair<std::uint64_t, unsigned>> list) {
  std::vector<Field> out;
  for (auto [p, k] : list) out.push_back(Field::create(p, k));
  return out;
}

std::string q_label(const Field& f) { return "q=" + std::to_string(f.order()); }

// ---------------------------------------------------------------- oracle

void suite_oracle(const Config& c, SuiteResult& r) {
  const auto fields = fields_or_override(
      c, c.level == Level::Desk ? fields_of({{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}})
                                : fields_of({{3, 1}, {5, 1}, {7, 1}}));
  json per_q = json::array();
  for (const auto& f : fields) {
    std::uint64_t checked = 0, di = 0;
    std::uint64_t max_depth = 0;
    for (const auto& p : quad::all_quadratics(f)) {
      const auto rep = orbit::di_test_char(f, p);
      const auto depth = rep.oracle_depth();
      max_depth = std::max<std::uint64_t>(max_depth, depth);
      const auto oracle = orbit::di_test_oracle(f, p, static_cast<unsigned>(depth));
      ++checked;
      if (rep.dynamically_irreducible) {
        ++di;
        if (!oracle.all_irreducible)
          r.fail(q_label(f) + ": " + quad::format(f, p) + " passes the character test but iterate " +
                 std::to_string(*oracle.first_reducible) + " is reducible");
      } else if (oracle.first_reducible != std::optional<unsigned>(rep.fail_step)) {
        r.fail(q_label(f) + ": " + quad::format(f, p) + " fails the character test at step " +
               std::to_string(rep.fail_step) + " but the oracle's first reducible iterate is " +
               (oracle.first_reducible ? std::to_string(*oracle.first_reducible) : std::string("none")));
      }
    }
    per_q.push_back({{"q", f.order()}, {"polynomials", checked}, {"di", di}, {"max_oracle_depth", max_depth}});
  }
  r.data["fields"] = per_q;
}

// ---------------------------------------------------------------- census

census::CensusOptions census_opts(const Config& c, std::uint32_t depth = 0) {
  census::CensusOptions o;
  o.jobs = c.jobs;
  o.keep_list = true;
  o.params.filter_depth = depth;
  return o;
}

void suite_census(const Config& c, SuiteResult& r) {
  const auto fields = fields_or_override(c, odd_fields(3, c.level == Level::Desk ? 101 : 31));
  json per_q = json::array();
  for (const auto& f : fields) {
    const auto base = census::census_monic(f, census_opts(c));
    if (base.di != (f.order() - 1) * base.di_star)
      r.fail(q_label(f) + ": di " + std::to_string(base.di) + " != (q-1) di_star");
    const std::uint32_t k = base.filter_depth;
    json surv = json::object();
    for (std::uint32_t depth : {1u, k, 3 * k}) {
      const auto other = census::census_monic(f, census_opts(c, depth));
      surv[std::to_string(depth)] = other.stage1_survivors;
      if (other.di_star != base.di_star || other.monic_list != base.monic_list)
        r.fail(q_label(f) + ": filter depth " + std::to_string(depth) + " gives di_star " +
               std::to_string(other.di_star) + ", default gives " + std::to_string(base.di_star));
    }
    const auto serial = census::census_monic_serial(f, census_opts(c));
    if (serial.di_star != base.di_star || serial.monic_list != base.monic_list)
      r.fail(q_label(f) + ": serial reference di_star " + std::to_string(serial.di_star) + " differs from " +
             std::to_string(base.di_star));
    if (serial.stage1_survivors != base.stage1_survivors)
      r.fail(q_label(f) + ": serial reference survivor count differs");
    per_q.push_back({{"q", f.order()}, {"di_star", base.di_star}, {"di", base.di}, {"survivors_by_depth", surv}});
  }
  r.data["fields"] = per_q;
}

void suite_lowerbound(const Config& c, SuiteResult& r) {
  const auto fields = fields_or_override(c, odd_fields(3, c.level == Level::Desk ? 101 : 31));
  json per_q = json::array();
  for (const auto& f : fields) {
    const auto res = census::census_monic(f, census_opts(c));
    const std::uint64_t q = f.order();
    // 4 di >= (q-1)^2, in integers.
    if (4 * res.di < (q - 1) * (q - 1))
      r.fail(q_label(f) + ": di = " + std::to_string(res.di) + " < (q-1)^2/4 = " +
             std::to_string((q - 1) * (q - 1) / 4.0));
    per_q.push_back({{"q", q}, {"di", res.di}, {"ratio", 4.0 * res.di / static_cast<double>((q - 1) * (q - 1))}});
  }
  r.data["fields"] = per_q;
}

// ---------------------------------------------------------------- q = 3

void suite_groundtruth(const Config& c, SuiteResult& r) {
  const Field f = Field::create(3);
  // Dense oracle only: an orbit over F_3 repeats within 3 steps, so every
  // iterate up to degree 2^(q+1) settles the question.
  const unsigned depth = f.order() + 1;
  std::vector<QuadPoly> monic_di;
  std::uint64_t all_di = 0;
  for (const auto& p : quad::all_quadratics(f)) {
    const poly::DensePoly dense = quad::to_dense(f, p);
    bool irreducible = true;
    for (unsigned n = 1; n <= depth && irreducible; ++n) irreducible = poly::is_irreducible(f, poly::iterate(f, dense, n));
    if (!irreducible) continue;
    ++all_di;
    if (p.is_monic()) monic_di.push_back(p);
  }
  const auto census = census::census_monic(f, census_opts(c));
  const QuadPoly x2p1 = QuadPoly::monic(f, f.zero(), f.one());
  if (monic_di != std::vector<QuadPoly>{x2p1})
    r.fail("factorization brute force does not give [X^2+1] as the only monic DI polynomial");
  if (all_di != 2) r.fail("factorization brute force gives DI_3 = " + std::to_string(all_di) + ", expected 2");
  if (census.di_star != monic_di.size() || census.di != all_di || census.monic_list != monic_di)
    r.fail("census (di_star " + std::to_string(census.di_star) + ", di " + std::to_string(census.di) +
           ") disagrees with the brute force (" + std::to_string(monic_di.size()) + ", " + std::to_string(all_di) + ")");
  std::vector<QuadPoly> streamed;
  census::census_full(f, census_opts(c), [&](const QuadPoly& p) { streamed.push_back(p); });
  std::sort(streamed.begin(), streamed.end());
  const std::vector<QuadPoly> expected{x2p1, QuadPoly::create(f, f.element(2), f.zero(), f.element(2))};
  if (streamed != expected) r.fail("census_full over F_3 does not stream {X^2+1, 2X^2+2}");
  r.data = {{"di_star", census.di_star}, {"di", census.di}, {"brute_force_di", all_di}};
}

// ---------------------------------------------------------------- family

std::vector<QuadPoly> family(const Field& f, Element b) {
  std::vector<QuadPoly> out;
  for (auto a : f.elements())
    if (!a.is_zero() && f.is_nonsquare(f.mul(a, b))) out.push_back(QuadPoly::fixed_point_family(f, a, b));
  return out;
}

void suite_family(const Config& c, SuiteResult& r) {
  const auto fields = fields_or_override(c, fields_of({{5, 1}, {13, 1}, {7, 1}, {11, 1}}));
  json per_q = json::array();
  for (const auto& f : fields) {
    const bool expect_di = f.minus_one_is_square();
    std::uint64_t confirmed_dense = 0;
    for (auto b : f.elements()) {
      if (b.is_zero()) continue;
      const auto fam = family(f, b);
      const std::string label = q_label(f) + ", b=" + f.format(b);
      if (fam.size() != (f.order() - 1) / 2) r.fail(label + ": family has " + std::to_string(fam.size()) + " members");
      const auto v = multiset::di_set_test(f, fam);
      if (expect_di) {
        if (!v.is_di()) r.fail(label + ": family rejected at word (" + quad::format_word(v.word) + ")");
        continue;
      }
      if (v.is_di()) {
        r.fail(label + ": family accepted although -1 is a nonsquare");
        continue;
      }
      if (v.kind == multiset::SetVerdict::Kind::PreconditionFailed) {
        // The witness is the one-letter word (bad_index): that member is itself reducible.
        const auto& bad = fam[v.bad_index];
        if (quad::is_irreducible_quad(f, bad) || poly::is_irreducible(f, quad::to_dense(f, bad)))
          r.fail(label + ": member " + quad::format(f, bad) + " flagged reducible but is irreducible");
        else
          ++confirmed_dense;
        continue;
      }
      if (!multiset::witness_is_valid(f, fam, v)) r.fail(label + ": witness does not replay");
      if (v.word.length() <= 3) {
        if (poly::is_irreducible(f, quad::expand_word(f, fam, v.word)))
          r.fail(label + ": witness word (" + quad::format_word(v.word) + ") expands to an irreducible polynomial");
        else
          ++confirmed_dense;
      }
    }
    per_q.push_back({{"q", f.order()}, {"minus_one_is_square", expect_di}, {"witnesses_confirmed_dense", confirmed_dense}});
  }
  r.data["fields"] = per_q;
}

// ---------------------------------------------------------------- sets

void suite_sets(const Config& c, SuiteResult& r) {
  const auto fields = fields_or_override(c, fields_of({{3, 1}, {5, 1}}));
  json per_q = json::array();
  for (const auto& f : fields) {
    enumr::EnumOptions opts;
    opts.jobs = c.jobs;
    const auto e = enumr::enum_all(f, 2, opts);
    const auto b = enumr::brute_force_sets(f, 2, 4);
    const std::set<enumr::QuadSet> got(e.set_list->begin(), e.set_list->end());
    const std::set<enumr::QuadSet> want(b.sets.begin(), b.sets.end());
    if (e.audit_failures != 0) r.fail(q_label(f) + ": " + std::to_string(e.audit_failures) + " emitted sets fail the audit");
    for (const auto& s : want) {
      if (got.count(s)) continue;
      // A missed set is a finding; confirm it with the dense oracle first.
      const bool dense_di = !multiset::first_reducible_word(f, s, 4).has_value();
      r.fail(q_label(f) + ": DI set {" + quad::format_set(f, s) + "} missing from the enumeration" +
             (dense_di ? " (dense oracle confirms all words up to length 4 irreducible)" : " (dense oracle disagrees)"));
    }
    for (const auto& s : got)
      if (!want.count(s)) r.fail(q_label(f) + ": enumeration emits {" + quad::format_set(f, s) + "} not in the brute force");
    per_q.push_back({{"q", f.order()},
                     {"r", 2},
                     {"count_total", e.count_total},
                     {"brute_force", b.sets.size()},
                     {"counts_per_part", e.counts_per_part},
                     {"overlaps", e.overlaps},
                     {"candidates", b.candidates}});
  }
  r.data["fields"] = per_q;

  // r = 3 comparison of both part-3 constructions; informational.
  if (c.level == Level::Desk && !c.field) {
    json extra = json::array();
    const Field f = Field::create(5);
    const auto b = enumr::brute_force_sets(f, 3, 3);
    for (auto method : {enumr::Part3Method::ClosureValues, enumr::Part3Method::Literal}) {
      enumr::EnumOptions opts;
      opts.jobs = c.jobs;
      opts.part3 = method;
      const auto e = enumr::enum_all(f, 3, opts);
      std::uint64_t missing = 0;
      for (const auto& s : b.sets)
        if (!std::binary_search(e.set_list->begin(), e.set_list->end(), s)) ++missing;
      const char* name = method == enumr::Part3Method::Literal ? "literal" : "closure-values";
      extra.push_back({{"q", 5}, {"r", 3}, {"part3", name}, {"count_total", e.count_total},
                       {"brute_force", b.sets.size()}, {"missing", missing}});
      if (missing != 0)
        r.notes.push_back(std::string("q=5, r=3, part-3 construction '") + name + "' misses " +
                          std::to_string(missing) + " of " + std::to_string(b.sets.size()) + " DI sets");
    }
    r.data["r3_comparison"] = extra;
  }
}

// ---------------------------------------------------------------- uniqueness

void suite_uniqueness(const Config& c, SuiteResult& r) {
  const Field f = c.field.value_or(Field::create(5));
  const unsigned pairs = 20;
  const unsigned max_len = 4;
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
  std::set<std::pair<QuadPoly, QuadPoly>> seen;
  json tested = json::array();
  while (seen.size() < pairs) {
    const auto g1 = QuadPoly::monic(f, f.element(pick(rng)), f.element(pick(rng)));
    const auto g2 = QuadPoly::monic(f, f.element(pick(rng)), f.element(pick(rng)));
    if (g1 == g2 || !seen.emplace(std::min(g1, g2), std::max(g1, g2)).second) continue;
    if (!multiset::monic_word_uniqueness_check(f, g1, g2, max_len))
      r.fail(q_label(f) + ": words over {" + quad::format(f, g1) + "; " + quad::format(f, g2) + "} collide");
    tested.push_back(quad::format(f, g1) + ";" + quad::format(f, g2));
  }
  r.data = {{"q", f.order()}, {"seed", c.seed}, {"max_len", max_len}, {"pairs", tested}};
}

// ---------------------------------------------------------------- scaling

void suite_scaling(const Config& c, SuiteResult& r) {
  const auto fields = fields_or_override(c, fields_of({{3, 1}, {5, 1}, {7, 1}}));
  json per_q = json::array();
  for (const auto& f : fields) {
    std::uint64_t checks = 0;
    for (const auto& p : quad::all_quadratics(f)) {
      const bool di = orbit::di_test_char(f, p).dynamically_irreducible;
      for (auto u : f.elements()) {
        if (u.is_zero()) continue;
        ++checks;
        const auto s = quad::scale(f, p, u);
        if (orbit::di_test_char(f, s).dynamically_irreducible != di)
          r.fail(q_label(f) + ": " + quad::format(f, p) + " and its scaling by " + f.format(u) + " differ");
      }
      const auto m = quad::monic_representative(f, p);
      if (!m.is_monic() || quad::scale(f, p, f.inv(p.a())) != m)
        r.fail(q_label(f) + ": monic representative of " + quad::format(f, p) + " is wrong");
    }
    per_q.push_back({{"q", f.order()}, {"checks", checks}});
  }
  r.data["fields"] = per_q;
}

// ---------------------------------------------------------------- determinism

void suite_determinism(const Config& c, SuiteResult& r) {
  const Field f = c.field.value_or(Field::create(c.level == Level::Desk ? 1009 : 211));
  const int many = std::max(2, resolve_jobs(c.jobs));
  auto run = [&](int jobs) {
    census::CensusOptions o;
    o.jobs = jobs;
    o.keep_list = true;
    o.keep_survivors = true;
    return census::census_monic(f, o);
  };
  const auto t0 = std::chrono::steady_clock::now();
  const auto one = run(1);
  const double one_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto n = run(many);
  const auto again = run(many);
  for (const auto* other : {&n, &again}) {
    if (other->di_star != one.di_star || other->stage1_survivors != one.stage1_survivors)
      r.fail(q_label(f) + ": counts differ between jobs=1 and jobs=" + std::to_string(other->jobs));
    if (other->survivors != one.survivors) r.fail(q_label(f) + ": survivor lists differ");
    if (other->monic_list != one.monic_list) r.fail(q_label(f) + ": DI lists differ");
  }
  if (one_seconds > 15 * 60)
    r.warnings.push_back("single-thread census took " + std::to_string(one_seconds) + " s (over 15 minutes)");
  r.data = {{"q", f.order()},
            {"jobs", json::array({1, many})},
            {"di_star", one.di_star},
            {"stage1_survivors", one.stage1_survivors},
            {"single_thread_seconds", one_seconds}};
}

// ---------------------------------------------------------------- telemetry

void compare_to_baseline(const json& now, const json& base, const std::string& path, SuiteResult& r) {
  if (now.is_object()) {
    for (auto it = now.begin(); it != now.end(); ++it)
      if (base.contains(it.key())) compare_to_baseline(it.value(), base[it.key()], path + "." + it.key(), r);
    return;
  }
  if (!now.is_number() || !base.is_number()) return;
  const double a = now.get<double>();
  const double b = base.get<double>();
  if (a == b) return;
  if (a <= 0 || b <= 0 || a > 2 * b || b > 2 * a)
    r.warnings.push_back("drift at " + path.substr(1) + ": " + std::to_string(b) + " -> " + std::to_string(a));
}

void suite_telemetry(const Config& c, SuiteResult& r) {
  r.blocking = false;
  const auto fields = fields_or_override(
      c, c.level == Level::Desk ? fields_of({{101, 1}, {211, 1}, {401, 1}, {1009, 1}}) : fields_of({{101, 1}, {211, 1}}));
  json survivors = json::object();
  json orbits = json::object();
  double lo = INFINITY, hi = 0;
  for (const auto& f : fields) {
    census::CensusOptions o;
    o.jobs = c.jobs;
    o.keep_list = false;
    const auto res = census::census_monic(f, o);
    const auto point = census::survivor_curve(f, o);
    lo = std::min(lo, point.normalized);
    hi = std::max(hi, point.normalized);
    survivors[std::to_string(f.order())] = point.normalized;
    orbits[std::to_string(f.order())] = {
        {"max_di_orbit", res.telemetry.max_di_orbit},
        {"reference_cap", res.telemetry.reference_cap},
        {"ratio", static_cast<double>(res.telemetry.max_di_orbit) / static_cast<double>(res.telemetry.reference_cap)},
        {"di_above_reference", res.telemetry.di_above_reference}};
    if (res.telemetry.di_above_reference > 0)
      r.warnings.push_back(q_label(f) + ": " + std::to_string(res.telemetry.di_above_reference) +
                           " DI orbits exceed ceil(q^{3/4})");
  }
  if (hi > 2 * lo)
    r.warnings.push_back("normalized survivor counts spread by more than 2x: " + std::to_string(lo) + " .. " +
                         std::to_string(hi));

  // Gamma sizes for random non-proportional DI pairs at q = 101.
  const Field g = Field::create(101);
  const auto di = enumr::all_di_polynomials(g, c.jobs);
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> pick(0, di.size() - 1);
  const unsigned depth = multiset::default_gamma_depth(g.order());
  const double bound = std::sqrt(101.0) * std::log(101.0) * std::log(101.0);
  std::uint64_t max_gamma = 0;
  std::vector<std::uint64_t> max_per_depth(depth, 0);
  for (int done = 0; done < 20;) {
    const auto& f1 = di[pick(rng)];
    const auto& f2 = di[pick(rng)];
    if (multiset::proportional(g, f1, f2)) continue;
    ++done;
    const auto rep = multiset::gamma_set(g, f1, f2, depth, c.jobs);
    max_gamma = std::max<std::uint64_t>(max_gamma, rep.gamma_set.size());
    for (unsigned n = 0; n < depth; ++n) max_per_depth[n] = std::max(max_per_depth[n], rep.sizes_per_depth[n]);
  }
  if (max_gamma > bound)
    r.warnings.push_back("max #Gamma " + std::to_string(max_gamma) + " exceeds q^{1/2} (log q)^2 = " + std::to_string(bound));

  // Validated value counts for DI pairs at q = 5 against ceil(q^{3/4}).
  const Field f5 = Field::create(5);
  std::uint64_t max_values = 0;
  for (const auto& s : enumr::brute_force_sets(f5, 2, 2).sets)
    max_values = std::max(max_values, multiset::di_set_test(f5, s).values_visited);

  r.data = {{"survivors_normalized", survivors},
            {"orbits", orbits},
            {"gamma", {{"q", 101}, {"depth", depth}, {"pairs", 20}, {"max_size", max_gamma},
                       {"max_size_per_depth", max_per_depth}, {"reference_bound", bound}}},
            {"set_values", {{"q", 5}, {"max_values_visited", max_values}, {"reference_bound", multiset::reference_value_bound(5)}}}};

  if (c.baseline_path) {
    std::ifstream in(*c.baseline_path);
    if (!in) {
      r.warnings.push_back("no telemetry baseline at " + *c.baseline_path);
    } else {
      const json base = json::parse(in, nullptr, false);
      if (base.is_discarded())
        r.warnings.push_back("telemetry baseline " + *c.baseline_path + " is not valid JSON");
      else
        compare_to_baseline(r.data, base, "", r);
    }
  }
}

struct SuiteEntry {
  const char* name;
  const char* title;
  void (*run)(const Config&, SuiteResult&);
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {"oracle", "character test agrees with the factorization oracle on every quadratic", suite_oracle},
      {"census", "DI_q = (q-1) DI_q* and counts independent of the filter depth", suite_census},
      {"lowerbound", "(q-1)^2/4 <= DI_q", suite_lowerbound},
      {"groundtruth", "DI_3* = 1 (X^2+1) and DI_3 = 2 by factorization brute force", suite_groundtruth},
      {"family", "a(X-b)^2+b families: DI iff -1 is a square", suite_family},
      {"sets", "enumerated DI pairs equal the brute-force DI pairs", suite_sets},
      {"uniqueness", "distinct composition words of two monic quadratics expand differently", suite_uniqueness},
      {"scaling", "DI status is invariant under f(uX)/u", suite_scaling},
      {"determinism", "census identical for one and many worker threads", suite_determinism},
      {"telemetry", "survivor, orbit and Gamma sizes against their reference growth rates", suite_telemetry},
  };
  return entries;
}

}  // namespace

std::optional<Level> parse_level(std::string_view s) {
  if (s == "quick") return Level::Quick;
  if (s == "desk") return Level::Desk;
  return std::nullopt;
}

std::string_view level_name(Level l) { return l == Level::Quick ? "quick" : "desk"; }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

bool is_suite(std::string_view name) {
  return std::any_of(registry().begin(), registry().end(), [&](const SuiteEntry& e) { return name == e.name; });
}

SuiteResult run_suite(std::string_view name, const Config& config) {
  const auto it =
      std::find_if(registry().begin(), registry().end(), [&](const SuiteEntry& e) { return name == e.name; });
  if (it == registry().end()) throw InvalidArgument("unknown suite '" + std::string(name) + "'");
  SuiteResult result;
  result.name = it->name;
  result.title = it->title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->run(config, result);
  } catch (const std::exception& e) {
    result.fail(std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

json suite_json(const SuiteResult& r) {
  return {{"suite", r.name},  {"title", r.title},       {"passed", r.passed},
          {"blocking", r.blocking}, {"failures", r.failures}, {"warnings", r.warnings},
          {"notes", r.notes}, {"data", r.data}};
}

}  // namespace dynirr::verify
