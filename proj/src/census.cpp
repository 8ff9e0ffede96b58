#include "dynirr/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "dynirr/error.hpp"
#include "dynirr/parallel.hpp"

namespace dynirr::census {

namespace {

using Clock = std::chrono::steady_clock;
using ff::Element;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_census_order(const Field& f) {
  if (f.order() > kMaxCensusOrder)
    throw ResourceExhausted("census over F_" + std::to_string(f.order()) + " exceeds the supported order " +
                            std::to_string(kMaxCensusOrder));
}

// Monic X^2 + bX + c on packed indices.
struct MonicKernel {
  const Field& f;
  std::uint32_t b;
  std::uint32_t c;

  std::uint32_t eval(std::uint32_t x) const { return f.add_raw(f.mul_raw(f.add_raw(x, b), x), c); }
  std::uint32_t critical_value(std::uint32_t half_neg_b) const { return eval(half_neg_b); }
};

// Per-thread visited marks for exact orbit walks. A generation counter
// avoids clearing the array between polynomials.
class VisitedMarks {
 public:
  explicit VisitedMarks(std::uint32_t q) : marks_(q, 0) {}

  void next() {
    if (++generation_ == 0) {
      std::fill(marks_.begin(), marks_.end(), 0);
      generation_ = 1;
    }
  }
  // Returns false if x was already marked in this generation.
  bool mark(std::uint32_t x) {
    if (marks_[x] == generation_) return false;
    marks_[x] = generation_;
    return true;
  }

 private:
  std::vector<std::uint32_t> marks_;
  std::uint32_t generation_ = 0;
};

bool stage1_pass(const MonicKernel& k, std::uint32_t gamma, std::uint32_t depth) {
  std::uint32_t x = k.critical_value(gamma);
  if (k.f.nonsquare_raw(k.f.neg_raw(x)) == false) return false;
  for (std::uint32_t n = 2; n <= depth; ++n) {
    x = k.eval(x);
    if (!k.f.nonsquare_raw(x)) return false;
  }
  return true;
}

struct ExactOutcome {
  bool di = false;
  std::uint64_t tests = 0;
  std::uint64_t orbit_size = 0;
};

// Exact adjusted-orbit test. Only x_n with n >= 2 are marked: a return to
// x_1 is tested once more without the sign.
ExactOutcome stage2_exact(const MonicKernel& k, std::uint32_t gamma, VisitedMarks& marks,
                          std::optional<std::uint64_t> cap) {
  ExactOutcome out;
  marks.next();
  std::uint32_t x = k.critical_value(gamma);
  out.tests = 1;
  if (!k.f.nonsquare_raw(k.f.neg_raw(x))) return out;
  for (;;) {
    x = k.eval(x);
    if (!marks.mark(x)) {
      out.di = true;
      return out;
    }
    if (cap && out.tests >= *cap) {
      out.di = true;
      return out;
    }
    ++out.tests;
    ++out.orbit_size;
    if (!k.f.nonsquare_raw(x)) return out;
  }
}

}  // namespace

CensusResult census_monic(const Field& f, const CensusOptions& options) {
  require_census_order(f);
  const std::uint32_t q = f.order();
  const std::uint32_t depth = options.params.filter_depth_for(q);
  const int jobs = resolve_jobs(options.jobs);
  const std::uint32_t neg_half = f.neg(f.inv(f.from_int(2))).index();

  CensusResult result;
  result.q = q;
  result.filter_depth = depth;
  result.jobs = jobs;
  result.telemetry.reference_cap = orbit::reference_orbit_cap(q);

  // Row b of the (b, c) grid; rows are merged in b order afterwards.
  std::vector<std::vector<std::uint32_t>> survivors(q);
  std::vector<std::vector<std::uint32_t>> di_rows(q);

  const auto t1 = Clock::now();
#pragma omp parallel for schedule(dynamic, 4) num_threads(jobs)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(q); ++bi) {
    const auto b = static_cast<std::uint32_t>(bi);
    const std::uint32_t gamma = f.mul_raw(b, neg_half);
    auto& row = survivors[b];
    for (std::uint32_t c = 0; c < q; ++c)
      if (stage1_pass(MonicKernel{f, b, c}, gamma, depth)) row.push_back(c);
  }
  result.wall_times.stage1_seconds = seconds_since(t1);

  const auto t2 = Clock::now();
  std::uint64_t max_di_orbit = 0;
  std::uint64_t max_walk = 0;
  std::uint64_t above = 0;
  const std::uint64_t ref = result.telemetry.reference_cap;
#pragma omp parallel num_threads(jobs) reduction(max : max_di_orbit, max_walk) reduction(+ : above)
  {
    VisitedMarks marks(q);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(q); ++bi) {
      const auto b = static_cast<std::uint32_t>(bi);
      const std::uint32_t gamma = f.mul_raw(b, neg_half);
      for (std::uint32_t c : survivors[b]) {
        const auto out = stage2_exact(MonicKernel{f, b, c}, gamma, marks, options.params.orbit_cap);
        max_walk = std::max(max_walk, out.tests);
        if (!out.di) continue;
        di_rows[b].push_back(c);
        max_di_orbit = std::max(max_di_orbit, out.orbit_size);
        if (out.orbit_size > ref) ++above;
      }
    }
  }
  result.wall_times.stage2_seconds = seconds_since(t2);
  result.telemetry.max_di_orbit = max_di_orbit;
  result.telemetry.max_survivor_walk = max_walk;
  result.telemetry.di_above_reference = above;

  if (options.keep_list) result.monic_list.emplace();
  if (options.keep_survivors) result.survivors.emplace();
  for (std::uint32_t b = 0; b < q; ++b) {
    result.stage1_survivors += survivors[b].size();
    result.di_star += di_rows[b].size();
    if (options.keep_survivors)
      for (auto c : survivors[b]) result.survivors->emplace_back(b, c);
    if (options.keep_list)
      for (auto c : di_rows[b]) result.monic_list->push_back(QuadPoly::monic(f, f.element(b), f.element(c)));
  }
  result.di = (q - std::uint64_t{1}) * result.di_star;
  return result;
}

CensusResult census_monic_serial(const Field& f, const CensusOptions& options) {
  require_census_order(f);
  const std::uint32_t q = f.order();
  const std::uint32_t depth = options.params.filter_depth_for(q);

  CensusResult result;
  result.q = q;
  result.filter_depth = depth;
  result.jobs = 1;
  result.telemetry.reference_cap = orbit::reference_orbit_cap(q);
  if (options.keep_list) result.monic_list.emplace();
  if (options.keep_survivors) result.survivors.emplace();

  const auto t0 = Clock::now();
  for (auto b : f.elements()) {
    for (auto c : f.elements()) {
      const auto p = QuadPoly::monic(f, b, c);
      bool survives = f.is_nonsquare(f.neg(quad::critical_value(f, p)));
      Element x = quad::critical_value(f, p);
      for (std::uint32_t n = 2; survives && n <= depth; ++n) {
        x = quad::eval(f, p, x);
        survives = f.is_nonsquare(x);
      }
      if (survives) {
        ++result.stage1_survivors;
        if (options.keep_survivors) result.survivors->emplace_back(b.index(), c.index());
      }

      orbit::AlgorithmParams exact;
      exact.orbit_cap = options.params.orbit_cap;
      const auto report = orbit::di_test_char(f, p, exact);
      if (survives) result.telemetry.max_survivor_walk = std::max(result.telemetry.max_survivor_walk, report.steps_tested);
      if (!report.dynamically_irreducible) continue;
      if (!survives) throw OracleDiscrepancy("DI polynomial " + quad::format(f, p) + " rejected by the stage-1 filter");
      ++result.di_star;
      const auto orbit_size = report.stats.critical_orbit_size();
      result.telemetry.max_di_orbit = std::max(result.telemetry.max_di_orbit, orbit_size);
      if (orbit_size > result.telemetry.reference_cap) ++result.telemetry.di_above_reference;
      if (options.keep_list) result.monic_list->push_back(p);
    }
  }
  result.wall_times.stage2_seconds = seconds_since(t0);
  result.di = (q - std::uint64_t{1}) * result.di_star;
  return result;
}

CensusResult census_full(const Field& f, const CensusOptions& options, const Sink& emit) {
  CensusOptions opts = options;
  opts.keep_list = true;
  CensusResult result = census_monic(f, opts);
  const auto t0 = Clock::now();
  for (const auto& p : *result.monic_list)
    for (auto u : f.elements())
      if (!u.is_zero()) emit(quad::scale(f, p, u));
  result.wall_times.expand_seconds = seconds_since(t0);
  if (!options.keep_list) result.monic_list.reset();
  return result;
}

SurvivorPoint survivor_curve(const Field& f, const CensusOptions& options) {
  require_census_order(f);
  const std::uint32_t q = f.order();
  const std::uint32_t depth = options.params.filter_depth_for(q);
  const int jobs = resolve_jobs(options.jobs);
  const std::uint32_t neg_half = f.neg(f.inv(f.from_int(2))).index();
  std::uint64_t survivors = 0;
#pragma omp parallel for schedule(dynamic, 4) num_threads(jobs) reduction(+ : survivors)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(q); ++bi) {
    const auto b = static_cast<std::uint32_t>(bi);
    const std::uint32_t gamma = f.mul_raw(b, neg_half);
    for (std::uint32_t c = 0; c < q; ++c)
      if (stage1_pass(MonicKernel{f, b, c}, gamma, depth)) ++survivors;
  }
  const double qd = q;
  return {q, survivors, depth, static_cast<double>(survivors) / (std::pow(qd, 1.5) * std::log(qd))};
}

}  // namespace dynirr::census
