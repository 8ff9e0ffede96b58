#include "dynirr/enumr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <unordered_set>

#include "dynirr/census.hpp"
#include "dynirr/parallel.hpp"

namespace dynirr::enumr {

namespace {

// Calls visit(indices) for every k-subset of {0, ..., n-1} in lexicographic
// order; stops early when visit returns false.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!visit(std::span<const std::size_t>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  long double acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return static_cast<std::uint64_t>(std::llround(acc));
}

bool test_set(const Field& f, const QuadSet& s, Budget& budget, PartTelemetry& tel) {
  const auto v = multiset::di_set_test(f, s);
  ++tel.sets_tested;
  budget.charge(v.tests_performed);
  return v.is_di();
}

}  // namespace

QuadSet canonical(QuadSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<QuadPoly> all_di_polynomials(const Field& f, int jobs) {
  std::vector<QuadPoly> out;
  census::CensusOptions opts;
  opts.jobs = jobs;
  census::census_full(f, opts, [&](const QuadPoly& p) { out.push_back(p); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QuadSet> enum_part1(const Field& f, unsigned r, std::span<const QuadPoly> di_polys, Budget& budget,
                                PartTelemetry& tel) {
  if (r < 2) throw InvalidArgument("r must be at least 2");
  std::vector<QuadSet> out;
  for (const auto& base : di_polys) {
    // Multiples above base in canonical order, so each set is built once
    // (from its smallest member). Non-DI multiples cannot be in a DI set.
    std::vector<QuadPoly> multiples;
    for (auto lambda : f.elements()) {
      if (lambda.is_zero() || lambda == f.one()) continue;
      const auto m = QuadPoly::create(f, f.mul(lambda, base.a()), f.mul(lambda, base.b()), f.mul(lambda, base.c()));
      if (base < m && std::binary_search(di_polys.begin(), di_polys.end(), m)) multiples.push_back(m);
    }
    std::sort(multiples.begin(), multiples.end());
    for_each_combination(multiples.size(), r - 1, [&](std::span<const std::size_t> pick) {
      QuadSet s{base};
      for (auto i : pick) s.push_back(multiples[i]);
      s = canonical(std::move(s));
      if (test_set(f, s, budget, tel)) out.push_back(std::move(s));
      return !budget.exhausted();
    });
    if (budget.exhausted()) break;
  }
  tel.sets_emitted = out.size();
  return out;
}

std::vector<QuadSet> enum_part2(const Field& f, unsigned r, Budget& budget, PartTelemetry& tel) {
  if (r < 2) throw InvalidArgument("r must be at least 2");
  std::vector<QuadSet> out;
  if (!f.minus_one_is_square()) return out;
  for (auto b : f.elements()) {
    if (b.is_zero()) continue;
    std::vector<Element> admissible;
    for (auto a : f.elements())
      if (!a.is_zero() && f.is_nonsquare(f.mul(a, b))) admissible.push_back(a);
    for_each_combination(admissible.size(), r, [&](std::span<const std::size_t> pick) {
      QuadSet s;
      for (auto i : pick) s.push_back(QuadPoly::fixed_point_family(f, admissible[i], b));
      s = canonical(std::move(s));
      if (test_set(f, s, budget, tel)) out.push_back(std::move(s));
      return !budget.exhausted();
    });
    if (budget.exhausted()) break;
  }
  tel.sets_emitted = out.size();
  return out;
}

bool in_common_fixed_point_family(const Field& f, const QuadPoly& f1, const QuadPoly& f2) {
  return f1.gamma() == f2.gamma() && quad::critical_value(f, f1) == f1.gamma() &&
         quad::critical_value(f, f2) == f2.gamma();
}

std::optional<std::pair<Element, Element>> pick_deltas(const Field& f, const QuadPoly& f1, const QuadPoly& f2,
                                                       Part3Method method) {
  std::deque<Element> queue;
  if (method == Part3Method::Literal)
    queue = {f1.gamma(), f2.gamma()};
  else
    queue = {quad::critical_value(f, f1), quad::critical_value(f, f2)};
  std::unordered_set<std::uint32_t> seen;
  std::optional<Element> first;
  while (!queue.empty()) {
    const Element v = queue.front();
    queue.pop_front();
    if (!seen.insert(v.index()).second) continue;
    if (!first) {
      first = v;
    } else {
      return std::pair{*first, v};
    }
    queue.push_back(quad::eval(f, f1, v));
    queue.push_back(quad::eval(f, f2, v));
  }
  return std::nullopt;
}

std::vector<QuadPoly> solve_candidates(const Field& f, Element d1, Element d2, Element alpha1, Element alpha2,
                                       Element alpha3) {
  if (d1 == d2) throw InvalidArgument("solve_candidates needs distinct d1, d2");
  // g(x)/a = x^2 + B x + C through (d1, alpha1) and (d2, alpha2).
  const Element B = f.div(f.sub(f.sub(alpha1, alpha2), f.sub(f.square(d1), f.square(d2))), f.sub(d1, d2));
  const Element C = f.sub(f.sub(alpha1, f.square(d1)), f.mul(B, d1));
  // g(a alpha1)/a = alpha3:  alpha1^2 a^2 + B alpha1 a + (C - alpha3) = 0.
  std::vector<Element> roots;
  if (alpha1.is_zero()) {
    if (C == alpha3)
      for (auto a : f.elements())
        if (!a.is_zero()) roots.push_back(a);
  } else {
    const Element disc = f.sub(f.square(B), f.mul(f.from_int(4), f.sub(C, alpha3)));
    if (auto s = f.sqrt(disc)) {
      const Element denom = f.inv(f.add(alpha1, alpha1));
      const Element r1 = f.mul(f.sub(*s, B), denom);
      const Element r2 = f.mul(f.sub(f.neg(*s), B), denom);
      if (!r1.is_zero()) roots.push_back(r1);
      if (r2 != r1 && !r2.is_zero()) roots.push_back(r2);
    }
  }
  std::vector<QuadPoly> out;
  out.reserve(roots.size());
  for (auto a : roots) out.push_back(QuadPoly::create(f, a, f.mul(a, B), f.mul(a, C)));
  return out;
}

std::vector<QuadPoly> solve_through_values(const Field& f, Element d1, Element d2, Element alpha1, Element alpha2,
                                           Element alpha3) {
  if (d1 == d2) throw InvalidArgument("solve_through_values needs distinct d1, d2");
  // Line through (d1, alpha1), (d2, alpha2): L(x) = alpha1 + m (x - d1).
  const Element m = f.div(f.sub(alpha2, alpha1), f.sub(d2, d1));
  // g = a (x - d1)(x - d2) + L(x), expanded for a given a.
  auto build = [&](Element a) {
    const Element b = f.sub(m, f.mul(a, f.add(d1, d2)));
    const Element c = f.add(f.mul(a, f.mul(d1, d2)), f.sub(alpha1, f.mul(m, d1)));
    return QuadPoly::create(f, a, b, c);
  };
  std::vector<QuadPoly> out;
  const Element x3 = alpha1;
  const Element line3 = f.add(alpha1, f.mul(m, f.sub(x3, d1)));
  if (x3 == d1 || x3 == d2) {
    if (line3 != alpha3) return out;
    for (auto a : f.elements())
      if (!a.is_zero()) out.push_back(build(a));
    return out;
  }
  const Element a = f.div(f.sub(alpha3, line3), f.mul(f.sub(x3, d1), f.sub(x3, d2)));
  if (!a.is_zero()) out.push_back(build(a));
  return out;
}

std::vector<QuadSet> enum_part3(const Field& f, unsigned r, std::span<const QuadPoly> di_polys,
                                const EnumOptions& options, Budget& budget, PartTelemetry& tel) {
  if (r < 2) throw InvalidArgument("r must be at least 2");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < di_polys.size(); ++i)
    for (std::size_t j = i + 1; j < di_polys.size(); ++j)
      if (!multiset::proportional(f, di_polys[i], di_polys[j]) &&
          !in_common_fixed_point_family(f, di_polys[i], di_polys[j]))
        pairs.emplace_back(i, j);
  tel.pairs_considered = pairs.size();

  const unsigned depth = options.gamma_depth.value_or(multiset::default_gamma_depth(f.order()));
  if (r >= 3) {
    const long double scan = static_cast<long double>(pairs.size()) * f.order() * std::ldexp(1.0L, depth + 1);
    if (scan > static_cast<long double>(budget.limit()))
      throw ResourceExhausted("part 3 Gamma scans alone need ~" + std::to_string(static_cast<double>(scan)) +
                              " character tests, above the budget of " + std::to_string(budget.limit()));
  }

  struct PairOutput {
    std::vector<QuadSet> sets;
    PartTelemetry tel;
    std::string skip;
  };
  std::vector<PairOutput> outputs(pairs.size());
  const int jobs = resolve_jobs(options.jobs);

#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::int64_t pi = 0; pi < static_cast<std::int64_t>(pairs.size()); ++pi) {
    if (budget.exhausted()) continue;
    auto& out = outputs[static_cast<std::size_t>(pi)];
    const QuadPoly& f1 = di_polys[pairs[static_cast<std::size_t>(pi)].first];
    const QuadPoly& f2 = di_polys[pairs[static_cast<std::size_t>(pi)].second];
    const QuadSet pair_set = canonical({f1, f2});
    if (!test_set(f, pair_set, budget, out.tel)) continue;
    if (r == 2) {
      out.sets.push_back(pair_set);
      continue;
    }

    const auto deltas = pick_deltas(f, f1, f2, options.part3);
    if (!deltas) {
      out.skip = quad::format_set(f, pair_set) + ": fewer than two composition values";
      continue;
    }
    const auto gamma = multiset::gamma_set(f, f1, f2, depth, 1);
    budget.charge(gamma.tests_performed);
    out.tel.max_gamma = gamma.gamma_set.size();
    if (gamma.gamma_set.empty()) {
      out.skip = quad::format_set(f, pair_set) + ": empty Gamma set";
      continue;
    }

    std::vector<QuadPoly> pool;
    for (auto a1 : gamma.gamma_set)
      for (auto a2 : gamma.gamma_set)
        for (auto a3 : gamma.gamma_set)
          for (auto& g : options.part3 == Part3Method::Literal
                             ? solve_candidates(f, deltas->first, deltas->second, a1, a2, a3)
                             : solve_through_values(f, deltas->first, deltas->second, a1, a2, a3))
            if (g != f1 && g != f2) pool.push_back(g);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    out.tel.max_pool = pool.size();

    // Members compatible with the pair; any DI r-set needs every triple DI.
    std::vector<QuadPoly> compatible;
    for (const auto& g : pool) {
      if (budget.exhausted()) break;
      if (test_set(f, canonical({f1, f2, g}), budget, out.tel)) compatible.push_back(g);
    }
    if (r == 3) {
      for (const auto& g : compatible) out.sets.push_back(canonical({f1, f2, g}));
      continue;
    }
    for_each_combination(compatible.size(), r - 2, [&](std::span<const std::size_t> pick) {
      QuadSet s{f1, f2};
      for (auto i : pick) s.push_back(compatible[i]);
      s = canonical(std::move(s));
      if (test_set(f, s, budget, out.tel)) out.sets.push_back(std::move(s));
      return !budget.exhausted();
    });
  }

  std::vector<QuadSet> all;
  for (auto& o : outputs) {
    tel.sets_tested += o.tel.sets_tested;
    tel.max_gamma = std::max(tel.max_gamma, o.tel.max_gamma);
    tel.max_pool = std::max(tel.max_pool, o.tel.max_pool);
    if (!o.skip.empty()) {
      ++tel.pairs_skipped;
      tel.skip_reasons.push_back(std::move(o.skip));
    }
    for (auto& s : o.sets) all.push_back(std::move(s));
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  tel.sets_emitted = all.size();
  return all;
}

REnumResult enum_all(const Field& f, unsigned r, const EnumOptions& options, const SetSink& emit) {
  if (r < 2) throw InvalidArgument("r must be at least 2");
  const auto t0 = std::chrono::steady_clock::now();
  REnumResult result;
  result.q = f.order();
  result.r = r;
  result.bound_reference = std::pow(static_cast<double>(f.order()), 1.5 * r + 2.0);

  Budget budget(options.budget);
  const auto di_polys = all_di_polynomials(f, options.jobs);
  std::array<std::vector<QuadSet>, 3> parts;

  auto finish_partial = [&](const std::string& where) {
    for (std::size_t i = 0; i < 3; ++i) result.counts_per_part[i] = parts[i].size();
    result.tests_performed = budget.used();
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    throw BudgetExceeded("operation budget of " + std::to_string(budget.limit()) + " character tests exhausted in " +
                             where,
                         result);
  };

  parts[0] = enum_part1(f, r, di_polys, budget, result.parts[0]);
  if (budget.exhausted()) finish_partial("part 1");
  parts[1] = enum_part2(f, r, budget, result.parts[1]);
  if (budget.exhausted()) finish_partial("part 2");
  parts[2] = enum_part3(f, r, di_polys, options, budget, result.parts[2]);
  if (budget.exhausted()) finish_partial("part 3");

  std::map<QuadSet, unsigned> produced;
  for (std::size_t i = 0; i < 3; ++i) {
    result.counts_per_part[i] = parts[i].size();
    for (auto& s : parts[i]) ++produced[s];
  }
  if (options.keep_list) result.set_list.emplace();
  for (const auto& [s, times] : produced) {
    if (times > 1) ++result.overlaps;
    const auto audit = multiset::di_set_test(f, s);
    if (!audit.is_di()) {
      ++result.audit_failures;
      continue;
    }
    ++result.count_total;
    if (emit) emit(s);
    if (options.keep_list) result.set_list->push_back(s);
  }
  result.tests_performed = budget.used();
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

BruteForceResult brute_force_sets(const Field& f, unsigned r, unsigned max_word_len, std::uint64_t max_candidates) {
  if (r < 1) throw InvalidArgument("r must be at least 1");
  const auto irreducible = quad::all_irreducible_quadratics(f);
  const std::uint64_t total = binomial(irreducible.size(), r);
  if (total > max_candidates)
    throw ResourceExhausted("brute force over " + std::to_string(total) + " candidate sets exceeds the cap of " +
                            std::to_string(max_candidates));
  BruteForceResult result;
  for_each_combination(irreducible.size(), r, [&](std::span<const std::size_t> pick) {
    QuadSet s;
    for (auto i : pick) s.push_back(irreducible[i]);
    ++result.candidates;
    const auto verdict = multiset::di_set_test(f, s);
    if (verdict.is_di()) {
      if (auto bad = multiset::first_reducible_word(f, s, max_word_len))
        throw OracleDiscrepancy("set {" + quad::format_set(f, s) + "} passes the character test but word (" +
                                quad::format_word(*bad) + ") expands to a reducible polynomial");
      std::uint64_t words = 0;
      for (std::uint64_t n = 1, level = r; n <= max_word_len; ++n, level *= r) words += level;
      result.dense_words_checked += words;
      result.sets.push_back(std::move(s));
      return true;
    }
    if (verdict.kind == multiset::SetVerdict::Kind::Fails && verdict.word.length() <= max_word_len) {
      ++result.dense_words_checked;
      if (poly::is_irreducible(f, quad::expand_word(f, s, verdict.word)))
        throw OracleDiscrepancy("set {" + quad::format_set(f, s) + "} fails the character test at word (" +
                                quad::format_word(verdict.word) + ") but that word expands to an irreducible polynomial");
    }
    return true;
  });
  return result;
}

}  // namespace dynirr::enumr
