#include "dynirr/multiset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "dynirr/error.hpp"
#include "dynirr/parallel.hpp"

namespace dynirr::multiset {

namespace {

void require_distinct(std::span<const QuadPoly> polys) {
  if (polys.empty()) throw InvalidArgument("set test needs at least one polynomial");
  std::vector<QuadPoly> sorted(polys.begin(), polys.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("set contains a repeated polynomial");
}

struct ClosureNode {
  std::uint32_t value;
  std::int64_t parent;  // -1 for seeds
  std::uint32_t poly;   // outermost polynomial producing this value
};

CompositionWord word_to(const std::vector<ClosureNode>& nodes, std::int64_t node, std::uint32_t outer,
                        std::size_t& innermost) {
  CompositionWord w;
  w.indices.push_back(outer);
  for (std::int64_t n = node; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent) {
    w.indices.push_back(nodes[static_cast<std::size_t>(n)].poly);
    innermost = nodes[static_cast<std::size_t>(n)].poly;
  }
  return w;
}

}  // namespace

Element signed_test_value(const Field& f, std::span<const QuadPoly> polys, const CompositionWord& word, Element v) {
  quad::validate_word(polys, word);
  const Element a = polys[word.outermost()].a();
  return word.length() == 1 ? f.neg(f.mul(a, v)) : f.mul(a, v);
}

SetVerdict di_set_test(const Field& f, std::span<const QuadPoly> polys) {
  require_distinct(polys);
  SetVerdict verdict;
  const std::size_t r = polys.size();
  for (std::size_t i = 0; i < r; ++i) {
    if (!quad::is_irreducible_quad(f, polys[i])) {
      verdict.kind = SetVerdict::Kind::PreconditionFailed;
      verdict.bad_index = i;
      verdict.tests_performed = i + 1;
      return verdict;
    }
  }
  verdict.tests_performed = r;

  std::vector<ClosureNode> nodes;
  std::unordered_map<std::uint32_t, std::int64_t> node_of;
  std::unordered_set<std::uint64_t> tested;
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint32_t y = quad::critical_value(f, polys[i]).index();
    if (node_of.emplace(y, static_cast<std::int64_t>(nodes.size())).second)
      nodes.push_back({y, -1, static_cast<std::uint32_t>(i)});
  }

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const Element v(nodes[head].value, f.order());
    for (std::size_t j = 0; j < r; ++j) {
      const Element w = quad::eval(f, polys[j], v);
      if (!tested.insert(std::uint64_t{w.index()} * r + j).second) continue;
      ++verdict.tests_performed;
      const std::uint32_t signed_w = f.mul_raw(polys[j].a().index(), w.index());
      if (!f.nonsquare_raw(signed_w)) {
        verdict.kind = SetVerdict::Kind::Fails;
        verdict.word = word_to(nodes, static_cast<std::int64_t>(head), static_cast<std::uint32_t>(j),
                               verdict.gamma_index);
        verdict.value = w;
        verdict.tested_value = Element(signed_w, f.order());
        verdict.values_visited = nodes.size();
        return verdict;
      }
      if (node_of.emplace(w.index(), static_cast<std::int64_t>(nodes.size())).second)
        nodes.push_back({w.index(), static_cast<std::int64_t>(head), static_cast<std::uint32_t>(j)});
    }
  }
  verdict.values_visited = nodes.size();
  return verdict;
}

bool witness_is_valid(const Field& f, std::span<const QuadPoly> polys, const SetVerdict& verdict) {
  if (verdict.kind != SetVerdict::Kind::Fails) return false;
  if (verdict.word.indices.empty() || verdict.gamma_index != verdict.word.innermost()) return false;
  const Element start = polys[verdict.gamma_index].gamma();
  const Element value = quad::compose_eval(f, polys, verdict.word, start);
  if (value != verdict.value) return false;
  return !f.is_nonsquare(signed_test_value(f, polys, verdict.word, value));
}

unsigned default_gamma_depth(std::uint64_t q, double c4) {
  const double ll = std::log(std::log(static_cast<double>(q)));
  const double root = ll > 0 ? std::sqrt(2.0 * ll / std::log(2.0)) : 0.0;
  return static_cast<unsigned>(std::ceil(root + c4));
}

std::uint64_t reference_value_bound(std::uint64_t q, double c3) {
  return static_cast<std::uint64_t>(std::ceil(c3 * std::pow(static_cast<double>(q), 0.75)));
}

namespace {

struct GammaPair {
  const Field& f;
  std::array<QuadPoly, 2> polys;
  std::array<std::uint32_t, 2> a_inv;

  // Depth (0..depth) up to which every word passes at g, level by level.
  unsigned passing_depth(std::uint32_t g, unsigned depth, std::vector<std::uint32_t>& level,
                         std::vector<std::uint32_t>& next, std::uint64_t& tests) const {
    level.assign(1, g);
    for (unsigned n = 1; n <= depth; ++n) {
      next.clear();
      for (std::uint32_t v : level) {
        for (std::size_t j = 0; j < 2; ++j) {
          const std::uint32_t w = quad::eval(f, polys[j], Element(v, f.order())).index();
          ++tests;
          if (!f.nonsquare_raw(f.mul_raw(a_inv[j], w))) return n - 1;
          next.push_back(w);
        }
      }
      level.swap(next);
    }
    return depth;
  }
};

GammaPair make_pair(const Field& f, const QuadPoly& f1, const QuadPoly& f2, unsigned depth) {
  if (depth == 0) throw InvalidArgument("gamma depth must be at least 1");
  if (proportional(f, f1, f2)) throw InvalidArgument("gamma_set needs a non-proportional pair");
  return GammaPair{f, {f1, f2}, {f.inv(f1.a()).index(), f.inv(f2.a()).index()}};
}

GammaReport assemble(const Field& f, unsigned depth, const std::vector<unsigned>& passing, std::uint64_t tests) {
  GammaReport report;
  report.depth = depth;
  report.tests_performed = tests;
  report.sizes_per_depth.assign(depth, 0);
  for (std::uint32_t g = 0; g < passing.size(); ++g) {
    for (unsigned n = 1; n <= passing[g]; ++n) ++report.sizes_per_depth[n - 1];
    if (passing[g] == depth) report.gamma_set.push_back(f.element(g));
  }
  return report;
}

}  // namespace

GammaReport gamma_set(const Field& f, const QuadPoly& f1, const QuadPoly& f2, unsigned depth, int jobs) {
  const GammaPair pair = make_pair(f, f1, f2, depth);
  const std::uint32_t q = f.order();
  std::vector<unsigned> passing(q, 0);
  std::uint64_t tests = 0;
  const int threads = resolve_jobs(jobs);
#pragma omp parallel reduction(+ : tests) num_threads(threads)
  {
    std::vector<std::uint32_t> level;
    std::vector<std::uint32_t> next;
#pragma omp for schedule(static)
    for (std::int64_t g = 0; g < static_cast<std::int64_t>(q); ++g)
      passing[static_cast<std::size_t>(g)] = pair.passing_depth(static_cast<std::uint32_t>(g), depth, level, next, tests);
  }
  return assemble(f, depth, passing, tests);
}

GammaReport gamma_set_serial(const Field& f, const QuadPoly& f1, const QuadPoly& f2, unsigned depth) {
  if (depth == 0) throw InvalidArgument("gamma depth must be at least 1");
  if (proportional(f, f1, f2)) throw InvalidArgument("gamma_set needs a non-proportional pair");
  // Direct transcription: every word, evaluated with compose_eval.
  const std::vector<QuadPoly> polys{f1, f2};
  std::vector<unsigned> passing(f.order(), 0);
  std::uint64_t tests = 0;
  for (auto g : f.elements()) {
    unsigned ok_depth = depth;
    for (unsigned n = 1; n <= depth && ok_depth == depth; ++n) {
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        CompositionWord w;
        for (unsigned h = 0; h < n; ++h) w.indices.push_back(static_cast<std::uint32_t>((code >> (n - 1 - h)) & 1));
        const Element v = quad::compose_eval(f, polys, w, g);
        ++tests;
        if (!f.is_nonsquare(f.div(v, polys[w.outermost()].a()))) {
          ok_depth = n - 1;
          break;
        }
      }
    }
    passing[g.index()] = ok_depth;
  }
  return assemble(f, depth, passing, tests);
}

std::optional<Element> proportional(const Field& f, const QuadPoly& p, const QuadPoly& g) {
  const Element lambda = f.div(p.a(), g.a());
  if (f.mul(lambda, g.b()) != p.b() || f.mul(lambda, g.c()) != p.c()) return std::nullopt;
  return lambda;
}

namespace {

// Expansions of all words of each length 1..max_len, indexed by the word's
// base-r code (outermost index most significant).
template <typename Visit>
void expand_levels(const Field& f, std::span<const QuadPoly> polys, unsigned max_len, std::size_t max_degree,
                   Visit&& visit) {
  const std::size_t r = polys.size();
  std::vector<poly::DensePoly> dense;
  for (const auto& p : polys) dense.push_back(quad::to_dense(f, p));
  std::vector<poly::DensePoly> prev{poly::DensePoly::x(f)};
  for (unsigned n = 1; n <= max_len; ++n) {
    std::vector<poly::DensePoly> level;
    level.reserve(prev.size() * r);
    for (std::size_t outer = 0; outer < r; ++outer)
      for (const auto& inner : prev) level.push_back(poly::compose(f, dense[outer], inner, max_degree));
    if (!visit(n, level)) return;
    prev = std::move(level);
  }
}

CompositionWord decode_word(std::size_t code, unsigned n, std::size_t r) {
  CompositionWord w;
  w.indices.resize(n);
  for (unsigned h = n; h-- > 0;) {
    w.indices[h] = static_cast<std::uint32_t>(code % r);
    code /= r;
  }
  return w;
}

}  // namespace

bool monic_word_uniqueness_check(const Field& f, const QuadPoly& g1, const QuadPoly& g2, unsigned max_len,
                                 std::size_t max_degree) {
  if (!g1.is_monic() || !g2.is_monic()) throw InvalidArgument("uniqueness check needs monic polynomials");
  if (g1 == g2) throw InvalidArgument("uniqueness check needs distinct polynomials");
  const std::vector<QuadPoly> polys{g1, g2};
  bool distinct = true;
  expand_levels(f, polys, max_len, max_degree, [&](unsigned, std::vector<poly::DensePoly> level) {
    std::sort(level.begin(), level.end());
    if (std::adjacent_find(level.begin(), level.end()) != level.end()) distinct = false;
    return distinct;
  });
  return distinct;
}

std::optional<CompositionWord> first_reducible_word(const Field& f, std::span<const QuadPoly> polys,
                                                    unsigned max_len, std::size_t max_degree) {
  std::optional<CompositionWord> found;
  expand_levels(f, polys, max_len, max_degree, [&](unsigned n, const std::vector<poly::DensePoly>& level) {
    for (std::size_t code = 0; code < level.size(); ++code) {
      if (!poly::is_irreducible(f, level[code])) {
        found = decode_word(code, n, polys.size());
        return false;
      }
    }
    return true;
  });
  return found;
}

}  // namespace dynirr::multiset
