#include "dynirr/orbit.hpp"

#include <cmath>
#include <unordered_map>

#include "dynirr/error.hpp"

namespace dynirr::orbit {

std::uint32_t default_filter_depth(std::uint64_t q) {
  return static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(q)) / 2.0)) + 2;
}

std::uint64_t reference_orbit_cap(std::uint64_t q, double c1) {
  return static_cast<std::uint64_t>(std::ceil(c1 * std::pow(static_cast<double>(q), 0.75)));
}

OrbitStats orbit_stats(const Field& f, const QuadPoly& p) {
  std::unordered_map<std::uint32_t, std::uint64_t> first_seen;
  Element x = quad::critical_value(f, p);
  for (std::uint64_t n = 1;; ++n) {
    auto [it, fresh] = first_seen.try_emplace(x.index(), n);
    if (!fresh) return {it->second - 1, n - it->second};
    x = quad::eval(f, p, x);
  }
}

OrbitReport di_test_char(const Field& f, const QuadPoly& p, const AlgorithmParams& params) {
  OrbitReport report;
  const std::uint32_t a = p.a().index();
  const std::uint32_t minus_a = f.neg_raw(a);
  std::unordered_map<std::uint32_t, std::uint64_t> first_seen;
  bool testing = true;

  auto fail = [&](std::uint32_t step, Element witness, std::uint32_t tested) {
    report.fail_step = step;
    report.witness = witness;
    report.tested_value = Element(tested, f.order());
    testing = false;
  };
  auto test = [&](std::uint32_t step, std::uint32_t scale, Element x, Element witness) {
    if (!testing) return;
    if (params.orbit_cap && report.steps_tested >= *params.orbit_cap) {
      report.capped = true;
      testing = false;
      return;
    }
    ++report.steps_tested;
    const std::uint32_t v = f.mul_raw(scale, x.index());
    if (!f.nonsquare_raw(v)) fail(step, witness, v);
  };

  Element x = quad::critical_value(f, p);
  test(1, minus_a, x, f.neg(x));
  first_seen.emplace(x.index(), 1);
  bool x1_retested = false;
  for (std::uint64_t n = 2;; ++n) {
    x = quad::eval(f, p, x);
    const auto it = first_seen.find(x.index());
    if (it != first_seen.end()) {
      if (it->second == 1 && !x1_retested) {
        x1_retested = true;
        test(static_cast<std::uint32_t>(n), a, x, x);
      }
      report.stats = {it->second - 1, n - it->second};
      break;
    }
    test(static_cast<std::uint32_t>(n), a, x, x);
    first_seen.emplace(x.index(), n);
  }
  report.dynamically_irreducible = report.fail_step == 0;
  return report;
}

OracleVerdict di_test_oracle(const Field& f, const QuadPoly& p, unsigned depth, std::size_t max_degree) {
  if (depth >= 63 || (std::size_t{1} << depth) > max_degree)
    throw ResourceExhausted("oracle depth " + std::to_string(depth) + " needs degree 2^" + std::to_string(depth) +
                            " > budget " + std::to_string(max_degree));
  OracleVerdict verdict{true, depth, std::nullopt};
  const poly::DensePoly dense = quad::to_dense(f, p);
  poly::DensePoly it = poly::DensePoly::x(f);
  for (unsigned n = 1; n <= depth; ++n) {
    it = poly::compose(f, dense, it, max_degree);
    if (!poly::is_irreducible(f, it)) {
      verdict.all_irreducible = false;
      verdict.first_reducible = n;
      break;
    }
  }
  return verdict;
}

}  // namespace dynirr::orbit
