#pragma once

// Single-polynomial dynamical irreducibility.
//
// For f = aX^2 + bX + c with critical point g and orbit x_n = f^{(n)}(g),
// every iterate of f is irreducible iff
//
//   -a * x_1 is a nonsquare, and a * x_n is a nonsquare for all n >= 2.
//
// (The Jones-Boston step with g = f^{(n-1)}: its degree 2^{n-1} is even for
// n >= 2 and its leading coefficient is a times a square.) The orbit is
// eventually periodic, so the test list is finite; the walk stops as soon as
// x_n repeats some x_m with m >= 2. A repeat of x_1 is still tested because
// x_1 was only ever checked with the extra sign.

#include <cstdint>
#include <optional>

#include "dynirr/ff.hpp"
#include "dynirr/poly.hpp"
#include "dynirr/quad.hpp"

namespace dynirr::orbit {

using ff::Element;
using ff::Field;
using quad::QuadPoly;

// ceil(log2(q)/2) + 2; stage-1 filter depth of the census.
std::uint32_t default_filter_depth(std::uint64_t q);
// ceil(c1 * q^{3/4}); the orbit-size reference used for instrumentation.
std::uint64_t reference_orbit_cap(std::uint64_t q, double c1 = 1.0);

struct AlgorithmParams {
  // Stop after this many character tests and declare DI. Unset means exact
  // termination by cycle detection.
  std::optional<std::uint64_t> orbit_cap;
  // 0 selects default_filter_depth(q).
  std::uint32_t filter_depth = 0;

  std::uint32_t filter_depth_for(std::uint64_t q) const {
    return filter_depth != 0 ? filter_depth : default_filter_depth(q);
  }
};

// Rho shape of x_1 = f(g), x_2, ...: x_{preperiod+1} is the first value on
// the cycle, and preperiod + period values are distinct.
struct OrbitStats {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;

  std::uint64_t distinct() const { return preperiod + period; }
  // #{f^{(n)}(g) : n >= 2}; x_1 only belongs when it lies on the cycle.
  std::uint64_t critical_orbit_size() const { return preperiod == 0 ? period : preperiod + period - 1; }
};

struct OrbitReport {
  bool dynamically_irreducible = false;
  // First failing step n (0 when DI).
  std::uint32_t fail_step = 0;
  // -f(g) for n = 1, f^{(n)}(g) for n >= 2.
  std::optional<Element> witness;
  // The value whose character decided the failure: -a f(g) or a f^{(n)}(g).
  std::optional<Element> tested_value;
  OrbitStats stats;
  std::uint64_t steps_tested = 0;
  bool capped = false;

  // Iterate depth up to which the dense oracle must agree with this verdict.
  std::uint64_t oracle_depth() const { return dynamically_irreducible ? steps_tested : fail_step; }
};

OrbitReport di_test_char(const Field& f, const QuadPoly& p, const AlgorithmParams& params = {});

OrbitStats orbit_stats(const Field& f, const QuadPoly& p);

struct OracleVerdict {
  bool all_irreducible = false;
  unsigned depth = 0;
  std::optional<unsigned> first_reducible;
};

// Expands f^{(n)} for n = 1..depth and runs Rabin's test on each. Throws
// ResourceExhausted when 2^depth exceeds max_degree.
OracleVerdict di_test_oracle(const Field& f, const QuadPoly& p, unsigned depth,
                             std::size_t max_degree = poly::kDefaultMaxDegree);

}  // namespace dynirr::orbit
