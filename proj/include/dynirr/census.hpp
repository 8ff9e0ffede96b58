#pragma once

// Exact census of dynamically irreducible quadratics over F_q.
//
// Every scaling class {f(uX)/u : u != 0} contains exactly one monic member
// and dynamical irreducibility is constant on the class, so
// DI_q = (q - 1) * DI_q^*. The monic count is computed in two stages:
//   1. every X^2 + bX + c is checked on its first K adjusted-orbit values
//      (cheap, rejects most candidates);
//   2. survivors are walked to exact cycle termination.
// K only moves work between the stages; the counts do not depend on it.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dynirr/ff.hpp"
#include "dynirr/orbit.hpp"
#include "dynirr/quad.hpp"

namespace dynirr::census {

using ff::Field;
using quad::QuadPoly;

struct CensusOptions {
  orbit::AlgorithmParams params;
  // Worker threads; 0 = all available.
  int jobs = 0;
  bool keep_list = true;
  bool keep_survivors = false;
};

struct StageTimes {
  double stage1_seconds = 0;
  double stage2_seconds = 0;
  double expand_seconds = 0;
};

struct OrbitTelemetry {
  // Largest #Orb(f) over monic DI polynomials.
  std::uint64_t max_di_orbit = 0;
  // Longest exact stage-2 walk (character tests) over all survivors.
  std::uint64_t max_survivor_walk = 0;
  // ceil(q^{3/4}) and the number of monic DI polynomials whose orbit exceeds it.
  std::uint64_t reference_cap = 0;
  std::uint64_t di_above_reference = 0;
};

struct CensusResult {
  std::uint64_t q = 0;
  std::uint64_t di_star = 0;
  std::uint64_t di = 0;
  std::uint64_t stage1_survivors = 0;
  std::uint32_t filter_depth = 0;
  int jobs = 1;
  std::optional<std::vector<QuadPoly>> monic_list;
  // Stage-1 survivors as (b, c) packed indices, b-major.
  std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>> survivors;
  OrbitTelemetry telemetry;
  StageTimes wall_times;
};

using Sink = std::function<void(const QuadPoly&)>;

// Largest field order the census accepts (the character table limit).
inline constexpr std::uint32_t kMaxCensusOrder = Field::kCharacterTableLimit;

// Parallel two-stage census.
CensusResult census_monic(const Field& f, const CensusOptions& options = {});

// Reference implementation: runs orbit::di_test_char on every monic
// polynomial in order, single-threaded, and counts stage-1 survivors with a
// separate straightforward filter.
CensusResult census_monic_serial(const Field& f, const CensusOptions& options = {});

// Streams every DI quadratic: for each monic DI polynomial in (b, c) order,
// its scalings by u = 1, 2, ... in element order.
CensusResult census_full(const Field& f, const CensusOptions& options, const Sink& emit);

struct SurvivorPoint {
  std::uint64_t q = 0;
  std::uint64_t survivors = 0;
  std::uint32_t filter_depth = 0;
  // survivors / (q^{3/2} ln q)
  double normalized = 0;
};

SurvivorPoint survivor_curve(const Field& f, const CensusOptions& options = {});

}  // namespace dynirr::census
