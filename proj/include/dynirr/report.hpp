#pragma once

// JSON reports. Every report has the same top-level layout:
//
//   { "tool": {...}, "config": {...}, "field": {...}, "result": {...},
//     "timing": {...} }
//
// Everything outside "timing" is deterministic for a fixed config, so
// reports can be diffed after dropping that one key.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dynirr/census.hpp"
#include "dynirr/enumr.hpp"
#include "dynirr/ff.hpp"
#include "dynirr/multiset.hpp"
#include "dynirr/orbit.hpp"

namespace dynirr::report {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "dynirr";
inline constexpr std::string_view kToolVersion = "0.3.0";

json tool_json();
json field_json(const ff::Field& f);

json census_result(const ff::Field& f, const census::CensusResult& r);
json census_timing(const census::CensusResult& r);

json set_verdict(const ff::Field& f, std::span<const quad::QuadPoly> polys, const multiset::SetVerdict& v);
json gamma_report(const ff::Field& f, const multiset::GammaReport& g);
json orbit_report(const ff::Field& f, const orbit::OrbitReport& r);
json enum_result(const ff::Field& f, const enumr::REnumResult& r);

// Assembles the top-level object.
json envelope(const ff::Field& f, json config, json result, json timing = json::object());

// Drops "timing" so two reports can be compared byte for byte.
json without_timing(json report);

// Operation budget: DYNIRR_BUDGET if set, otherwise fallback. Throws
// InvalidArgument when the variable is not a positive integer.
std::uint64_t budget_from_env(std::uint64_t fallback = enumr::kDefaultBudget);

}  // namespace dynirr::report
