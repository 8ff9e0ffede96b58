#pragma once

// Verification suites shared by `dynirr verify` and the acceptance binary.
// Each suite re-derives its expectations (oracle, brute force, or a second
// implementation) instead of comparing against stored numbers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynirr/ff.hpp"
#include "dynirr/report.hpp"

namespace dynirr::verify {

// Quick shrinks every range to a few seconds of work; Desk runs the full
// acceptance ranges.
enum class Level { Quick, Desk };

std::optional<Level> parse_level(std::string_view s);
std::string_view level_name(Level l);

struct Config {
  Level level = Level::Desk;
  // Restricts field-indexed suites to this one field.
  std::optional<ff::Field> field;
  std::uint64_t seed = 20240917;
  int jobs = 0;
  // Previous telemetry; drift beyond 2x against it becomes a warning.
  std::optional<std::string> baseline_path;
};

struct SuiteResult {
  std::string name;
  std::string title;
  bool passed = true;
  // Non-blocking suites report warnings but only fail on errors.
  bool blocking = true;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
  // Informational findings (not failures).
  std::vector<std::string> notes;
  report::json data = report::json::object();
  double seconds = 0;

  void fail(std::string msg) {
    passed = false;
    failures.push_back(std::move(msg));
  }
};

// Suite names in acceptance order: oracle, census, lowerbound, groundtruth,
// family, sets, uniqueness, scaling, determinism, telemetry.
const std::vector<std::string>& suite_names();

bool is_suite(std::string_view name);

// Throws InvalidArgument for an unknown name.
SuiteResult run_suite(std::string_view name, const Config& config);

report::json suite_json(const SuiteResult& r);

}  // namespace dynirr::verify
