// Acceptance run: one PASS/FAIL line per criterion, full desk-scale ranges.
// Exit status is nonzero when any blocking criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include "dynirr/verify.hpp"

namespace {

struct Criterion {
  int number;
  const char* suite;
  // Wall-clock limit in seconds; 0 for none.
  double limit;
  bool soft_limit;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle", 300, false},    {2, "census", 60, false},    {3, "lowerbound", 120, false},
      {4, "groundtruth", 0, false}, {5, "family", 0, false},     {6, "sets", 600, false},
      {7, "uniqueness", 0, false},  {8, "scaling", 0, false},    {9, "determinism", 900, true},
      {10, "telemetry", 0, false},
  };

  dynirr::verify::Config cfg;
  cfg.level = dynirr::verify::Level::Desk;
#ifdef DYNIRR_TELEMETRY_BASELINE
  cfg.baseline_path = DYNIRR_TELEMETRY_BASELINE;
#endif

  int failed = 0;
  for (const auto& c : criteria) {
    auto r = dynirr::verify::run_suite(c.suite, cfg);
    if (c.limit > 0 && r.seconds > c.limit) {
      const std::string msg = "took " + std::to_string(r.seconds) + " s, limit " + std::to_string(c.limit) + " s";
      if (c.soft_limit)
        r.warnings.push_back(msg);
      else
        r.fail(msg);
    }
    const bool pass = r.passed;
    if (!pass && r.blocking) ++failed;
    std::printf("%s [%d] %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.number, r.name.c_str(), r.title.c_str(),
                r.seconds, r.blocking ? "" : ", non-blocking");
    for (const auto& f : r.failures) std::printf("      failure: %s\n", f.c_str());
    for (const auto& w : r.warnings) std::printf("      warning: %s\n", w.c_str());
    for (const auto& n : r.notes) std::printf("      note: %s\n", n.c_str());
    if (c.number == 10) std::printf("      telemetry: %s\n", r.data.dump().c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
