#include <doctest.h>

#include <cstdlib>

#include "dynirr/error.hpp"
#include "dynirr/report.hpp"
#include "helpers.hpp"

using namespace dynirr;
using dynirr::ff::Field;

TEST_CASE("envelope layout") {
  const auto f9 = Field::create(3, 2);
  const auto r = census::census_monic(f9);
  const auto j = report::envelope(f9, {{"command", "census"}}, report::census_result(f9, r), report::census_timing(r));
  CHECK(j["tool"]["name"] == "dynirr");
  CHECK(j["field"]["q"] == 9);
  CHECK(j["field"]["modulus"].is_string());
  CHECK(j["result"]["di_star"] == 10);
  CHECK(j["result"]["monic_list"].size() == 10);
  CHECK(j.contains("timing"));
  CHECK_FALSE(report::without_timing(j).contains("timing"));

  const auto again = census::census_monic(f9, {.jobs = 1});
  const auto k = report::envelope(f9, {{"command", "census"}}, report::census_result(f9, again), report::census_timing(again));
  CHECK(report::without_timing(j).dump() == report::without_timing(k).dump());
}

TEST_CASE("set verdict report") {
  const auto f7 = Field::create(7);
  const std::vector<quad::QuadPoly> s{testing::Q(f7, 1, 0, 3), testing::Q(f7, 1, 1, 3)};
  const auto v = multiset::di_set_test(f7, s);
  const auto j = report::set_verdict(f7, s, v);
  CHECK(j["polys"].size() == 2);
  if (v.is_di()) CHECK(j["verdict"] == "DI");
  else CHECK(j.contains("witness") != (j["verdict"] == "precondition-failed"));
}

TEST_CASE("budget from the environment") {
  ::unsetenv("DYNIRR_BUDGET");
  CHECK(report::budget_from_env(77) == 77);
  ::setenv("DYNIRR_BUDGET", "12345", 1);
  CHECK(report::budget_from_env() == 12345);
  ::setenv("DYNIRR_BUDGET", "12x", 1);
  CHECK_THROWS_AS(report::budget_from_env(), dynirr::InvalidArgument);
  ::setenv("DYNIRR_BUDGET", "0", 1);
  CHECK_THROWS_AS(report::budget_from_env(), dynirr::InvalidArgument);
  ::unsetenv("DYNIRR_BUDGET");
}
