#include <doctest.h>

#include <algorithm>

#include "dynirr/census.hpp"
#include "dynirr/error.hpp"
#include "dynirr/orbit.hpp"
#include "helpers.hpp"

using namespace dynirr;
using dynirr::ff::Field;
using testing::Q;

TEST_CASE("q = 3") {
  const auto f3 = Field::create(3);
  const auto r = census::census_monic(f3);
  CHECK(r.di_star == 1);
  CHECK(r.di == 2);
  REQUIRE(r.monic_list.has_value());
  CHECK(*r.monic_list == std::vector<quad::QuadPoly>{Q(f3, 1, 0, 1)});

  std::vector<quad::QuadPoly> all;
  census::census_full(f3, {}, [&](const quad::QuadPoly& p) { all.push_back(p); });
  CHECK(all == std::vector<quad::QuadPoly>{Q(f3, 1, 0, 1), Q(f3, 2, 0, 2)});
}

TEST_CASE("census matches the single-polynomial test") {
  for (auto [p, k] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {13u, 1u}, {5u, 2u}, {3u, 3u}, {31u, 1u}}) {
    const auto f = Field::create(p, k);
    CAPTURE(f.order());
    const auto r = census::census_monic(f);
    std::vector<quad::QuadPoly> expected;
    for (auto b : f.elements())
      for (auto c : f.elements()) {
        const auto g = quad::QuadPoly::monic(f, b, c);
        if (orbit::di_test_char(f, g).dynamically_irreducible) expected.push_back(g);
      }
    CHECK(*r.monic_list == expected);
    CHECK(r.di == (f.order() - 1) * r.di_star);
    CHECK(4 * r.di >= (f.order() - 1) * (f.order() - 1));
    CHECK(r.stage1_survivors >= r.di_star);
    CHECK(r.stage1_survivors <= std::uint64_t{f.order()} * f.order());

    std::uint64_t streamed = 0;
    census::census_full(f, {}, [&](const quad::QuadPoly& g) {
      ++streamed;
      CHECK(orbit::di_test_char(f, g).dynamically_irreducible);
    });
    CHECK(streamed == r.di);
  }
}

TEST_CASE("known monic counts") {
  // Cross-checked against an independent script using the factorization oracle.
  const std::vector<std::pair<std::uint32_t, std::uint64_t>> known{{3, 1}, {5, 4}, {7, 3}, {11, 7}, {13, 17}};
  for (auto [q, n] : known) CHECK(census::census_monic(Field::create(q)).di_star == n);
  CHECK(census::census_monic(Field::create(3, 2)).di_star == 10);
}

TEST_CASE("filter depth only moves work between stages") {
  const auto f = Field::create(211);
  const auto base = census::census_monic(f);
  std::uint64_t previous = UINT64_MAX;
  for (std::uint32_t k : {1u, 2u, 4u, base.filter_depth, 3 * base.filter_depth, 40u}) {
    census::CensusOptions o;
    o.params.filter_depth = k;
    const auto r = census::census_monic(f, o);
    CHECK(r.di_star == base.di_star);
    CHECK(*r.monic_list == *base.monic_list);
    CHECK(r.stage1_survivors <= previous);
    previous = r.stage1_survivors;
  }
}

TEST_CASE("parallel and serial implementations agree") {
  for (std::uint32_t q : {3u, 17u, 101u, 257u}) {
    const auto f = Field::create(q);
    census::CensusOptions o;
    o.keep_survivors = true;
    const auto serial = census::census_monic_serial(f, o);
    for (int jobs : {1, 2, 4}) {
      o.jobs = jobs;
      const auto par = census::census_monic(f, o);
      CHECK(par.di_star == serial.di_star);
      CHECK(par.stage1_survivors == serial.stage1_survivors);
      CHECK(*par.survivors == *serial.survivors);
      CHECK(*par.monic_list == *serial.monic_list);
      CHECK(par.telemetry.max_di_orbit == serial.telemetry.max_di_orbit);
      CHECK(par.telemetry.di_above_reference == serial.telemetry.di_above_reference);
    }
  }
}

TEST_CASE("survivor curve") {
  const auto f = Field::create(101);
  const auto pt = census::survivor_curve(f);
  const auto r = census::census_monic(f);
  CHECK(pt.survivors == r.stage1_survivors);
  CHECK(pt.survivors >= r.di_star);
  CHECK(pt.normalized > 0);
}

TEST_CASE("orders above the table limit are refused") {
  CHECK_THROWS_AS(census::census_monic(Field::create(1048583)), dynirr::ResourceExhausted);
}
