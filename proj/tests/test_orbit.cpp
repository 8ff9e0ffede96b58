#include <doctest.h>

#include "dynirr/orbit.hpp"
#include "helpers.hpp"

using namespace dynirr;
using dynirr::ff::Field;
using testing::Q;

TEST_CASE("defaults") {
  CHECK(orbit::default_filter_depth(3) == 3);     // ceil(0.79) + 2
  CHECK(orbit::default_filter_depth(1009) == 7);  // ceil(4.99) + 2
  CHECK(orbit::reference_orbit_cap(101) == 32);
  CHECK(orbit::reference_orbit_cap(16) == 8);
}

TEST_CASE("small examples") {
  const auto f3 = Field::create(3);
  const auto r = orbit::di_test_char(f3, Q(f3, 1, 0, 1));
  CHECK(r.dynamically_irreducible);
  CHECK_FALSE(r.witness.has_value());

  const auto bad = orbit::di_test_char(f3, Q(f3, 1, 0, 2));
  CHECK_FALSE(bad.dynamically_irreducible);
  CHECK(bad.fail_step == 1);
  REQUIRE(bad.tested_value.has_value());
  CHECK_FALSE(f3.is_nonsquare(*bad.tested_value));

  // X^2: critical value 0 is a square, fails at once.
  CHECK(orbit::di_test_char(f3, Q(f3, 1, 0, 0)).fail_step == 1);
}

TEST_CASE("failure witnesses are squares after the sign") {
  for (auto [p, k] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}}) {
    const auto f = Field::create(p, k);
    for (const auto& g : quad::all_quadratics(f)) {
      const auto r = orbit::di_test_char(f, g);
      if (r.dynamically_irreducible) continue;
      REQUIRE(r.witness.has_value());
      CHECK_FALSE(f.is_nonsquare(*r.tested_value));
      const auto x = r.fail_step == 1 ? f.neg(quad::critical_value(f, g))
                                      : quad::compose_eval(f, std::vector{g},
                                                           quad::CompositionWord{std::vector<std::uint32_t>(r.fail_step, 0)},
                                                           g.gamma());
      CHECK(*r.witness == x);
    }
  }
}

TEST_CASE("orbit statistics describe the rho shape") {
  const auto f7 = Field::create(7);
  for (const auto& g : quad::all_quadratics(f7)) {
    const auto s = orbit::orbit_stats(f7, g);
    CHECK(s.period >= 1);
    CHECK(s.distinct() <= 7);
    // Walk directly: x_{preperiod+1} is the first value on the cycle.
    std::vector<ff::Element> xs{quad::critical_value(f7, g)};
    while (xs.size() < 20) xs.push_back(quad::eval(f7, g, xs.back()));
    CHECK(xs[s.preperiod] == xs[s.preperiod + s.period]);
    if (s.preperiod > 0) CHECK(xs[s.preperiod - 1] != xs[s.preperiod - 1 + s.period]);
    for (std::uint64_t d = 1; d < s.period; ++d) CHECK(xs[s.preperiod] != xs[s.preperiod + d]);
  }
}

TEST_CASE("oracle agrees on a small field") {
  const auto f5 = Field::create(5);
  for (const auto& g : quad::all_quadratics(f5)) {
    const auto r = orbit::di_test_char(f5, g);
    const auto o = orbit::di_test_oracle(f5, g, static_cast<unsigned>(r.oracle_depth()));
    if (r.dynamically_irreducible)
      CHECK(o.all_irreducible);
    else
      CHECK(o.first_reducible == std::optional<unsigned>(r.fail_step));
  }
  CHECK_THROWS(orbit::di_test_oracle(f5, Q(f5, 1, 0, 2), 13));
}

TEST_CASE("orbit cap") {
  const auto f101 = Field::create(101);
  orbit::AlgorithmParams capped;
  capped.orbit_cap = 1;
  std::uint64_t extra = 0;
  for (auto b : f101.elements())
    for (auto c : f101.elements()) {
      const auto g = quad::QuadPoly::monic(f101, b, c);
      const bool exact = orbit::di_test_char(f101, g).dynamically_irreducible;
      const auto r = orbit::di_test_char(f101, g, capped);
      // A cap can only turn "not DI" into "DI", never the other way.
      if (exact) CHECK(r.dynamically_irreducible);
      extra += !exact && r.dynamically_irreducible;
    }
  CHECK(extra > 0);
}
