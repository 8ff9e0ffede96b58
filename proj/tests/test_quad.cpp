#include <doctest.h>

#include "dynirr/error.hpp"
#include "dynirr/quad.hpp"
#include "helpers.hpp"

using namespace dynirr;
using dynirr::ff::Field;
using quad::CompositionWord;
using quad::QuadPoly;
using testing::Q;

TEST_CASE("construction and critical point") {
  const auto f5 = Field::create(5);
  CHECK(Q(f5, 1, 2, 1).gamma() == f5.element(4));
  CHECK(Q(f5, 2, 0, 3).gamma() == f5.zero());
  CHECK_THROWS_AS(Q(f5, 0, 1, 1), dynirr::DegeneratePolynomial);
}

TEST_CASE("evaluation") {
  const auto f3 = Field::create(3);
  CHECK(quad::eval(f3, Q(f3, 1, 0, 1), f3.zero()) == f3.one());
  CHECK(quad::eval(f3, Q(f3, 1, 0, 1), f3.one()) == f3.element(2));
  for (auto [p, k] : {std::pair{5u, 1u}, {3u, 2u}, {7u, 1u}}) {
    const auto f = Field::create(p, k);
    for (const auto& g : quad::all_quadratics(f)) {
      const auto expected = f.sub(g.c(), f.div(f.square(g.b()), f.mul(f.from_int(4), g.a())));
      CHECK(quad::eval(f, g, g.gamma()) == expected);
      CHECK(quad::critical_value(f, g) == expected);
    }
  }
}

TEST_CASE("irreducibility of a quadratic") {
  const auto f3 = Field::create(3);
  CHECK(quad::is_irreducible_quad(f3, Q(f3, 1, 0, 1)));
  CHECK_FALSE(quad::is_irreducible_quad(f3, Q(f3, 1, 0, 0)));
  CHECK_FALSE(quad::is_irreducible_quad(f3, Q(f3, 1, 0, 2)));
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}}) {
    const auto f = Field::create(p, k);
    for (const auto& g : quad::all_quadratics(f))
      CHECK(quad::is_irreducible_quad(f, g) == poly::is_irreducible(f, quad::to_dense(f, g)));
  }
}

TEST_CASE("scaling") {
  const auto f3 = Field::create(3);
  CHECK(quad::scale(f3, Q(f3, 1, 0, 1), f3.one()) == Q(f3, 1, 0, 1));
  CHECK(quad::scale(f3, Q(f3, 1, 0, 1), f3.element(2)) == Q(f3, 2, 0, 2));
  CHECK_THROWS(quad::scale(f3, Q(f3, 1, 0, 1), f3.zero()));
  for (auto [p, k] : {std::pair{5u, 1u}, {3u, 2u}}) {
    const auto f = Field::create(p, k);
    for (const auto& g : quad::all_quadratics(f)) {
      const auto m = quad::scale(f, g, f.inv(g.a()));
      CHECK(m == QuadPoly::monic(f, g.b(), f.mul(g.a(), g.c())));
      CHECK(quad::monic_representative(f, g) == m);
      // f(uX)/u pointwise.
      const auto u = f.element(2);
      const auto s = quad::scale(f, g, u);
      for (auto x : f.elements()) CHECK(quad::eval(f, s, x) == f.div(quad::eval(f, g, f.mul(u, x)), u));
      // Exactly one monic member per scaling class.
      int monic = 0;
      for (auto v : f.elements())
        if (!v.is_zero()) monic += quad::scale(f, g, v).is_monic();
      CHECK(monic == 1);
    }
  }
}

TEST_CASE("composition words") {
  const auto f3 = Field::create(3);
  const std::vector<QuadPoly> one{Q(f3, 1, 0, 1)};
  CHECK(quad::compose_eval(f3, one, CompositionWord{{0, 0}}, f3.zero()) == f3.element(2));
  CHECK(quad::compose_eval(f3, one, CompositionWord{{0}}, f3.one()) == f3.element(2));
  CHECK_THROWS(quad::compose_eval(f3, one, CompositionWord{{}}, f3.one()));
  CHECK_THROWS(quad::compose_eval(f3, one, CompositionWord{{1}}, f3.one()));

  // The fixed-point family keeps b fixed along every word.
  const auto f13 = Field::create(13);
  const auto b = f13.element(4);
  std::vector<QuadPoly> fam;
  for (int a : {2, 5, 6}) fam.push_back(QuadPoly::fixed_point_family(f13, f13.element(a), b));
  for (auto w : {CompositionWord{{0}}, CompositionWord{{1, 2, 0}}, CompositionWord{{2, 2, 1, 0}}})
    CHECK(quad::compose_eval(f13, fam, w, b) == b);

  // Pointwise evaluation matches the dense expansion; leading coefficients too.
  const auto f5 = Field::create(5);
  const std::vector<QuadPoly> ps{Q(f5, 2, 1, 3), Q(f5, 3, 4, 1)};
  for (auto w : {CompositionWord{{0, 1}}, CompositionWord{{1, 1, 0}}, CompositionWord{{0, 1, 0, 1}}}) {
    const auto d = quad::expand_word(f5, ps, w);
    CHECK(d.degree() == (1 << w.length()));
    CHECK(d.leading() == quad::composition_leading_coeff(f5, ps, w));
    for (auto x : f5.elements()) CHECK(poly::evaluate(f5, d, x) == quad::compose_eval(f5, ps, w, x));
  }
}

TEST_CASE("text forms") {
  const auto f9 = Field::create(3, 2);
  for (const auto& g : quad::all_quadratics(f9)) CHECK(quad::parse(f9, quad::format(f9, g)) == g);
  const auto f3 = Field::create(3);
  CHECK(quad::format(f3, Q(f3, 2, 0, 2)) == "2,0,2");
  CHECK(quad::format_set(f3, std::vector<QuadPoly>{Q(f3, 2, 0, 2), Q(f3, 1, 0, 1)}) == "1,0,1;2,0,2");
  CHECK_THROWS(quad::parse(f3, "1,2"));
  CHECK_THROWS(quad::parse(f3, "0,1,1"));
}

TEST_CASE("enumerations") {
  const auto f3 = Field::create(3);
  CHECK(quad::all_quadratics(f3).size() == 18);
  // q (q - 1)^2 / 2 irreducible quadratics.
  CHECK(quad::all_irreducible_quadratics(f3).size() == 6);
  CHECK(quad::all_irreducible_quadratics(Field::create(5)).size() == 40);
  const auto all = quad::all_quadratics(Field::create(5));
  CHECK(std::is_sorted(all.begin(), all.end()));
}
