#include <doctest.h>

#include <set>

#include "dynirr/error.hpp"
#include "dynirr/ff.hpp"
#include "dynirr/poly.hpp"

using dynirr::ff::Element;
using dynirr::ff::Field;

namespace {

std::vector<Field> small_fields() {
  return {Field::create(3),    Field::create(5),    Field::create(7),    Field::create(3, 2), Field::create(11),
          Field::create(13),   Field::create(5, 2), Field::create(3, 3), Field::create(17),  Field::create(19),
          Field::create(23),   Field::create(7, 2)};
}

}  // namespace

TEST_CASE("field construction") {
  const auto f3 = Field::create(3, 1);
  CHECK(f3.order() == 3);
  CHECK(f3.modulus().empty());
  CHECK_THROWS_AS(Field::create(2, 1), dynirr::InvalidField);
  CHECK_THROWS_AS(Field::create(9, 1), dynirr::InvalidField);
  CHECK_THROWS_AS(Field::create(3, 0), dynirr::InvalidField);
  CHECK_THROWS_AS(Field::create(3, 21), dynirr::InvalidField);  // 3^21 > 2^32

  // F_9: first monic irreducible quadratic X^2 + c1 X + c0 in coefficient order.
  const auto f9 = Field::create(3, 2);
  CHECK(f9.order() == 9);
  REQUIRE(f9.modulus().size() == 3);
  std::vector<std::uint32_t> first;
  for (std::uint32_t i = 0; i < 9 && first.empty(); ++i) {
    const std::uint32_t c0 = i % 3, c1 = i / 3;
    bool root = false;
    for (std::uint32_t x = 0; x < 3; ++x) root |= (x * x + c1 * x + c0) % 3 == 0;
    if (!root) first = {c0, c1, 1};
  }
  CHECK(std::vector<std::uint32_t>(f9.modulus().begin(), f9.modulus().end()) == first);
  CHECK(Field::create(3, 2).modulus_string() == f9.modulus_string());

  CHECK(Field::parse("3^2").order() == 9);
  CHECK(Field::parse("7").order() == 7);
  CHECK_THROWS_AS(Field::parse("2"), dynirr::InvalidField);
  CHECK_THROWS(Field::parse("x"));
  CHECK_THROWS(Field::parse("3^"));
}

TEST_CASE("extension moduli are irreducible") {
  for (auto [p, k] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 2u}, {3u, 4u}, {5u, 3u}}) {
    const auto f = Field::create(p, k);
    const auto fp = Field::create(p);
    std::vector<Element> m;
    for (auto c : f.modulus()) m.push_back(fp.element(c));
    CHECK(dynirr::poly::is_irreducible(fp, dynirr::poly::DensePoly(m)));
  }
}

TEST_CASE("basic arithmetic examples") {
  const auto f7 = Field::create(7);
  CHECK(f7.inv(f7.element(3)) == f7.element(5));
  const auto f5 = Field::create(5);
  CHECK(f5.neg(f5.element(2)) == f5.element(3));
  for (const auto& f : small_fields())
    for (auto x : f.elements())
      if (!x.is_zero()) CHECK(f.pow(x, 0) == f.one());
  CHECK_THROWS_AS(f7.inv(f7.zero()), dynirr::DivisionByZero);
  CHECK_THROWS_AS(f7.add(f7.one(), f5.one()), dynirr::ContextMismatch);
}

TEST_CASE("quadratic character examples") {
  const auto f3 = Field::create(3);
  CHECK(f3.is_nonsquare(f3.element(2)));
  CHECK_FALSE(f3.is_nonsquare(f3.zero()));
  const auto f7 = Field::create(7);
  CHECK(f7.is_nonsquare(f7.element(3)));
  CHECK_FALSE(f7.is_nonsquare(f7.element(2)));
}

TEST_CASE("element enumeration order") {
  const auto f3 = Field::create(3);
  std::vector<Element> e(f3.elements().begin(), f3.elements().end());
  CHECK(e == std::vector<Element>{f3.zero(), f3.one(), f3.element(2)});
  const auto f9 = Field::create(3, 2);
  std::set<Element> s(f9.elements().begin(), f9.elements().end());
  CHECK(s.size() == 9);
  CHECK(*f9.elements().begin() == f9.zero());
  CHECK(f9.elements()[1] == f9.one());
  CHECK(std::ranges::distance(Field::create(5, 2).elements()) == 25);
}

TEST_CASE("field axioms exhaustively for q <= 27") {
  for (const auto& f : small_fields()) {
    if (f.order() > 27) continue;
    CAPTURE(f.order());
    for (auto x : f.elements()) {
      CHECK(f.add(x, f.neg(x)) == f.zero());
      CHECK(f.sub(x, x) == f.zero());
      if (!x.is_zero()) {
        CHECK(f.mul(x, f.inv(x)) == f.one());
        CHECK(f.inv(f.inv(x)) == x);
        CHECK(f.pow(x, f.order() - 1) == f.one());
      }
      for (auto y : f.elements()) {
        CHECK(f.add(x, y) == f.add(y, x));
        CHECK(f.mul(x, y) == f.mul(y, x));
        CHECK(f.mul(x, f.add(y, f.one())) == f.add(f.mul(x, y), x));
      }
    }
  }
}

TEST_CASE("character partition and multiplicativity") {
  for (const auto& f : small_fields()) {
    if (f.order() > 27) continue;
    CAPTURE(f.order());
    std::uint32_t nonsquares = 0;
    std::set<Element> squares;
    for (auto x : f.elements()) {
      nonsquares += f.is_nonsquare(x);
      squares.insert(f.square(x));
      CHECK(f.is_nonsquare(x) == f.is_nonsquare_by_power(x));
    }
    CHECK(nonsquares == (f.order() - 1) / 2);
    for (auto x : f.elements()) CHECK(f.is_nonsquare(x) == !squares.count(x));
    for (auto x : f.elements())
      for (auto y : f.elements())
        if (!x.is_zero() && !y.is_zero())
          CHECK(f.is_nonsquare(f.mul(x, y)) == (f.is_nonsquare(x) != f.is_nonsquare(y)));
  }
}

TEST_CASE("square roots") {
  for (const auto& f : small_fields()) {
    for (auto x : f.elements()) {
      const auto r = f.sqrt(x);
      CHECK(r.has_value() == !f.is_nonsquare(x));
      if (r) CHECK(f.square(*r) == x);
    }
  }
}

TEST_CASE("element text round trip") {
  const auto f27 = Field::create(3, 3);
  for (auto x : f27.elements()) CHECK(f27.parse_element(f27.format(x)) == x);
  const auto f13 = Field::create(13);
  CHECK(f13.format(f13.element(12)) == "12");
  CHECK(f13.parse_element("-1") == f13.element(12));
  CHECK_THROWS(f13.parse_element("13x"));
}

TEST_CASE("large prime field without a character table") {
  const auto f = Field::create(4294967291ULL);  // largest prime below 2^32
  CHECK_FALSE(f.has_character_table());
  const auto x = f.element(123456789);
  CHECK(f.mul(x, f.inv(x)) == f.one());
  CHECK(f.is_nonsquare(x) == f.is_nonsquare_by_power(x));
  CHECK_FALSE(f.is_nonsquare(f.square(x)));
}
