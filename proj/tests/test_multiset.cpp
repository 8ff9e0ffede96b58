#include <doctest.h>

#include <random>

#include "dynirr/error.hpp"
#include "dynirr/multiset.hpp"
#include "dynirr/orbit.hpp"
#include "helpers.hpp"

using namespace dynirr;
using dynirr::ff::Field;
using multiset::SetVerdict;
using quad::CompositionWord;
using quad::QuadPoly;
using testing::Q;

namespace {

std::vector<QuadPoly> family(const Field& f, ff::Element b) {
  std::vector<QuadPoly> out;
  for (auto a : f.elements())
    if (!a.is_zero() && f.is_nonsquare(f.mul(a, b))) out.push_back(QuadPoly::fixed_point_family(f, a, b));
  return out;
}

}  // namespace

TEST_CASE("set test examples") {
  const auto f3 = Field::create(3);
  const std::vector<QuadPoly> pair{Q(f3, 1, 0, 1), Q(f3, 2, 0, 2)};
  const auto v = multiset::di_set_test(f3, pair);
  CHECK(v.is_di());
  CHECK(v.values_visited == 2);  // {1, 2}
  CHECK_FALSE(multiset::first_reducible_word(f3, pair, 3).has_value());

  const auto f13 = Field::create(13);
  const auto fam = family(f13, f13.one());
  CHECK(fam.size() == 6);
  CHECK(multiset::di_set_test(f13, fam).is_di());

  const auto f7 = Field::create(7);
  const auto bad = multiset::di_set_test(f7, family(f7, f7.one()));
  CHECK_FALSE(bad.is_di());

  CHECK_THROWS(multiset::di_set_test(f3, std::vector<QuadPoly>{}));
  CHECK_THROWS(multiset::di_set_test(f3, std::vector<QuadPoly>{Q(f3, 1, 0, 1), Q(f3, 1, 0, 1)}));
  const auto pre = multiset::di_set_test(f3, std::vector<QuadPoly>{Q(f3, 1, 0, 1), Q(f3, 1, 0, 2)});
  CHECK(pre.kind == SetVerdict::Kind::PreconditionFailed);
  CHECK(pre.bad_index == 1);
}

TEST_CASE("singletons reduce to the single-polynomial test") {
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {13u, 1u}}) {
    const auto f = Field::create(p, k);
    for (const auto& g : quad::all_quadratics(f)) {
      const auto single = orbit::di_test_char(f, g);
      const auto v = multiset::di_set_test(f, std::vector{g});
      CHECK(v.is_di() == single.dynamically_irreducible);
    }
  }
}

TEST_CASE("pairs agree with the dense oracle up to length 4") {
  for (std::uint32_t q : {3u, 5u}) {
    const auto f = Field::create(q);
    const auto irr = quad::all_irreducible_quadratics(f);
    std::uint64_t di = 0;
    for (std::size_t i = 0; i < irr.size(); ++i)
      for (std::size_t j = i + 1; j < irr.size(); ++j) {
        const std::vector<QuadPoly> s{irr[i], irr[j]};
        const auto v = multiset::di_set_test(f, s);
        const auto dense = multiset::first_reducible_word(f, s, 4);
        if (v.is_di()) {
          ++di;
          CHECK_FALSE(dense.has_value());
        } else {
          REQUIRE(dense.has_value());
          CHECK(dense->length() == v.word.length());
          CHECK_FALSE(poly::is_irreducible(f, quad::expand_word(f, s, v.word)));
        }
      }
    CHECK(di == (q == 3 ? 1u : 34u));
  }
}

TEST_CASE("witnesses replay") {
  std::mt19937_64 rng(7);
  for (auto [p, k] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}, {13u, 1u}}) {
    const auto f = Field::create(p, k);
    const auto irr = quad::all_irreducible_quadratics(f);
    std::uniform_int_distribution<std::size_t> pick(0, irr.size() - 1);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<QuadPoly> s;
      const std::size_t r = 1 + trial % 4;
      while (s.size() < r) {
        const auto g = irr[pick(rng)];
        if (std::find(s.begin(), s.end(), g) == s.end()) s.push_back(g);
      }
      const auto v = multiset::di_set_test(f, s);
      CHECK(v.values_visited <= f.order());
      if (v.kind == SetVerdict::Kind::Fails) {
        CHECK(multiset::witness_is_valid(f, s, v));
        CHECK(v.gamma_index == v.word.innermost());
        CHECK(quad::compose_eval(f, s, v.word, s[v.gamma_index].gamma()) == v.value);
        CHECK_FALSE(f.is_nonsquare(v.tested_value));
      }
    }
  }
}

TEST_CASE("subset closure") {
  for (std::uint32_t q : {3u, 5u}) {
    const auto f = Field::create(q);
    const auto irr = quad::all_irreducible_quadratics(f);
    for (std::size_t i = 0; i < irr.size(); ++i)
      for (std::size_t j = i + 1; j < irr.size(); ++j)
        for (std::size_t k = j + 1; k < irr.size(); ++k) {
          const std::vector<QuadPoly> s{irr[i], irr[j], irr[k]};
          if (!multiset::di_set_test(f, s).is_di()) continue;
          for (auto sub : {std::vector{irr[i], irr[j]}, std::vector{irr[i], irr[k]}, std::vector{irr[j], irr[k]},
                           std::vector{irr[i]}, std::vector{irr[j]}, std::vector{irr[k]}})
            CHECK(multiset::di_set_test(f, sub).is_di());
        }
  }
}

TEST_CASE("fixed-point family criterion for pairs") {
  for (std::uint32_t q : {5u, 13u}) {
    const auto f = Field::create(q);
    for (auto b : f.elements()) {
      if (b.is_zero()) continue;
      for (auto a1 : f.elements())
        for (auto a2 : f.elements()) {
          if (a1.is_zero() || a2.is_zero() || !(a1 < a2)) continue;
          const std::vector<QuadPoly> s{QuadPoly::fixed_point_family(f, a1, b), QuadPoly::fixed_point_family(f, a2, b)};
          const bool expected = f.is_nonsquare(f.mul(a1, b)) && f.is_nonsquare(f.mul(a2, b));
          CHECK(multiset::di_set_test(f, s).is_di() == expected);
        }
    }
  }
}

TEST_CASE("gamma sets") {
  const auto f = Field::create(31);
  const auto f1 = Q(f, 1, 3, 7), f2 = Q(f, 2, 5, 11);
  const auto d1 = multiset::gamma_set(f, f1, f2, 1);
  std::vector<ff::Element> expected;
  for (auto g : f.elements())
    if (f.is_nonsquare(f.div(quad::eval(f, f1, g), f1.a())) && f.is_nonsquare(f.div(quad::eval(f, f2, g), f2.a())))
      expected.push_back(g);
  CHECK(d1.gamma_set == expected);

  for (unsigned depth : {1u, 2u, 3u, 5u}) {
    const auto par = multiset::gamma_set(f, f1, f2, depth, 2);
    const auto ser = multiset::gamma_set_serial(f, f1, f2, depth);
    CHECK(par.gamma_set == ser.gamma_set);
    CHECK(par.sizes_per_depth == ser.sizes_per_depth);
    CHECK(std::is_sorted(par.sizes_per_depth.rbegin(), par.sizes_per_depth.rend()));
    CHECK(par.sizes_per_depth.back() == par.gamma_set.size());
    for (auto g : par.gamma_set) {
      CHECK_FALSE(quad::eval(f, f1, g).is_zero());
      CHECK_FALSE(quad::eval(f, f2, g).is_zero());
    }
  }
  CHECK_THROWS(multiset::gamma_set(f, f1, quad::scale(f, f1, f.one()), 2));
  CHECK_THROWS(multiset::gamma_set(f, f1, Q(f, 2, 6, 14), 2));  // 2 * f1
  CHECK(multiset::default_gamma_depth(101) == 5);
}

TEST_CASE("proportionality") {
  const auto f3 = Field::create(3);
  CHECK(multiset::proportional(f3, Q(f3, 2, 0, 2), Q(f3, 1, 0, 1)) == f3.element(2));
  CHECK_FALSE(multiset::proportional(f3, Q(f3, 1, 0, 1), Q(f3, 1, 1, 1)).has_value());
  CHECK(multiset::proportional(f3, Q(f3, 1, 1, 1), Q(f3, 1, 1, 1)) == f3.one());
}

TEST_CASE("monic word uniqueness") {
  const auto f5 = Field::create(5);
  CHECK(multiset::monic_word_uniqueness_check(f5, Q(f5, 1, 0, 0), Q(f5, 1, 0, 1), 4));
  CHECK_THROWS(multiset::monic_word_uniqueness_check(f5, Q(f5, 1, 0, 1), Q(f5, 1, 0, 1), 4));
  CHECK_THROWS(multiset::monic_word_uniqueness_check(f5, Q(f5, 2, 0, 1), Q(f5, 1, 0, 1), 4));
}
