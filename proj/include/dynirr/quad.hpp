#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynirr/ff.hpp"
#include "dynirr/poly.hpp"

namespace dynirr::quad {

using ff::Element;
using ff::Field;

// aX^2 + bX + c with a != 0 and the critical point -b/(2a) cached.
class QuadPoly {
 public:
  // Throws DegeneratePolynomial when a == 0.
  static QuadPoly create(const Field& f, Element a, Element b, Element c);
  static QuadPoly monic(const Field& f, Element b, Element c) { return create(f, f.one(), b, c); }
  // a(X - b)^2 + b, the family whose members all fix b.
  static QuadPoly fixed_point_family(const Field& f, Element a, Element b);

  Element a() const { return a_; }
  Element b() const { return b_; }
  Element c() const { return c_; }
  Element gamma() const { return gamma_; }
  bool is_monic() const { return a_.index() == 1; }

  friend bool operator==(const QuadPoly& x, const QuadPoly& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }
  // Canonical (a, b, c) order on packed indices.
  friend std::strong_ordering operator<=>(const QuadPoly& x, const QuadPoly& y) {
    if (auto o = x.a_ <=> y.a_; o != 0) return o;
    if (auto o = x.b_ <=> y.b_; o != 0) return o;
    return x.c_ <=> y.c_;
  }

 private:
  QuadPoly(Element a, Element b, Element c, Element gamma) : a_(a), b_(b), c_(c), gamma_(gamma) {}

  Element a_, b_, c_, gamma_;
};

// Indices into a polynomial list, outermost first: (i_1, ..., i_n) names
// f_{i_1} o ... o f_{i_n}.
struct CompositionWord {
  std::vector<std::uint32_t> indices;

  std::size_t length() const { return indices.size(); }
  std::uint32_t outermost() const { return indices.front(); }
  std::uint32_t innermost() const { return indices.back(); }
  friend bool operator==(const CompositionWord&, const CompositionWord&) = default;
};

Element eval(const Field& f, const QuadPoly& p, Element x);
// f(gamma) = c - b^2 / (4a).
Element critical_value(const Field& f, const QuadPoly& p);
// -a f(gamma) is a nonsquare.
bool is_irreducible_quad(const Field& f, const QuadPoly& p);
// f(uX)/u = a u X^2 + b X + c/u. Throws InvalidArgument when u == 0.
QuadPoly scale(const Field& f, const QuadPoly& p, Element u);
// The unique monic polynomial among the scalings of p.
QuadPoly monic_representative(const Field& f, const QuadPoly& p);

// Evaluates the word at x pointwise, innermost polynomial first.
Element compose_eval(const Field& f, std::span<const QuadPoly> polys, const CompositionWord& word, Element x);
// Leading coefficient a_{i_1} a_{i_2}^2 ... a_{i_n}^{2^{n-1}}.
Element composition_leading_coeff(const Field& f, std::span<const QuadPoly> polys, const CompositionWord& word);

poly::DensePoly to_dense(const Field& f, const QuadPoly& p);
// Dense expansion of a composition word (oracle only).
poly::DensePoly expand_word(const Field& f, std::span<const QuadPoly> polys, const CompositionWord& word,
                            std::size_t max_degree = poly::kDefaultMaxDegree);

void validate_word(std::span<const QuadPoly> polys, const CompositionWord& word);

// Serialisation "a,b,c" with each coefficient in Field::format notation.
std::string format(const Field& f, const QuadPoly& p);
QuadPoly parse(const Field& f, std::string_view text);
// Canonical set form: members sorted, joined with ';'.
std::string format_set(const Field& f, std::span<const QuadPoly> set);
std::string format_word(const CompositionWord& w);

// Every quadratic over f in canonical (a, b, c) order.
std::vector<QuadPoly> all_quadratics(const Field& f);
std::vector<QuadPoly> all_irreducible_quadratics(const Field& f);

}  // namespace dynirr::quad
