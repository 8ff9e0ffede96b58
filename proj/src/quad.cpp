#include "dynirr/quad.hpp"

#include <algorithm>

#include "dynirr/error.hpp"

namespace dynirr::quad {

QuadPoly QuadPoly::create(const Field& f, Element a, Element b, Element c) {
  f.check(a);
  f.check(b);
  f.check(c);
  if (a.is_zero()) throw DegeneratePolynomial("leading coefficient is zero; not a quadratic");
  const Element two_a = f.add(a, a);
  const Element gamma = f.neg(f.div(b, two_a));
  return QuadPoly(a, b, c, gamma);
}

QuadPoly QuadPoly::fixed_point_family(const Field& f, Element a, Element b) {
  // a X^2 - 2ab X + (a b^2 + b)
  const Element two_ab = f.mul(f.from_int(2), f.mul(a, b));
  return create(f, a, f.neg(two_ab), f.add(f.mul(a, f.square(b)), b));
}

Element eval(const Field& f, const QuadPoly& p, Element x) {
  f.check(x);
  const std::uint32_t xi = x.index();
  // (a x + b) x + c
  const std::uint32_t t = f.add_raw(f.mul_raw(p.a().index(), xi), p.b().index());
  return {f.add_raw(f.mul_raw(t, xi), p.c().index()), f.order()};
}

Element critical_value(const Field& f, const QuadPoly& p) { return eval(f, p, p.gamma()); }

bool is_irreducible_quad(const Field& f, const QuadPoly& p) {
  return f.is_nonsquare(f.neg(f.mul(p.a(), critical_value(f, p))));
}

QuadPoly scale(const Field& f, const QuadPoly& p, Element u) {
  f.check(u);
  if (u.is_zero()) throw InvalidArgument("scaling by zero");
  return QuadPoly::create(f, f.mul(p.a(), u), p.b(), f.div(p.c(), u));
}

QuadPoly monic_representative(const Field& f, const QuadPoly& p) { return scale(f, p, f.inv(p.a())); }

void validate_word(std::span<const QuadPoly> polys, const CompositionWord& word) {
  if (word.indices.empty()) throw InvalidArgument("composition word must be nonempty");
  for (auto i : word.indices)
    if (i >= polys.size()) throw InvalidArgument("composition word index " + std::to_string(i) + " out of range");
}

Element compose_eval(const Field& f, std::span<const QuadPoly> polys, const CompositionWord& word, Element x) {
  validate_word(polys, word);
  for (auto it = word.indices.rbegin(); it != word.indices.rend(); ++it) x = eval(f, polys[*it], x);
  return x;
}

Element composition_leading_coeff(const Field& f, std::span<const QuadPoly> polys, const CompositionWord& word) {
  validate_word(polys, word);
  // Running power a_{i_h}^{2^{h-1}} obtained by squaring once per position.
  Element acc = f.one();
  for (std::size_t h = 0; h < word.indices.size(); ++h) {
    Element term = polys[word.indices[h]].a();
    for (std::size_t s = 0; s < h; ++s) term = f.square(term);
    acc = f.mul(acc, term);
  }
  return acc;
}

poly::DensePoly to_dense(const Field&, const QuadPoly& p) { return poly::DensePoly({p.c(), p.b(), p.a()}); }

poly::DensePoly expand_word(const Field& f, std::span<const QuadPoly> polys, const CompositionWord& word,
                            std::size_t max_degree) {
  validate_word(polys, word);
  poly::DensePoly acc = poly::DensePoly::x(f);
  for (auto it = word.indices.rbegin(); it != word.indices.rend(); ++it)
    acc = poly::compose(f, to_dense(f, polys[*it]), acc, max_degree);
  return acc;
}

std::string format(const Field& f, const QuadPoly& p) {
  return f.format(p.a()) + "," + f.format(p.b()) + "," + f.format(p.c());
}

QuadPoly parse(const Field& f, std::string_view text) {
  const auto c1 = text.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
      text.find(',', c2 + 1) != std::string_view::npos)
    throw ParseError("expected 'a,b,c', got '" + std::string(text) + "'");
  return QuadPoly::create(f, f.parse_element(text.substr(0, c1)), f.parse_element(text.substr(c1 + 1, c2 - c1 - 1)),
                          f.parse_element(text.substr(c2 + 1)));
}

std::string format_set(const Field& f, std::span<const QuadPoly> set) {
  std::vector<QuadPoly> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) out += ';';
    out += format(f, sorted[i]);
  }
  return out;
}

std::string format_word(const CompositionWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.indices.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(w.indices[i]);
  }
  return out;
}

std::vector<QuadPoly> all_quadratics(const Field& f) {
  std::vector<QuadPoly> out;
  out.reserve(static_cast<std::size_t>(f.order() - 1) * f.order() * f.order());
  for (auto a : f.elements()) {
    if (a.is_zero()) continue;
    for (auto b : f.elements())
      for (auto c : f.elements()) out.push_back(QuadPoly::create(f, a, b, c));
  }
  return out;
}

std::vector<QuadPoly> all_irreducible_quadratics(const Field& f) {
  std::vector<QuadPoly> out;
  for (const auto& p : all_quadratics(f))
    if (is_irreducible_quad(f, p)) out.push_back(p);
  return out;
}

}  // namespace dynirr::quad
