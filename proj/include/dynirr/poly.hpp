#pragma once

// Dense univariate polynomials over F_q and Rabin's irreducibility test.
// This is the slow, definitional oracle the character tests are checked
// against; none of the census or set-testing hot paths expand polynomials.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynirr/ff.hpp"

namespace dynirr::poly {

using ff::Element;
using ff::Field;

// Coefficients lowest degree first with no trailing zeros; the zero
// polynomial has no coefficients.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(std::vector<Element> coeffs);

  static DensePoly constant(Element c);
  static DensePoly x(const Field& f);
  static DensePoly monomial(Element c, std::size_t degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Element> coeffs() const { return coeffs_; }
  Element coeff(std::size_t i, const Field& f) const { return i < coeffs_.size() ? coeffs_[i] : f.zero(); }
  Element leading() const { return coeffs_.back(); }

  friend bool operator==(const DensePoly&, const DensePoly&) = default;
  friend auto operator<=>(const DensePoly& a, const DensePoly& b) {
    if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.coeffs_.rbegin(), a.coeffs_.rend(), b.coeffs_.rbegin(),
                                                  b.coeffs_.rend());
  }

 private:
  std::vector<Element> coeffs_;
};

// Default cap on the degree of expanded iterates and compositions.
inline constexpr std::size_t kDefaultMaxDegree = std::size_t{1} << 12;

DensePoly add(const Field& f, const DensePoly& a, const DensePoly& b);
DensePoly sub(const Field& f, const DensePoly& a, const DensePoly& b);
DensePoly scale(const Field& f, const DensePoly& a, Element c);
DensePoly mul(const Field& f, const DensePoly& a, const DensePoly& b);
// Quotient and remainder; throws InvalidArgument for a zero divisor.
std::pair<DensePoly, DensePoly> divmod(const Field& f, const DensePoly& a, const DensePoly& b);
DensePoly mod(const Field& f, const DensePoly& a, const DensePoly& m);
DensePoly mulmod(const Field& f, const DensePoly& a, const DensePoly& b, const DensePoly& m);
DensePoly powmod(const Field& f, const DensePoly& base, std::uint64_t e, const DensePoly& m);
DensePoly monic(const Field& f, const DensePoly& a);
// Monic gcd; gcd(0, 0) = 0.
DensePoly gcd(const Field& f, DensePoly a, DensePoly b);
Element evaluate(const Field& f, const DensePoly& a, Element x);

// outer(inner(X)). Throws ResourceExhausted when the result degree exceeds max_degree.
DensePoly compose(const Field& f, const DensePoly& outer, const DensePoly& inner,
                  std::size_t max_degree = kDefaultMaxDegree);
// f^{(n)} with f^{(0)} = X.
DensePoly iterate(const Field& f, const DensePoly& p, unsigned n, std::size_t max_degree = kDefaultMaxDegree);

// Rabin's test. Throws InvalidArgument for constants.
bool is_irreducible(const Field& f, const DensePoly& p);

std::string format(const Field& f, const DensePoly& p);

}  // namespace dynirr::poly
