#include "dynirr/poly.hpp"

#include <sstream>

#include "dynirr/error.hpp"

namespace dynirr::poly {

namespace {

void trim(std::vector<Element>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

DensePoly::DensePoly(std::vector<Element> coeffs) : coeffs_(std::move(coeffs)) { trim(coeffs_); }

DensePoly DensePoly::constant(Element c) { return DensePoly({c}); }

DensePoly DensePoly::x(const Field& f) { return DensePoly({f.zero(), f.one()}); }

DensePoly DensePoly::monomial(Element c, std::size_t degree) {
  std::vector<Element> v(degree + 1, Element(0, c.order()));
  v[degree] = c;
  return DensePoly(std::move(v));
}

DensePoly add(const Field& f, const DensePoly& a, const DensePoly& b) {
  const auto& big = a.coeffs().size() >= b.coeffs().size() ? a : b;
  const auto& small = a.coeffs().size() >= b.coeffs().size() ? b : a;
  std::vector<Element> out(big.coeffs().begin(), big.coeffs().end());
  for (std::size_t i = 0; i < small.coeffs().size(); ++i) out[i] = f.add(out[i], small.coeffs()[i]);
  return DensePoly(std::move(out));
}

DensePoly sub(const Field& f, const DensePoly& a, const DensePoly& b) {
  return add(f, a, scale(f, b, f.minus_one()));
}

DensePoly scale(const Field& f, const DensePoly& a, Element c) {
  std::vector<Element> out;
  out.reserve(a.coeffs().size());
  for (auto x : a.coeffs()) out.push_back(f.mul(x, c));
  return DensePoly(std::move(out));
}

DensePoly mul(const Field& f, const DensePoly& a, const DensePoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (auto x : ac) f.check(x);
  for (auto x : bc) f.check(x);
  std::vector<std::uint32_t> acc(ac.size() + bc.size() - 1, 0);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    const std::uint32_t ai = ac[i].index();
    if (ai == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) acc[i + j] = f.add_raw(acc[i + j], f.mul_raw(ai, bc[j].index()));
  }
  std::vector<Element> out;
  out.reserve(acc.size());
  for (auto v : acc) out.emplace_back(v, f.order());
  return DensePoly(std::move(out));
}

std::pair<DensePoly, DensePoly> divmod(const Field& f, const DensePoly& a, const DensePoly& b) {
  if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
  if (a.degree() < b.degree()) return {DensePoly{}, a};
  std::vector<std::uint32_t> r;
  r.reserve(a.coeffs().size());
  for (auto x : a.coeffs()) {
    f.check(x);
    r.push_back(x.index());
  }
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const std::uint32_t lead_inv = f.inv(b.leading()).index();
  std::vector<std::uint32_t> quot(r.size() - db, 0);
  for (std::size_t d = r.size(); d-- > db;) {
    if (r[d] == 0) continue;
    const std::uint32_t c = f.mul_raw(r[d], lead_inv);
    quot[d - db] = c;
    const std::uint32_t nc = f.neg_raw(c);
    for (std::size_t j = 0; j <= db; ++j) r[d - db + j] = f.add_raw(r[d - db + j], f.mul_raw(nc, bc[j].index()));
  }
  auto wrap = [&](const std::vector<std::uint32_t>& v, std::size_t n) {
    std::vector<Element> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(v[i], f.order());
    return DensePoly(std::move(out));
  };
  return {wrap(quot, quot.size()), wrap(r, db)};
}

DensePoly mod(const Field& f, const DensePoly& a, const DensePoly& m) { return divmod(f, a, m).second; }

DensePoly mulmod(const Field& f, const DensePoly& a, const DensePoly& b, const DensePoly& m) {
  return mod(f, mul(f, a, b), m);
}

DensePoly powmod(const Field& f, const DensePoly& base, std::uint64_t e, const DensePoly& m) {
  if (m.is_zero()) throw InvalidArgument("polynomial modulus is zero");
  DensePoly result = mod(f, DensePoly::constant(f.one()), m);
  DensePoly b = mod(f, base, m);
  while (e != 0) {
    if (e & 1) result = mulmod(f, result, b, m);
    e >>= 1;
    if (e != 0) b = mulmod(f, b, b, m);
  }
  return result;
}

DensePoly monic(const Field& f, const DensePoly& a) {
  if (a.is_zero()) return a;
  return scale(f, a, f.inv(a.leading()));
}

DensePoly gcd(const Field& f, DensePoly a, DensePoly b) {
  while (!b.is_zero()) {
    DensePoly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

Element evaluate(const Field& f, const DensePoly& a, Element x) {
  Element acc = f.zero();
  const auto c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c[i]);
  return acc;
}

DensePoly compose(const Field& f, const DensePoly& outer, const DensePoly& inner, std::size_t max_degree) {
  if (outer.degree() > 0 && inner.degree() > 0 &&
      static_cast<std::size_t>(outer.degree()) * static_cast<std::size_t>(inner.degree()) > max_degree)
    throw ResourceExhausted("composition degree " + std::to_string(outer.degree() * inner.degree()) +
                            " exceeds budget " + std::to_string(max_degree));
  DensePoly acc;
  const auto c = outer.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = add(f, mul(f, acc, inner), DensePoly::constant(c[i]));
  return acc;
}

DensePoly iterate(const Field& f, const DensePoly& p, unsigned n, std::size_t max_degree) {
  DensePoly acc = DensePoly::x(f);
  for (unsigned i = 0; i < n; ++i) acc = compose(f, p, acc, max_degree);
  return acc;
}

bool is_irreducible(const Field& f, const DensePoly& p) {
  if (p.degree() < 1) throw InvalidArgument("irreducibility of a constant polynomial is undefined");
  if (p.degree() == 1) return true;
  const DensePoly m = monic(f, p);
  const unsigned d = static_cast<unsigned>(m.degree());
  const DensePoly x = DensePoly::x(f);

  // frob[i] = X^{q^i} mod m, computed by repeated q-th powering.
  std::vector<DensePoly> frob{mod(f, x, m)};
  frob.reserve(d + 1);
  for (unsigned i = 1; i <= d; ++i) frob.push_back(powmod(f, frob.back(), f.order(), m));
  if (frob[d] != mod(f, x, m)) return false;
  for (unsigned t : prime_divisors(d)) {
    const DensePoly g = gcd(f, m, sub(f, frob[d / t], x));
    if (g.degree() != 0) return false;
  }
  return true;
}

std::string format(const Field& f, const DensePoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const std::string coeff = f.format(c[i]);
    const bool compound = coeff.find('+') != std::string::npos;
    if (compound) os << '(' << coeff << ')';
    else os << coeff;
    if (i >= 1) os << "*X";
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

}  // namespace dynirr::poly
