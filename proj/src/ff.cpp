#include "dynirr/ff.hpp"

#include <array>
#include <charconv>
#include <limits>
#include <sstream>

#include "dynirr/error.hpp"
#include "dynirr/poly.hpp"

namespace dynirr::ff {

namespace {

constexpr unsigned kMaxDegree = 32;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Field Field::create(std::uint64_t p, unsigned k) {
  if (k < 1) throw InvalidField("extension degree must be at least 1");
  if (p == 2) throw InvalidField("characteristic 2 is not supported (no dynamically irreducible quadratics)");
  if (!is_prime(p)) throw InvalidField("characteristic " + std::to_string(p) + " is not prime");
  if (p % 2 == 0) throw InvalidField("characteristic must be odd");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > std::numeric_limits<std::uint32_t>::max())
      throw InvalidField("field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^32");
  }

  Field f;
  f.p_ = static_cast<std::uint32_t>(p);
  f.k_ = k;
  f.q_ = static_cast<std::uint32_t>(q);
  if (k > 1) {
    // First monic irreducible X^k + tail, tails ordered by packed index.
    const Field base = create(p, 1);
    std::vector<Element> coeffs(k + 1, base.zero());
    coeffs[k] = base.one();
    for (std::uint64_t tail = 1; tail < q; ++tail) {
      std::uint64_t t = tail;
      for (unsigned i = 0; i < k; ++i) {
        coeffs[i] = base.element(t % p);
        t /= p;
      }
      if (coeffs[0].is_zero()) continue;
      if (poly::is_irreducible(base, poly::DensePoly(coeffs))) {
        f.modulus_.resize(k + 1);
        for (unsigned i = 0; i <= k; ++i) f.modulus_[i] = coeffs[i].index();
        break;
      }
    }
    if (f.modulus_.empty()) throw InvalidField("no irreducible modulus found");
  }
  if (f.q_ <= kCharacterTableLimit) f.build_character_table();
  return f;
}

Field Field::parse(std::string_view spec) {
  spec = trim(spec);
  const auto caret = spec.find('^');
  std::int64_t p = 0;
  std::int64_t k = 1;
  if (caret == std::string_view::npos) {
    p = parse_int(spec, "field characteristic");
  } else {
    p = parse_int(spec.substr(0, caret), "field characteristic");
    k = parse_int(spec.substr(caret + 1), "extension degree");
  }
  if (p < 2) throw InvalidField("characteristic must be an odd prime");
  if (k < 1 || k > kMaxDegree) throw InvalidField("extension degree out of range");
  return create(static_cast<std::uint64_t>(p), static_cast<unsigned>(k));
}

void Field::build_character_table() {
  nonsquare_table_.assign(q_, 1);
  for (std::uint32_t x = 0; x < q_; ++x) nonsquare_table_[mul_raw(x, x)] = 0;
}

std::string Field::modulus_string() const {
  if (k_ == 1) return "";
  std::vector<Element> c;
  const Field base = create(p_, 1);
  for (auto m : modulus_) c.push_back(base.element(m));
  std::string s = poly::format(base, poly::DensePoly(std::move(c)));
  for (auto& ch : s)
    if (ch == 'X') ch = 't';
  return s;
}

std::string Field::spec_string() const {
  return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
}

void Field::check(Element x) const {
  if (x.order() != q_)
    throw ContextMismatch("element of F_" + std::to_string(x.order()) + " used in F_" + std::to_string(q_));
}

Element Field::element(std::uint64_t index) const {
  if (index >= q_) throw InvalidArgument("element index " + std::to_string(index) + " out of range");
  return {static_cast<std::uint32_t>(index), q_};
}

Element Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r), q_};
}

Element Field::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() > k_) throw InvalidArgument("too many coordinates for field");
  std::uint64_t index = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= p_) throw InvalidArgument("coordinate out of range");
    index = index * p_ + coords[i];
  }
  return {static_cast<std::uint32_t>(index), q_};
}

std::vector<std::uint32_t> Field::coords(Element x) const {
  check(x);
  std::vector<std::uint32_t> c(k_);
  std::uint32_t v = x.index();
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

std::uint32_t Field::add_ext(std::uint32_t x, std::uint32_t y) const {
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint32_t d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    out += d * place;
    place *= p_;
    x /= p_;
    y /= p_;
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t Field::neg_ext(std::uint32_t x) const {
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint32_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * place;
    place *= p_;
    x /= p_;
  }
  return static_cast<std::uint32_t>(out);
}

std::uint32_t Field::mul_ext(std::uint32_t x, std::uint32_t y) const {
  std::array<std::uint64_t, kMaxDegree> a{};
  std::array<std::uint64_t, kMaxDegree> b{};
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  for (unsigned i = 0; i < k_; ++i) {
    a[i] = x % p_;
    b[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  for (unsigned i = 0; i < k_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
  }
  // t^k = -(m_0 + m_1 t + ... + m_{k-1} t^{k-1})
  for (unsigned d = 2 * k_ - 2; d >= k_; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (unsigned j = 0; j < k_; ++j) prod[d - k_ + j] = (prod[d - k_ + j] + c * (p_ - modulus_[j])) % p_;
  }
  std::uint64_t out = 0;
  for (unsigned i = k_; i-- > 0;) out = out * p_ + prod[i];
  return static_cast<std::uint32_t>(out);
}

std::uint32_t Field::pow_raw(std::uint32_t x, std::uint64_t e) const {
  std::uint32_t result = 1;
  while (e != 0) {
    if (e & 1) result = mul_raw(result, x);
    x = mul_raw(x, x);
    e >>= 1;
  }
  return result;
}

Element Field::add(Element x, Element y) const {
  check(x);
  check(y);
  return {add_raw(x.index(), y.index()), q_};
}

Element Field::sub(Element x, Element y) const {
  check(x);
  check(y);
  return {sub_raw(x.index(), y.index()), q_};
}

Element Field::neg(Element x) const {
  check(x);
  return {neg_raw(x.index()), q_};
}

Element Field::mul(Element x, Element y) const {
  check(x);
  check(y);
  return {mul_raw(x.index(), y.index()), q_};
}

Element Field::inv(Element x) const {
  check(x);
  if (x.is_zero()) throw DivisionByZero();
  return {pow_raw(x.index(), std::uint64_t{q_} - 2), q_};
}

Element Field::pow(Element x, std::uint64_t e) const {
  check(x);
  return {pow_raw(x.index(), e), q_};
}

bool Field::is_nonsquare(Element x) const {
  check(x);
  return nonsquare_raw(x.index());
}

bool Field::is_nonsquare_by_power(Element x) const {
  check(x);
  return pow_raw(x.index(), (std::uint64_t{q_} - 1) / 2) == p_ - 1;
}

std::optional<Element> Field::sqrt(Element x) const {
  check(x);
  if (x.is_zero()) return zero();
  if (is_nonsquare(x)) return std::nullopt;
  // Tonelli-Shanks with q - 1 = 2^s * t, t odd.
  std::uint64_t t = std::uint64_t{q_} - 1;
  unsigned s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  std::uint32_t z = 2;
  while (!nonsquare_raw(z)) ++z;
  std::uint32_t m = s;
  std::uint32_t c = pow_raw(z, t);
  std::uint32_t u = pow_raw(x.index(), t);
  std::uint32_t r = pow_raw(x.index(), (t + 1) / 2);
  while (u != 1) {
    std::uint32_t i = 0;
    std::uint32_t u2 = u;
    while (u2 != 1) {
      u2 = mul_raw(u2, u2);
      ++i;
    }
    std::uint32_t b = c;
    for (std::uint32_t j = 0; j + 1 < m - i; ++j) b = mul_raw(b, b);
    m = i;
    c = mul_raw(b, b);
    u = mul_raw(u, c);
    r = mul_raw(r, b);
  }
  return Element(r, q_);
}

std::string Field::format(Element x) const {
  check(x);
  if (k_ == 1) return std::to_string(x.index());
  const auto c = coords(x);
  std::ostringstream os;
  for (unsigned i = 0; i < k_; ++i) {
    if (i > 0) os << '+';
    os << c[i];
    if (i == 1) os << "*t";
    if (i > 1) os << "*t^" << i;
  }
  return os.str();
}

Element Field::parse_element(std::string_view text) const {
  text = trim(text);
  if (text.empty()) throw ParseError("empty field element");
  std::vector<std::uint32_t> acc(k_, 0);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('+', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view term = trim(text.substr(pos, next - pos));
    if (term.empty()) throw ParseError("malformed field element '" + std::string(text) + "'");
    std::int64_t coeff = 1;
    unsigned power = 0;
    const auto tpos = term.find('t');
    if (tpos == std::string_view::npos) {
      coeff = parse_int(term, "coefficient");
    } else {
      std::string_view head = trim(term.substr(0, tpos));
      std::string_view tail = trim(term.substr(tpos + 1));
      if (!head.empty()) {
        if (head.back() != '*') throw ParseError("malformed term '" + std::string(term) + "'");
        head.remove_suffix(1);
        coeff = parse_int(head, "coefficient");
      }
      power = 1;
      if (!tail.empty()) {
        if (tail.front() != '^') throw ParseError("malformed term '" + std::string(term) + "'");
        power = static_cast<unsigned>(parse_int(tail.substr(1), "exponent"));
      }
    }
    if (power >= k_) throw ParseError("power of t out of range in '" + std::string(text) + "'");
    std::int64_t r = coeff % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    acc[power] = static_cast<std::uint32_t>((acc[power] + static_cast<std::uint64_t>(r)) % p_);
    pos = next + 1;
  }
  return from_coords(acc);
}

}  // namespace dynirr::ff
