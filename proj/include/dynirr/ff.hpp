#pragma once

// Arithmetic in odd finite fields F_q, q = p^k < 2^32.
//
// An element is stored as the packed base-p integer of its coordinate
// vector, index = c_0 + c_1 p + ... + c_{k-1} p^{k-1}, where the c_i are the
// coefficients with respect to the power basis 1, t, ..., t^{k-1} and t is a
// root of the field modulus. The packed index doubles as the canonical
// enumeration order (0 first, 1 second) and as the sort key used for
// serialisation. Each element also records q so that operands from different
// fields are rejected.

#include <compare>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dynirr::ff {

class Element {
 public:
  constexpr Element() = default;
  constexpr Element(std::uint32_t index, std::uint32_t order) : index_(index), order_(order) {}

  constexpr std::uint32_t index() const { return index_; }
  // Order q of the field the element belongs to (0 for a default-constructed element).
  constexpr std::uint32_t order() const { return order_; }
  constexpr bool is_zero() const { return index_ == 0; }

  friend constexpr bool operator==(const Element&, const Element&) = default;
  friend constexpr auto operator<=>(const Element& x, const Element& y) {
    if (auto c = x.order_ <=> y.order_; c != 0) return c;
    return x.index_ <=> y.index_;
  }

 private:
  std::uint32_t index_ = 0;
  std::uint32_t order_ = 0;
};

class Field {
 public:
  // Largest order for which the quadratic character is tabulated.
  static constexpr std::uint32_t kCharacterTableLimit = 1u << 20;

  // Throws InvalidField for even or composite p, k < 1, or q >= 2^32.
  static Field create(std::uint64_t p, unsigned k = 1);
  // Parses "p" or "p^k".
  static Field parse(std::string_view spec);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  // Monic modulus, lowest coefficient first (k+1 entries). Empty for prime fields.
  std::span<const std::uint32_t> modulus() const { return modulus_; }
  std::string modulus_string() const;
  std::string spec_string() const;

  Element zero() const { return {0, q_}; }
  Element one() const { return {1, q_}; }
  Element minus_one() const { return {p_ - 1, q_}; }
  Element element(std::uint64_t index) const;
  // Image of an integer under Z -> F_p -> F_q.
  Element from_int(std::int64_t v) const;
  Element from_coords(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords(Element x) const;

  // All q elements in canonical order.
  auto elements() const {
    return std::views::iota(std::uint32_t{0}, q_) |
           std::views::transform([q = q_](std::uint32_t i) { return Element(i, q); });
  }

  Element add(Element x, Element y) const;
  Element sub(Element x, Element y) const;
  Element neg(Element x) const;
  Element mul(Element x, Element y) const;
  Element square(Element x) const { return mul(x, x); }
  Element inv(Element x) const;  // throws DivisionByZero
  Element div(Element x, Element y) const { return mul(x, inv(y)); }
  Element pow(Element x, std::uint64_t e) const;

  // True iff x is a nonsquare; 0 counts as a square.
  bool is_nonsquare(Element x) const;
  // The literal Euler criterion x^{(q-1)/2} == -1, bypassing the table.
  bool is_nonsquare_by_power(Element x) const;
  bool minus_one_is_square() const { return !nonsquare_raw(p_ - 1); }
  std::optional<Element> sqrt(Element x) const;

  std::string format(Element x) const;
  Element parse_element(std::string_view text) const;

  void check(Element x) const;

  // Unchecked kernels on packed indices for inner loops.
  std::uint32_t add_raw(std::uint32_t x, std::uint32_t y) const {
    if (k_ == 1) {
      std::uint32_t s = x + y;
      return (s >= p_ || s < x) ? s - p_ : s;
    }
    return add_ext(x, y);
  }
  std::uint32_t neg_raw(std::uint32_t x) const {
    if (k_ == 1) return x == 0 ? 0 : p_ - x;
    return neg_ext(x);
  }
  std::uint32_t sub_raw(std::uint32_t x, std::uint32_t y) const { return add_raw(x, neg_raw(y)); }
  std::uint32_t mul_raw(std::uint32_t x, std::uint32_t y) const {
    if (k_ == 1) return static_cast<std::uint32_t>(std::uint64_t{x} * y % p_);
    return mul_ext(x, y);
  }
  bool nonsquare_raw(std::uint32_t x) const {
    if (!nonsquare_table_.empty()) return nonsquare_table_[x] != 0;
    return is_nonsquare_by_power(Element(x, q_));
  }
  bool has_character_table() const { return !nonsquare_table_.empty(); }

  friend bool operator==(const Field& a, const Field& b) { return a.q_ == b.q_; }

 private:
  Field() = default;

  std::uint32_t add_ext(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t neg_ext(std::uint32_t x) const;
  std::uint32_t mul_ext(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t pow_raw(std::uint32_t x, std::uint64_t e) const;
  void build_character_table();

  std::uint32_t p_ = 0;
  unsigned k_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint8_t> nonsquare_table_;
};

bool is_prime(std::uint64_t n);

}  // namespace dynirr::ff
