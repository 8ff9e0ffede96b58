#pragma once

#include <initializer_list>
#include <vector>

#include "dynirr/ff.hpp"
#include "dynirr/poly.hpp"
#include "dynirr/quad.hpp"

namespace testing {

inline dynirr::quad::QuadPoly Q(const dynirr::ff::Field& f, std::int64_t a, std::int64_t b, std::int64_t c) {
  return dynirr::quad::QuadPoly::create(f, f.from_int(a), f.from_int(b), f.from_int(c));
}

// Coefficients lowest degree first.
inline dynirr::poly::DensePoly D(const dynirr::ff::Field& f, std::initializer_list<std::int64_t> coeffs) {
  std::vector<dynirr::ff::Element> v;
  for (auto c : coeffs) v.push_back(f.from_int(c));
  return dynirr::poly::DensePoly(std::move(v));
}

}  // namespace testing
