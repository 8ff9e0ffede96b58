#pragma once

// Dynamical irreducibility of sets {f_1, ..., f_r} of quadratics under
// composition.
//
// Write F = f_{i_1} o ... o f_{i_n}. Given that the shorter word
// f_{i_1} o ... o f_{i_{n-1}} is irreducible, F is irreducible iff
//
//   n = 1:  -a_{i_1} * F(g_{i_1}) is a nonsquare,
//   n >= 2:  a_{i_1} * F(g_{i_n}) is a nonsquare,
//
// where g_{i_n} is the critical point of the innermost polynomial. So the
// values that matter are the closure V of the seeds f_i(g_i) under all f_j,
// and each (j, w = f_j(v)) pair needs one character test. di_set_test walks
// V breadth-first, so a failure comes with a shortest witness word.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dynirr/ff.hpp"
#include "dynirr/poly.hpp"
#include "dynirr/quad.hpp"

namespace dynirr::multiset {

using ff::Element;
using ff::Field;
using quad::CompositionWord;
using quad::QuadPoly;

struct SetVerdict {
  enum class Kind { DynamicallyIrreducible, Fails, PreconditionFailed };

  Kind kind = Kind::DynamicallyIrreducible;
  // Fails: the reducible word, the index of its innermost polynomial (whose
  // critical point the word is evaluated at), the composition value, and the
  // signed value that turned out to be a square.
  CompositionWord word;
  std::size_t gamma_index = 0;
  Element value;
  Element tested_value;
  // PreconditionFailed: the first reducible member.
  std::size_t bad_index = 0;
  std::uint64_t values_visited = 0;
  std::uint64_t tests_performed = 0;

  bool is_di() const { return kind == Kind::DynamicallyIrreducible; }
};

// Throws InvalidArgument for an empty list or repeated polynomials.
SetVerdict di_set_test(const Field& f, std::span<const QuadPoly> polys);

// -a_{i_1} v for words of length 1, a_{i_1} v otherwise.
Element signed_test_value(const Field& f, std::span<const QuadPoly> polys, const CompositionWord& word, Element v);

// Replays a Fails verdict: the word evaluated at the innermost critical
// point reproduces the value and its signed value is a square.
bool witness_is_valid(const Field& f, std::span<const QuadPoly> polys, const SetVerdict& verdict);

// ceil(sqrt(2 log log q / log 2) + c4).
unsigned default_gamma_depth(std::uint64_t q, double c4 = 2.0);
// ceil(c3 q^{3/4}), the reference bound on validated values for DI sets.
std::uint64_t reference_value_bound(std::uint64_t q, double c3 = 1.0);

struct GammaReport {
  // All g in F_q, in element order, with a_{i_1}^{-1} (f_{i_1} o ... o f_{i_n})(g)
  // a nonsquare for every word over {1, 2} of length 1..depth.
  std::vector<Element> gamma_set;
  unsigned depth = 0;
  // sizes_per_depth[n - 1]: elements passing every word of length <= n.
  std::vector<std::uint64_t> sizes_per_depth;
  std::uint64_t tests_performed = 0;
};

// Throws InvalidArgument when f1 and f2 are proportional or depth == 0.
GammaReport gamma_set(const Field& f, const QuadPoly& f1, const QuadPoly& f2, unsigned depth, int jobs = 0);
GammaReport gamma_set_serial(const Field& f, const QuadPoly& f1, const QuadPoly& f2, unsigned depth);

// lambda with f = lambda * g, if any.
std::optional<Element> proportional(const Field& f, const QuadPoly& p, const QuadPoly& g);

// Expands every word of length 1..max_len over {g1, g2} and reports whether
// all expansions are pairwise distinct. Throws InvalidArgument unless g1, g2
// are distinct and monic.
bool monic_word_uniqueness_check(const Field& f, const QuadPoly& g1, const QuadPoly& g2, unsigned max_len,
                                 std::size_t max_degree = poly::kDefaultMaxDegree);

// Dense oracle: first word (by length, then lexicographically) of length
// <= max_len whose expansion is reducible, if any.
std::optional<CompositionWord> first_reducible_word(const Field& f, std::span<const QuadPoly> polys,
                                                    unsigned max_len,
                                                    std::size_t max_degree = poly::kDefaultMaxDegree);

}  // namespace dynirr::multiset
