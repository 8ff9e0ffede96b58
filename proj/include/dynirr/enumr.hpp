#pragma once

// Enumeration of all dynamically irreducible r-sets of quadratics, r >= 2.
//
// The search is split three ways:
//   part 1  sets of pairwise proportional polynomials {f, l_2 f, ..., l_r f};
//   part 2  sets from the fixed-point family a(X - b)^2 + b with a common b,
//           which are DI exactly when -1 is a square and every a*b is a
//           nonsquare;
//   part 3  sets containing a non-proportional DI pair (f1, f2) that is not
//           inside one fixed-point family. For r >= 3 the remaining members
//           are built from the pair's Gamma set: pick two distinct values
//           d1, d2 reached by the pair and solve for every g with
//           g(d1), g(d2), g(g(d1)) in Gamma.
//
// Part 3 has two constructions. ClosureValues takes d1, d2 from the pair's
// composition closure {w(f_j(g_j))} and requires the unscaled values in
// Gamma; any further member g of a DI set must satisfy this, so the union is
// complete. Literal takes d1, d2 from {w(g_j) : n >= 0} and requires
// g(d)/a_g in Gamma; it misses sets (24 of 40 at q = 5, r = 3) and is kept
// for comparison.
// The union is deduplicated on canonical sorted form and every emitted set
// is re-checked with di_set_test.

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynirr/error.hpp"
#include "dynirr/ff.hpp"
#include "dynirr/multiset.hpp"
#include "dynirr/quad.hpp"

namespace dynirr::enumr {

using ff::Element;
using ff::Field;
using quad::QuadPoly;

// Members sorted ascending in canonical (a, b, c) order, pairwise distinct.
using QuadSet = std::vector<QuadPoly>;

QuadSet canonical(QuadSet s);

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

// Shared character-test counter; charge() reports whether the limit still holds.
class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  bool charge(std::uint64_t ops) { return used_.fetch_add(ops) + ops <= limit_; }
  bool exhausted() const { return used_.load() > limit_; }
  std::uint64_t used() const { return used_.load(); }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

enum class Part3Method { ClosureValues, Literal };

struct EnumOptions {
  int jobs = 0;
  std::uint64_t budget = kDefaultBudget;
  bool keep_list = true;
  // Depth for the part-3 Gamma sets; unset selects multiset::default_gamma_depth.
  std::optional<unsigned> gamma_depth;
  Part3Method part3 = Part3Method::ClosureValues;
};

struct PartTelemetry {
  std::uint64_t sets_tested = 0;
  std::uint64_t sets_emitted = 0;
  // Part 3 only.
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_skipped = 0;
  std::uint64_t max_gamma = 0;
  std::uint64_t max_pool = 0;
  std::vector<std::string> skip_reasons;
};

struct REnumResult {
  std::uint64_t q = 0;
  unsigned r = 0;
  std::uint64_t count_total = 0;
  // Distinct sets produced by each part.
  std::array<std::uint64_t, 3> counts_per_part{};
  // Sets produced by more than one part.
  std::uint64_t overlaps = 0;
  std::optional<std::vector<QuadSet>> set_list;
  std::array<PartTelemetry, 3> parts;
  std::uint64_t audit_failures = 0;
  std::uint64_t tests_performed = 0;
  // q^{3r/2 + 2}, reported next to count_total.
  double bound_reference = 0;
  double seconds = 0;
};

class BudgetExceeded : public ResourceExhausted {
 public:
  BudgetExceeded(const std::string& what, REnumResult partial)
      : ResourceExhausted(what), partial_(std::move(partial)) {}
  const REnumResult& partial() const { return partial_; }

 private:
  REnumResult partial_;
};

// All DI quadratics over f in canonical order.
std::vector<QuadPoly> all_di_polynomials(const Field& f, int jobs = 0);

std::vector<QuadSet> enum_part1(const Field& f, unsigned r, std::span<const QuadPoly> di_polys, Budget& budget,
                                PartTelemetry& tel);
std::vector<QuadSet> enum_part2(const Field& f, unsigned r, Budget& budget, PartTelemetry& tel);
std::vector<QuadSet> enum_part3(const Field& f, unsigned r, std::span<const QuadPoly> di_polys,
                                const EnumOptions& options, Budget& budget, PartTelemetry& tel);

// Both polynomials fix a common point b and equal a(X - b)^2 + b.
bool in_common_fixed_point_family(const Field& f, const QuadPoly& f1, const QuadPoly& f2);

// First two distinct values, walked breadth-first. Literal: {w(g_j) : w a
// word over {f1, f2}, n >= 0} from g_1 then g_2. ClosureValues: the closure
// seeded with f1(g_1), f2(g_2).
std::optional<std::pair<Element, Element>> pick_deltas(const Field& f, const QuadPoly& f1, const QuadPoly& f2,
                                                       Part3Method method = Part3Method::ClosureValues);

// Literal: g = a X^2 + b X + c with g(d_t)/a = alpha_t (t = 1, 2) and
// g(g(d_1))/a = alpha_3. Requires d1 != d2.
std::vector<QuadPoly> solve_candidates(const Field& f, Element d1, Element d2, Element alpha1, Element alpha2,
                                       Element alpha3);

// ClosureValues: g with g(d1) = alpha1, g(d2) = alpha2, g(alpha1) = alpha3.
// Requires d1 != d2; when alpha1 coincides with d1 or d2 every consistent a
// is returned.
std::vector<QuadPoly> solve_through_values(const Field& f, Element d1, Element d2, Element alpha1, Element alpha2,
                                           Element alpha3);

using SetSink = std::function<void(const QuadSet&)>;

// Throws InvalidArgument for r < 2 and BudgetExceeded when the test budget runs out.
REnumResult enum_all(const Field& f, unsigned r, const EnumOptions& options = {}, const SetSink& emit = {});

struct BruteForceResult {
  std::vector<QuadSet> sets;
  std::uint64_t candidates = 0;
  std::uint64_t dense_words_checked = 0;
};

// Every r-subset of the irreducible quadratics, classified by di_set_test and
// cross-checked against dense expansions of all words up to max_word_len.
// Throws OracleDiscrepancy on disagreement within that length and
// ResourceExhausted above max_candidates subsets.
BruteForceResult brute_force_sets(const Field& f, unsigned r, unsigned max_word_len,
                                  std::uint64_t max_candidates = 2'000'000);

}  // namespace dynirr::enumr
