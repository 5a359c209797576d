#pragma once

// Bounded freeness certificates: collision checks for generated monoids,
// distinct digit sums, the ping-pong table for BS(1,r), the explicit
// generator constructions for the three order types, and linear
// independence of evaluated group words in truncated series rings.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mns/groups.hpp"
#include "mns/magnus.hpp"
#include "mns/series.hpp"

namespace mns {

enum class Verdict : std::uint8_t { verified, counterexample, inconclusive };

/// "verified-up-to-bound", "counterexample", "inconclusive-at-D"
std::string verdict_name(Verdict v);

struct Bounds {
  std::optional<int> L, D, N;
};

struct FreenessReport {
  std::string kind;  // monoid, group-algebra, digit-sum, ping-pong
  Verdict verdict = Verdict::verified;
  Bounds bounds;
  /// null when verified; otherwise the re-verified witness
  nlohmann::ordered_json witness;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

/// Generators must be positive, of weight >= 1, from one group; at least two.
FreenessReport free_monoid_check(const std::vector<Element>& generators, int max_length);

/// Every nonempty S within {0..N}: sum_{i in S} r^i, compared exactly.
/// N > 20 raises GuardError.
FreenessReport digit_sum_check(const Rational& r, int max_exponent);
inline constexpr int kDigitSumMaxExponent = 20;

/// Sum of r^i over the exponents in S.
Rational digit_sum(const Rational& r, const std::vector<int>& exponents);

/// BS(1,r) with integer r >= 2. A = {(s t, j) : s a sum of distinct powers
/// of r}. Applies every word of length <= L over {tx, x} to (t, 0), checks
/// membership in A and that tx-images and x-images never meet.
FreenessReport pingpong_check(const Rational& r, const Rational& t, int max_length);

/// s t with s a positive integer whose base-r digits are all 0 or 1.
bool pingpong_membership(const SemidirectElement& g, const Rational& t);

struct Type2Generators {
  std::int64_t power = 1;  // n with r^n >= 2 or r^n <= 1/2
  Element tx;              // (t, n)
  Element x;               // (0, n)
};

/// Throws for r = 1 or a non-semidirect group.
Type2Generators type2_generators(const Group& group, const Rational& t = Rational(1));

struct Type3Generators {
  Element b;  // shrinks C = B_0: b B_0 b^-1 = B_-1
  Element a;  // in B_0, not in B_-1, negative
  Element positive_a;
  Element positive_b;
  /// b B_0 b^-1 within B_-1 on sampled lamps, a in B_0 \ B_-1, a,b < 1.
  bool steps_verified = false;
};

Type3Generators type3_generators(const Group& group);

/// 1 + c xbar and 1 + d ybar in a Heisenberg series context.
std::pair<Series, Series> type1_unit_generators(const SeriesContext& ctx, const Scalar& c, const Scalar& d);

/// Evaluates each reduced word of length <= L on the units (letter i ->
/// units[i], inverse letters -> series_invert), truncated to D, and decides
/// linear independence over the coefficient field.
FreenessReport group_algebra_independence(const std::vector<Series>& units, int max_length, int degree);

/// The evaluated images, in enumerate_reduced_words order.
std::vector<Series> evaluate_words(const std::vector<Series>& units, const std::vector<FreeWord>& words);

}  // namespace mns
