#pragma once

// Concrete bi-ordered groups in canonical form:
//
//   heis     upper unitriangular 3x3 integer matrices, lex order on (a, b, c)
//   bs:<r>   H x| <x> with x h x^-1 = r h, ordered by n then h
//   wreath   restricted wreath product Z wr Z, ordered by n then the sign of
//            the top differing lamp
//   z:<k>    Z^k with the lex order
//   free:<k> the free monoid on k letters (not a group; support of Magnus
//            series), shortlex order
//
// Each carries a weight that is additive on its positive monoid, which is
// what makes truncated series arithmetic exact.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mns/scalars.hpp"

namespace mns {

struct HeisenbergElement {
  std::int64_t a = 0;  // (1,2) entry
  std::int64_t b = 0;  // (2,3) entry
  std::int64_t c = 0;  // (1,3) entry
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

/// (h, n) stands for h * x^n; ratio is the action x h x^-1 = ratio * h.
struct SemidirectElement {
  Rational h;
  std::int64_t n = 0;
  Rational ratio{2};
  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

/// (f, n) with f a finitely supported lamp configuration; no zero values stored.
struct WreathElement {
  std::map<std::int64_t, std::int64_t> f;
  std::int64_t n = 0;
  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

struct AbelianElement {
  std::vector<std::int64_t> coords;
  friend bool operator==(const AbelianElement&, const AbelianElement&) = default;
};

struct FreeMonoidWord {
  std::vector<std::uint8_t> letters;
  int alphabet = 1;
  friend bool operator==(const FreeMonoidWord&, const FreeMonoidWord&) = default;
};

using Element =
    std::variant<HeisenbergElement, SemidirectElement, WreathElement, AbelianElement, FreeMonoidWord>;

/// Total order over all elements, usable as a container comparator. Elements
/// of the same group instance compare by that group's order.
struct ElementLess {
  bool operator()(const Element& x, const Element& y) const;
};

/// Identifies one group instance and knows how to parse and sample it.
class Group {
 public:
  enum class Kind : std::uint8_t { heisenberg, semidirect, wreath, abelian, free_monoid };

  static Group heisenberg() { return Group(Kind::heisenberg); }
  static Group semidirect(Rational ratio);
  static Group wreath() { return Group(Kind::wreath); }
  static Group abelian(int rank);
  static Group free_monoid(int alphabet);
  /// "heis", "bs12" (= "bs:2"), "bs:<r>", "wreath", "z:<k>", "free:<k>".
  static Group parse(std::string_view id);

  Kind kind() const { return kind_; }
  const Rational& ratio() const { return ratio_; }
  int rank() const { return rank_; }
  std::string id() const;

  Element identity() const;
  bool owns(const Element& g) const;
  /// Parses the canonical element string of this group.
  Element parse_element(std::string_view text) const;
  /// The weight-1 generators of the positive monoid (x, y for heis; tx, x
  /// with t = 1 for bs; a, t for wreath; unit vectors for z:k).
  std::vector<Element> designated_generators() const;
  /// Uniform-ish sample from a box of the given radius around the identity.
  Element random_element(std::mt19937_64& rng, int radius) const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  explicit Group(Kind kind) : kind_(kind) {}

  Kind kind_;
  Rational ratio_{0};
  int rank_ = 0;
};

Group group_of(const Element& g);

Element multiply(const Element& g, const Element& h);
Element inverse(const Element& g);
/// x^-1 y^-1 x y
Element commutator(const Element& x, const Element& y);
Element power(const Element& g, std::int64_t k);

/// The bi-invariant order of the group; throws on mixed instances.
std::strong_ordering group_compare(const Element& g, const Element& h);

/// True when g lies in the group's graded positive monoid:
///   heis a, b >= 0;  bs n >= 0;  wreath n >= 0 and all lamps >= 0;
///   z:k all coordinates >= 0;  free monoid always.
bool in_graded_monoid(const Element& g);

/// Additive weight on the graded monoid: a+b, n, sum(f)+n, sum of
/// coordinates, word length. Throws for elements outside the monoid.
std::int64_t weight(const Element& g);

std::string to_string(const Element& g);

/// A submonoid of a group's graded monoid that a series may be supported on.
/// The weight is always the restriction of the group's weight.
class Monoid {
 public:
  enum class Part : std::uint8_t { positive, heisenberg_center, semidirect_base, abelian_last_factor };

  static Monoid positive(Group g) { return Monoid(std::move(g), Part::positive); }
  static Monoid heisenberg_center() { return Monoid(Group::heisenberg(), Part::heisenberg_center); }
  static Monoid semidirect_base(const Rational& ratio) {
    return Monoid(Group::semidirect(ratio), Part::semidirect_base);
  }
  static Monoid abelian_last_factor(int rank) { return Monoid(Group::abelian(rank), Part::abelian_last_factor); }
  /// "<group id>" or "<group id>/center", "/base", "/last".
  static Monoid parse(std::string_view id);

  const Group& group() const { return group_; }
  Part part() const { return part_; }
  std::string id() const;
  bool contains(const Element& g) const;

  friend bool operator==(const Monoid&, const Monoid&) = default;

 private:
  Monoid(Group g, Part p) : group_(std::move(g)), part_(p) {}

  Group group_;
  Part part_;
};

using GeneratorWord = std::vector<std::size_t>;

/// Renders a generator word with letters x, y, z, u, v, w (or g<i> beyond that).
std::string word_to_string(const GeneratorWord& w);

using MonoidEnumeration = std::map<Element, std::vector<GeneratorWord>, ElementLess>;

/// Every product of at most max_length generators, keyed by canonical form,
/// with all words reaching each element in shortlex order. Generators must be
/// positive and lie in the graded monoid with positive weight.
MonoidEnumeration enumerate_monoid(const std::vector<Element>& generators, int max_length);

}  // namespace mns
