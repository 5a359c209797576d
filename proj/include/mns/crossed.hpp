#pragma once

// Operations on crossed-product systems: validity checking, diagonal change
// of basis, the quotient system (sigma~, tau~, n_ab) over a normal subgroup,
// the morphism-extension test and the augmentation map with good preimages.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mns/crossed_system.hpp"
#include "mns/series.hpp"

namespace mns {

// ------------------------------------------------------------------ validity

struct CrossedCheckReport {
  bool valid = true;
  std::size_t triples_checked = 0;
  /// Name of the first failed identity ("cocycle", "action", "normalization", ...).
  std::string violated;
  std::vector<Element> witness;  // the violating triple (or pair / single element)
};

/// Checks, on every triple of a small fixed panel and on sample_count random
/// triples,
///   tau(xy,z) tau(x,y)^sigma(z) = tau(x,yz) tau(y,z)
///   r^{sigma(x) sigma(y)} = tau(x,y)^-1 r^sigma(xy) tau(x,y)
/// together with tau(1,x) = tau(x,1) = 1 and sigma(1) = id.
CrossedCheckReport check_crossed_system(const CrossedSystem& system, const Group& group, std::size_t sample_count,
                                        std::uint64_t seed);
/// Uses the system's own group (heis for group-independent systems).
CrossedCheckReport check_crossed_system(const CrossedSystem& system, std::size_t sample_count, std::uint64_t seed);

/// The diagonal-change data x -> d_x, with d(1) = 1.
struct DiagonalMap {
  std::string name;
  std::function<Scalar(const Element&)> d;
};

/// The system for the basis xtilde = xbar d_x:
///   sigma'(x): r -> d_x^-1 r^sigma(x) d_x
///   tau'(x,y) = d_xy^-1 tau(x,y) d_x^sigma(y) d_y
CrossedSystemPtr diagonal_change(const CrossedSystemPtr& system, const DiagonalMap& map);

/// Rewrites sum xtilde a_x (coordinates in the changed basis) as sum xbar d_x a_x.
Series to_original_basis(const Series& f, const DiagonalMap& map, const SeriesContext& original);
/// Inverse of to_original_basis.
Series to_changed_basis(const Series& f, const DiagonalMap& map, const SeriesContext& changed);

// ----------------------------------------------------------------- quotients

/// A supported normal subgroup N of a built-in group, with G/N = Z^k.
struct NormalSubgroup {
  std::string id;
  Group group;
  Monoid monoid;    // N's part of the graded monoid
  Group quotient;   // Z^k
  std::function<Element(const Element&)> project;

  bool contains(const Element& g) const;

  static NormalSubgroup heisenberg_center();
  static NormalSubgroup semidirect_base(const Rational& ratio);
  /// {(0, ..., 0, b)} in Z^k, quotient Z^(k-1).
  static NormalSubgroup abelian_last_factor(int rank);
  /// "heis/center", "bs:<r>/base", "z:<k>/last"; anything else is unsupported.
  static NormalSubgroup lookup(const std::string& id);
};

/// Coset representatives alpha -> x_alpha.
struct Transversal {
  std::string name;
  std::function<Element(const Element&)> representative;

  /// (a,b) -> (a,b,0);  n -> (0,n);  (a_1..a_{k-1}) -> (a_1..a_{k-1},0).
  static Transversal standard(const NormalSubgroup& n);
};

class QuotientSystem {
 public:
  /// Throws PreconditionError if the transversal is not one (a representative
  /// lands in the wrong coset, or x_1 != 1) on a panel of cosets.
  QuotientSystem(CrossedSystemPtr base, NormalSubgroup subgroup, Transversal transversal);

  const CrossedSystem& base() const { return *base_; }
  const CrossedSystemPtr& base_ptr() const { return base_; }
  const NormalSubgroup& subgroup() const { return subgroup_; }
  const Transversal& transversal() const { return transversal_; }
  std::string id() const;

  Element project(const Element& g) const { return subgroup_.project(g); }
  Element representative(const Element& coset) const { return transversal_.representative(coset); }
  /// n_ab in N with x_ab n_ab = x_a x_b.
  Element correction(const Element& alpha, const Element& beta) const;

  SeriesContext group_context(int degree) const;
  SeriesContext subgroup_context(int degree) const;
  /// Scalar series over G/N with the trivial system.
  SeriesContext quotient_context(int degree) const;

  /// tau~(a,b) = nbar_ab tau(x_ab, n_ab)^-1 tau(x_a, x_b), an N-series.
  Series tau_tilde(const Element& alpha, const Element& beta, int degree) const;
  /// y -> xbar_a^-1 y xbar_a on N-series.
  Series sigma_tilde(const Element& alpha, const Series& y) const;

 private:
  CrossedSystemPtr base_;
  NormalSubgroup subgroup_;
  Transversal transversal_;
};

using QuotientSystemPtr = std::shared_ptr<const QuotientSystem>;

QuotientSystemPtr quotient_system(const CrossedSystemPtr& base, const NormalSubgroup& subgroup,
                                  const Transversal& transversal);

// ---------------------------------------------------------------- morphisms

struct MorphismReport {
  bool action_condition = true;    // phi(r^sigma1(x)) = phi(r)^sigma2(eta(x))
  bool twisting_condition = true;  // phi(tau1(x,y)) = tau2(eta(x), eta(y))
  bool multiplicative = true;      // induced Phi(fg) = Phi(f) Phi(g) on sampled pairs
  std::size_t samples = 0;
  std::string first_violation;

  bool holds() const { return action_condition && twisting_condition && multiplicative; }
};

struct ScalarMorphism {
  std::string name;
  std::function<Scalar(const Scalar&)> phi;
};

struct GroupMorphism {
  std::string name;
  std::function<Element(const Element&)> eta;
};

/// Phi(sum xbar a_x) = sum eta(x)bar phi(a_x).
Series induced_map(const Series& f, const ScalarMorphism& phi, const GroupMorphism& eta, const SeriesContext& target);

/// Samples both extension conditions and, only when they hold, checks that
/// the induced map is multiplicative on sampled series pairs.
MorphismReport check_morphism_extension(const ScalarMorphism& phi, const GroupMorphism& eta,
                                        const SeriesContext& source, const SeriesContext& target,
                                        std::size_t samples, std::uint64_t seed);

/// The augmentation K[N] -> K extended over G/N: Phi = epsilon o regroup.
/// Requires N to carry weight 0 so that Phi respects truncation.
Series augmentation_image(const Series& f, const QuotientSystemPtr& q);

/// The extension conditions for the augmentation over a quotient system
/// (epsilon(s^sigma~(a)) = epsilon(s), epsilon(tau~(a,b)) = 1) plus sampled
/// multiplicativity of Phi.
MorphismReport check_morphism_extension(const QuotientSystemPtr& q, int degree, std::size_t samples,
                                        std::uint64_t seed);

/// Ahat = sum xbar_alpha a_alpha for A = sum alpha a_alpha over G/N.
Series good_preimage(const Series& a, const QuotientSystem& q);

// ----------------------------------------------------------------- sampling

Scalar random_scalar(const Field& field, std::mt19937_64& rng);
/// An element of the monoid with weight <= max_weight.
Element random_monoid_element(const Monoid& monoid, std::mt19937_64& rng, int max_weight);
/// Up to max_terms random terms; with unit_identity the identity coefficient
/// is a nonzero scalar and the weight-0 part is exactly that scalar.
Series random_series(const SeriesContext& ctx, std::mt19937_64& rng, int max_terms, bool unit_identity);

}  // namespace mns
