#pragma once

// A crossed-product structure (sigma, tau) of a group over a scalar field,
// in the right-action convention
//
//   xbar ybar = (xy)bar tau(x, y),      r xbar = xbar r^sigma(x).
//
// Built-in systems are addressed by string id through crossed_registry().

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mns/groups.hpp"
#include "mns/scalars.hpp"

namespace mns {

class CrossedSystem {
 public:
  using Action = std::function<Automorphism(const Element&)>;
  using Twisting = std::function<Scalar(const Element&, const Element&)>;

  /// sigma = id, tau = 1 over the given field; applies to every group.
  static std::shared_ptr<const CrossedSystem> trivial(const Field& field);

  /// Null sigma and tau make the trivial system.
  CrossedSystem(std::string id, Field field, std::optional<Group> group, Action sigma, Twisting tau);

  const std::string& id() const { return id_; }
  const Field& field() const { return field_; }
  /// nullopt for systems defined on every group (the trivial ones).
  const std::optional<Group>& group() const { return group_; }
  bool is_trivial() const { return trivial_; }

  Automorphism sigma(const Element& x) const { return trivial_ ? Automorphism::identity : sigma_(x); }
  Scalar tau(const Element& x, const Element& y) const { return trivial_ ? field_.one() : tau_(x, y); }

  /// True when the system may act on elements of g.
  bool applies_to(const Group& g) const { return !group_ || *group_ == g; }

 private:
  std::string id_;
  Field field_;
  std::optional<Group> group_;
  Action sigma_;
  Twisting tau_;
  bool trivial_ = false;
};

using CrossedSystemPtr = std::shared_ptr<const CrossedSystem>;

/// Resolves a built-in id:
///   trivial, trivial:<field>      sigma = id, tau = 1 (field defaults to Q)
///   z2-sign-twist                 Z^2 over Q, tau((a,b),(c,d)) = (-1)^(bc)
///   quadratic-conj-Z              Z over Q(sqrt 2), sigma(n) = conj^n
///   quadratic-conj-z2-twist       Z^2 over Q(sqrt 2), sigma(a,b) = conj^a, tau as z2-sign-twist
///   quadratic-unit-twist-Z        Z over Q(sqrt 2), tau(a,b) = (1+sqrt 2)^(ab)
CrossedSystemPtr crossed_registry(const std::string& id);
std::vector<std::string> crossed_registry_ids();

}  // namespace mns
