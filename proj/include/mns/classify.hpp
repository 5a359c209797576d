#pragma once

// Order-type classification of the built-in groups. The witnesses are
// table-driven and re-verified by sampling:
//   type 1  every convex jump is central
//   type 2  all convex subgroups normal, some jump non-central
//   type 3  some convex subgroup is not normal

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mns/groups.hpp"

namespace mns {

/// A convex subgroup of a built-in group, given by a membership predicate.
struct ConvexSubgroup {
  std::string tag;
  std::function<bool(const Element&)> contains;
};

struct ConvexJumpDescriptor {
  std::string group_id;
  std::string lower;  // N_x
  std::string upper;  // H_x
  bool central = false;
  std::optional<Rational> action_ratio;  // how the conjugator scales H/N, when non-central
};

struct OrderTypeReport {
  int type = 0;
  std::string group_id;
  std::vector<ConvexJumpDescriptor> jumps;
  /// Type 3: the convex subgroup C and the conjugator b with b C b^-1 strictly inside C.
  std::string convex_subgroup;
  std::string shrunk_subgroup;
  std::optional<Element> conjugator;
  /// Sampled re-verification of every witness property.
  bool witness_verified = false;
  std::size_t samples_checked = 0;
  std::vector<std::string> failures;
};

/// The chain of convex subgroups of a built-in group, from {1} to G.
std::vector<ConvexSubgroup> convex_chain(const Group& group);

/// B_k = {(f, 0) : supp f within (-inf, k]} in Z wr Z.
ConvexSubgroup wreath_lamp_subgroup(std::int64_t k);

OrderTypeReport classify_order_type(const Group& group, std::uint64_t seed = 1, std::size_t samples = 200);

}  // namespace mns
