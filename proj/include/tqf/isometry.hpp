#pragma once

#include <optional>
#include <vector>

#include "tqf/form.hpp"

namespace tqf {

/// The full integral automorph group of a positive form (both determinants,
/// so -I is always present and the order is even).
struct AutomorphGroup {
  TernaryForm form;
  std::vector<UnimodularMap> elements;  // sorted

  std::size_t order() const { return elements.size(); }
  bool contains(const UnimodularMap& u) const;
};

/// All integer matrices U with transform(source, U) == target, found by
/// backtracking over columns of the right values. Both forms must be
/// positive definite with equal discriminant. Stops after the first match
/// when first_only is set.
std::vector<Mat3> isometries(const TernaryForm& source, const TernaryForm& target, bool first_only);

/// Witness u with apply_map(g, u) == h, or nullopt if g and h are not
/// integrally equivalent.
std::optional<UnimodularMap> equivalent(const TernaryForm& g, const TernaryForm& h);

AutomorphGroup automorphs(const TernaryForm& form);

}  // namespace tqf
