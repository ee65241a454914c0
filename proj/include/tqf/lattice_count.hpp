#pragma once

#include <span>
#include <vector>

#include "tqf/form.hpp"

namespace tqf {

/// counts[n] = number of integer triples with form(x, y, z) = n, 0 <= n <= bound.
struct ThetaVector {
  TernaryForm form;
  Int bound = 0;
  std::vector<Int> counts;

  /// Zero outside [0, bound] for n < 0; throws for n > bound.
  Int at(Int n) const;
};

/// R_form(n); zero for n < 0.
Int rep_count(const TernaryForm& form, Int n);

/// Single ellipsoid sweep, parallel over z-slabs; identical output for any
/// thread count.
ThetaVector theta(const TernaryForm& form, Int bound);

/// Number of representations of n as a sum of three squares.
Int s(Int n);

/// s(n) for many n at once, through a table of two-square counts up to
/// max(ns).
std::vector<Int> s_values(std::span<const Int> ns);

}  // namespace tqf
