#pragma once

#include <utility>
#include <vector>

#include "tqf/form.hpp"

namespace tqf {

/// Exact integer bounds for lattice points of a positive form inside
/// {form <= bound}. Completing squares twice gives
///   4a*Q = (2ax + fy + ez)^2 + T(y, z),  T = A y^2 + 2B yz + C z^2,
///   A*T  = (Ay + Bz)^2 + 4a*disc*z^2,
/// so every coordinate range is an integer square-root computation.
class EllipsoidSlicer {
 public:
  EllipsoidSlicer(const TernaryForm& form, Int bound);

  Int z_max() const { return z_max_; }
  /// Inclusive y range for fixed z; empty when first > second.
  std::pair<Int, Int> y_range(Int z) const;
  /// Inclusive x range for fixed (y, z).
  std::pair<Int, Int> x_range(Int y, Int z) const;
  /// The x values (0, 1 or 2 of them) with form(x, y, z) == n exactly.
  int solve_x(Int n, Int y, Int z, Int out[2]) const;

  const TernaryForm& form() const { return form_; }
  Int bound() const { return bound_; }

 private:
  TernaryForm form_;
  Int bound_;
  Wide A_, B_, C_, disc_;
  Int z_max_;
};

/// Calls fn(v, value) for every v with form(v) <= bound, in a fixed order.
template <class Fn>
void for_each_vector(const TernaryForm& form, Int bound, Fn&& fn) {
  if (bound < 0) return;
  EllipsoidSlicer s(form, bound);
  for (Int z = -s.z_max(); z <= s.z_max(); ++z) {
    auto [y0, y1] = s.y_range(z);
    for (Int y = y0; y <= y1; ++y) {
      auto [x0, x1] = s.x_range(y, z);
      for (Int x = x0; x <= x1; ++x) {
        Int v = evaluate(form, x, y, z);
        if (v <= bound) fn(Vec3{x, y, z}, v);
      }
    }
  }
}

struct ValuedVector {
  Vec3 v;
  Int value;
};

/// All nonzero vectors with form(v) <= bound, sorted by (value, v).
std::vector<ValuedVector> short_vectors(const TernaryForm& form, Int bound);

}  // namespace tqf
