#pragma once

#include <vector>

#include "tqf/form.hpp"

/// Serial brute-force kernels. Slow, but they share no code with the fast
/// paths, so tests and benchmarks compare against them.
namespace tqf::reference {

/// Half-width of a box containing every v with form(v) <= bound, per axis.
Vec3 box_radius(const TernaryForm& form, Int bound);

Int rep_count(const TernaryForm& form, Int n);
std::vector<Int> theta(const TernaryForm& form, Int bound);

/// Triple loop over (Z/p^t)^3.
Int count_solutions_mod(const TernaryForm& form, Int n, Int p, int t);

}  // namespace tqf::reference
