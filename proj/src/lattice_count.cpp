#include "tqf/lattice_count.hpp"

#include <algorithm>

#include <omp.h>

#include "tqf/ellipsoid.hpp"

namespace tqf {

namespace {
const TernaryForm kThreeSquares{1, 1, 1, 0, 0, 0};
}

Int ThetaVector::at(Int n) const {
  if (n < 0) return 0;
  if (n > bound) throw PreconditionError("theta coefficient " + std::to_string(n) + " beyond bound " + std::to_string(bound));
  return counts[static_cast<std::size_t>(n)];
}

Int rep_count(const TernaryForm& form, Int n) {
  if (!is_positive_definite(form)) throw PreconditionError("rep_count: form is not positive definite: " + to_string(form));
  if (n < 0) return 0;
  if (n == 0) return 1;
  const EllipsoidSlicer slicer(form, n);
  const Int zmax = slicer.z_max();
  Int total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (Int z = -zmax; z <= zmax; ++z) {
    auto [y0, y1] = slicer.y_range(z);
    Int xs[2];
    for (Int y = y0; y <= y1; ++y) total += slicer.solve_x(n, y, z, xs);
  }
  return total;
}

ThetaVector theta(const TernaryForm& form, Int bound) {
  if (!is_positive_definite(form)) throw PreconditionError("theta: form is not positive definite: " + to_string(form));
  if (bound < 0) throw PreconditionError("theta: negative bound");
  const EllipsoidSlicer slicer(form, bound);
  const Int zmax = slicer.z_max();
  const auto size = static_cast<std::size_t>(bound) + 1;
  std::vector<Int> counts(size, 0);
#pragma omp parallel
  {
    std::vector<Int> local(size, 0);
#pragma omp for schedule(dynamic) nowait
    for (Int z = -zmax; z <= zmax; ++z) {
      auto [y0, y1] = slicer.y_range(z);
      for (Int y = y0; y <= y1; ++y) {
        auto [x0, x1] = slicer.x_range(y, z);
        for (Int x = x0; x <= x1; ++x) {
          Int v = evaluate(form, x, y, z);
          if (v <= bound) ++local[static_cast<std::size_t>(v)];
        }
      }
    }
#pragma omp critical
    for (std::size_t i = 0; i < size; ++i) counts[i] += local[i];
  }
  return {form, bound, std::move(counts)};
}

Int s(Int n) { return rep_count(kThreeSquares, n); }

std::vector<Int> s_values(std::span<const Int> ns) {
  std::vector<Int> out(ns.size(), 0);
  if (ns.empty()) return out;
  const Int top = std::max<Int>(0, *std::max_element(ns.begin(), ns.end()));
  const Int root = isqrt(top);
  std::vector<Int> r2(static_cast<std::size_t>(top) + 1, 0);
  for (Int x = -root; x <= root; ++x) {
    const Int rest = top - x * x;
    const Int ymax = isqrt(rest);
    for (Int y = -ymax; y <= ymax; ++y) ++r2[static_cast<std::size_t>(x * x + y * y)];
  }
  const auto count = static_cast<std::ptrdiff_t>(ns.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Int n = ns[static_cast<std::size_t>(i)];
    if (n < 0) continue;
    Int total = 0;
    const Int zmax = isqrt(n);
    for (Int z = -zmax; z <= zmax; ++z) total += r2[static_cast<std::size_t>(n - z * z)];
    out[static_cast<std::size_t>(i)] = total;
  }
  return out;
}

}  // namespace tqf
