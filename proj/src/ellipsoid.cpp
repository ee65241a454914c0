#include "tqf/ellipsoid.hpp"

#include <algorithm>

namespace tqf {

EllipsoidSlicer::EllipsoidSlicer(const TernaryForm& form, Int bound) : form_(form), bound_(bound) {
  if (!is_positive_definite(form)) throw PreconditionError("form is not positive definite: " + to_string(form));
  if (bound < 0) throw PreconditionError("negative enumeration bound");
  const Wide a = form.a, b = form.b, c = form.c, d = form.d, e = form.e, f = form.f;
  A_ = 4 * a * b - f * f;
  B_ = 2 * a * d - e * f;
  C_ = 4 * a * c - e * e;
  disc_ = discriminant(form);
  // 4a*disc*z^2 <= A*4a*bound
  z_max_ = isqrt((A_ * bound) / disc_);
}

std::pair<Int, Int> EllipsoidSlicer::y_range(Int z) const {
  const Wide a = form_.a;
  Wide r = 4 * a * A_ * bound_ - 4 * a * disc_ * static_cast<Wide>(z) * z;
  if (r < 0) return {1, 0};
  Wide s = isqrt(r);
  Wide bz = B_ * z;
  return {ceil_div(-bz - s, A_), floor_div(-bz + s, A_)};
}

std::pair<Int, Int> EllipsoidSlicer::x_range(Int y, Int z) const {
  const Wide a = form_.a;
  Wide t = A_ * y * y + 2 * B_ * y * z + C_ * z * z;
  Wide r = 4 * a * bound_ - t;
  if (r < 0) return {1, 0};
  Wide s = isqrt(r);
  Wide l = static_cast<Wide>(form_.f) * y + static_cast<Wide>(form_.e) * z;
  return {ceil_div(-l - s, 2 * a), floor_div(-l + s, 2 * a)};
}

int EllipsoidSlicer::solve_x(Int n, Int y, Int z, Int out[2]) const {
  const Wide a = form_.a;
  Wide t = A_ * y * y + 2 * B_ * y * z + C_ * z * z;
  Wide r = 4 * a * n - t;
  Int s;
  if (!is_square(r, &s)) return 0;
  Wide l = static_cast<Wide>(form_.f) * y + static_cast<Wide>(form_.e) * z;
  int k = 0;
  Wide num = -l + s;
  if (num % (2 * a) == 0) out[k++] = narrow(num / (2 * a));
  if (s != 0) {
    num = -l - s;
    if (num % (2 * a) == 0) out[k++] = narrow(num / (2 * a));
  }
  return k;
}

std::vector<ValuedVector> short_vectors(const TernaryForm& form, Int bound) {
  std::vector<ValuedVector> out;
  for_each_vector(form, bound, [&](const Vec3& v, Int value) {
    if (value != 0) out.push_back({v, value});
  });
  std::sort(out.begin(), out.end(), [](const ValuedVector& l, const ValuedVector& r) {
    return std::tie(l.value, l.v) < std::tie(r.value, r.v);
  });
  return out;
}

}  // namespace tqf
