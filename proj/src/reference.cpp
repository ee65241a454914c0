#include "tqf/reference.hpp"

namespace tqf::reference {

Vec3 box_radius(const TernaryForm& form, Int bound) {
  if (!is_positive_definite(form)) throw PreconditionError("box_radius: form is not positive definite");
  // max x_i^2 on form(v) <= bound is bound * adj(G)_ii / disc
  const Mat3 adj = gram(form).adjugate();
  const Int disc = discriminant(form);
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = isqrt(static_cast<Wide>(bound) * adj(i, i) / disc) + 1;
  return r;
}

Int rep_count(const TernaryForm& form, Int n) {
  if (n < 0) return 0;
  const Vec3 r = box_radius(form, n);
  Int total = 0;
  for (Int x = -r[0]; x <= r[0]; ++x)
    for (Int y = -r[1]; y <= r[1]; ++y)
      for (Int z = -r[2]; z <= r[2]; ++z)
        if (evaluate(form, x, y, z) == n) ++total;
  return total;
}

std::vector<Int> theta(const TernaryForm& form, Int bound) {
  std::vector<Int> out(static_cast<std::size_t>(bound) + 1, 0);
  const Vec3 r = box_radius(form, bound);
  for (Int x = -r[0]; x <= r[0]; ++x)
    for (Int y = -r[1]; y <= r[1]; ++y)
      for (Int z = -r[2]; z <= r[2]; ++z) {
        const Int v = evaluate(form, x, y, z);
        if (v <= bound) ++out[static_cast<std::size_t>(v)];
      }
  return out;
}

Int count_solutions_mod(const TernaryForm& form, Int n, Int p, int t) {
  const Int q = ipow(p, t);
  const Int target = mod(n, q);
  Int total = 0;
  for (Int x = 0; x < q; ++x)
    for (Int y = 0; y < q; ++y)
      for (Int z = 0; z < q; ++z)
        if (mod(evaluate(form, x, y, z), q) == target) ++total;
  return total;
}

}  // namespace tqf::reference
