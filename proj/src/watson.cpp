#include "tqf/watson.hpp"

#include <vector>

namespace tqf {

WatsonLattice lambda_lattice(const TernaryForm& form, Int m) {
  if (m < 1) throw PreconditionError("lambda_m needs m >= 1, got " + std::to_string(m));
  const Mat3 g = gram(form);
  std::vector<Vec3> gens{{m, 0, 0}, {0, m, 0}, {0, 0, m}};
  for (Int x = 0; x < m; ++x)
    for (Int y = 0; y < m; ++y)
      for (Int z = 0; z < m; ++z) {
        const Vec3 v{x, y, z};
        const Vec3 gv = g * v;
        if (mod(gv[0], m) || mod(gv[1], m) || mod(gv[2], m)) continue;
        if (mod(evaluate(form, v), m)) continue;
        gens.push_back(v);
      }
  WatsonLattice out;
  out.form = form;
  out.modulus = m;
  out.basis = hermite_normal_form(std::move(gens));
  out.index = out.basis.determinant();
  out.cofactor = divided_exactly(scaled(out.basis.adjugate(), m), out.index);
  out.image = form_from_gram(divided_exactly(out.basis.transposed() * g * out.basis, m));
  return out;
}

TernaryForm lambda_m(const TernaryForm& form, Int m) {
  TernaryForm raw = lambda_lattice(form, m).image;
  return is_positive_definite(raw) ? reduce(raw).form : raw;
}

TernaryForm phi(const TernaryForm& form) {
  if (discriminant(form) % 2 == 0) throw PreconditionError("phi needs an odd discriminant: " + to_string(form));
  const TernaryForm s = is_convenient_shape_1(form) ? form : to_convenient_shape_1(form).form;
  const TernaryForm raw{s.a, 4 * s.b, 4 * s.c, 4 * s.d, 2 * s.e, 2 * s.f};
  return is_positive_definite(raw) ? reduce(raw).form : raw;
}

TernaryForm phi_inverse(const TernaryForm& form) {
  const TernaryForm s = is_convenient_shape_2(form) ? form : to_convenient_shape_2(form).form;
  const TernaryForm raw{s.a, s.b / 4, s.c / 4, s.d / 4, s.e / 2, s.f / 2};
  return is_positive_definite(raw) ? reduce(raw).form : raw;
}

UnimodularMap transport_automorph(const WatsonLattice& lattice, const UnimodularMap& r) {
  if (apply_map(lattice.form, r) != lattice.form)
    throw PreconditionError("not an automorph of " + to_string(lattice.form) + ": " + to_string(r.matrix()));
  const Mat3 s = divided_exactly(lattice.cofactor * r.matrix() * lattice.basis, lattice.modulus);
  UnimodularMap out(s);
  if (apply_map(lattice.image, out) != lattice.image)
    throw ConsistencyError("transported map is not an automorph of " + to_string(lattice.image));
  return out;
}

}  // namespace tqf
