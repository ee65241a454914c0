#pragma once

#include "tqf/form.hpp"

namespace tqf {

/// Lambda_m(form) = { x : G x = 0 and form(x) = 0 (mod m) }, with G the Gram
/// matrix, and the rescaled form g(y) = form(M y) / m on it.
struct WatsonLattice {
  TernaryForm form;
  Int modulus = 1;
  Mat3 basis;     // M, column Hermite normal form
  Mat3 cofactor;  // N = m M^-1, so M N = N M = m I
  Int index = 1;  // det M
  TernaryForm image;  // raw g, before any reduction
};

/// Throws PreconditionError for m < 1, ConsistencyError if N or the
/// rescaled Gram matrix fails to be integral.
WatsonLattice lambda_lattice(const TernaryForm& form, Int m);

/// The rescaled form; canonically reduced when the input is positive definite.
TernaryForm lambda_m(const TernaryForm& form, Int m);

/// <a,b,c,d,e,f> -> <a,4b,4c,4d,2e,2f> on a Shape 1 representative, then
/// reduced. Odd discriminant required. Indefinite inputs already in Shape 1
/// are mapped literally.
TernaryForm phi(const TernaryForm& form);

/// Quarter of D H D, D = diag(2,1,1), on a Shape 2 representative with Gram
/// H; reduced when positive definite.
TernaryForm phi_inverse(const TernaryForm& form);

/// s = N r M / m for an automorph r of lattice.form. s is an automorph of
/// lattice.image. Throws ConsistencyError when s is not integral.
UnimodularMap transport_automorph(const WatsonLattice& lattice, const UnimodularMap& r);

}  // namespace tqf
