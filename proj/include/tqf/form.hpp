#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>

#include "tqf/integer.hpp"
#include "tqf/matrix.hpp"

namespace tqf {

/// The ternary form a x^2 + b y^2 + c z^2 + d yz + e zx + f xy, written
/// <a,b,c,d,e,f>. Its Gram matrix is [[2a,f,e],[f,2b,d],[e,d,2c]].
struct TernaryForm {
  Int a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

  std::array<Int, 6> coeffs() const { return {a, b, c, d, e, f}; }
  static TernaryForm from_coeffs(const std::array<Int, 6>& k) { return {k[0], k[1], k[2], k[3], k[4], k[5]}; }

  auto operator<=>(const TernaryForm&) const = default;
};

/// A 3x3 integer matrix of determinant +-1.
class UnimodularMap {
 public:
  UnimodularMap() : m_(Mat3::identity()) {}
  /// Throws PreconditionError unless det(m) = +-1.
  explicit UnimodularMap(const Mat3& m);

  static UnimodularMap identity() { return {}; }

  const Mat3& matrix() const { return m_; }
  Int determinant() const { return m_.determinant(); }
  UnimodularMap inverse() const;

  friend UnimodularMap operator*(const UnimodularMap& l, const UnimodularMap& r) {
    return UnimodularMap(l.m_ * r.m_);
  }
  auto operator<=>(const UnimodularMap&) const = default;

 private:
  Mat3 m_;
};

Int evaluate(const TernaryForm& form, Int x, Int y, Int z);
inline Int evaluate(const TernaryForm& form, const Vec3& v) { return evaluate(form, v[0], v[1], v[2]); }

/// 4abc + def - ad^2 - be^2 - cf^2, half the Gram determinant.
Int discriminant(const TernaryForm& form);

Mat3 gram(const TernaryForm& form);
/// Inverse of gram(); requires a symmetric matrix with even diagonal.
TernaryForm form_from_gram(const Mat3& g);

/// u' G v for the Gram matrix G of the form.
Int bilinear(const TernaryForm& form, const Vec3& u, const Vec3& v);

/// Form with Gram U' G U, for any integer matrix U.
TernaryForm transform(const TernaryForm& form, const Mat3& u);
TernaryForm apply_map(const TernaryForm& form, const UnimodularMap& u);

bool is_positive_definite(const TernaryForm& form);
Int content(const TernaryForm& form);
bool is_primitive(const TernaryForm& form);

/// A form together with the map that produced it from the input.
struct MappedForm {
  TernaryForm form;
  UnimodularMap map;  // apply_map(input, map) == form
};

/// Canonical representative of the integral equivalence class.
///
/// The class determines the successive minima m1 <= m2 <= m3; every basis
/// (v1, v2, v3) with form(vi) = mi yields a Minkowski-reduced sextuple
/// (0 < a <= b <= c, |d| <= b, |e| <= a, |f| <= a). The minimum of those
/// sextuples under (a, b, c, |d|, |e|, |f|, -d, -e, -f) is the canonical form.
MappedForm reduce(const TernaryForm& form);

/// a odd, a = -disc (mod 4), d odd, e and f even.
bool is_convenient_shape_1(const TernaryForm& form);
/// a odd, a = -disc/16 (mod 4), b, c, d, e, f divisible by 4.
bool is_convenient_shape_2(const TernaryForm& form);

/// Equivalent form in Convenient Shape 1 (odd discriminant, primitive input).
MappedForm to_convenient_shape_1(const TernaryForm& form);
/// Equivalent form in Convenient Shape 2 (needs discriminant 16*odd and even
/// d, e, f). Throws PreconditionError naming the violated condition; when no
/// Shape 2 basis exists the message names a represented n = 1, 2 (mod 4).
MappedForm to_convenient_shape_2(const TernaryForm& form);

/// Smallest n <= bound with n = 1 or 2 (mod 4) represented by the form, or 0.
Int first_value_1_2_mod_4(const TernaryForm& form, Int bound);

/// "a,b,c,d,e,f"
std::string to_string(const TernaryForm& form);
/// Parses "a,b,c,d,e,f"; throws PreconditionError naming the bad field.
TernaryForm parse_form(std::string_view text);

}  // namespace tqf
