#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "tqf/integer.hpp"

namespace tqf {

/// 3-vector of integers, used for lattice points and matrix columns.
using Vec3 = std::array<Int, 3>;

/// Dense 3x3 integer matrix, row-major.
struct Mat3 {
  std::array<std::array<Int, 3>, 3> m{};

  static Mat3 identity();
  static Mat3 diagonal(Int d0, Int d1, Int d2);
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

  Int& operator()(int r, int c) { return m[r][c]; }
  Int operator()(int r, int c) const { return m[r][c]; }

  Vec3 column(int c) const { return {m[0][c], m[1][c], m[2][c]}; }

  Mat3 transposed() const;
  Int determinant() const;
  /// Adjugate; satisfies A * adj(A) = det(A) * I.
  Mat3 adjugate() const;

  auto operator<=>(const Mat3&) const = default;
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 operator-(const Mat3& a);
Mat3 scaled(const Mat3& a, Int k);
/// Exact division of every entry by k; throws ConsistencyError if not exact.
Mat3 divided_exactly(const Mat3& a, Int k);

/// Elementary move of the shape-normalization procedure: identity with an
/// extra 1 in position (i, j), 1-based as in the usual M_ij notation.
Mat3 elementary(int i, int j);

/// The variable permutation (x, y, z) -> (x, -z, y) used by Shape 1.
Mat3 swap_yz_move();

/// A unimodular matrix whose first column is the given primitive vector.
Mat3 complete_to_basis(const Vec3& v);

/// Inverse of a determinant +-1 matrix.
Mat3 unimodular_inverse(const Mat3& a);

/// Column Hermite normal form of the lattice generated by the columns of
/// `basis` together with `extra`: upper triangular, positive pivots, entries
/// right of each pivot reduced into [0, pivot).
Mat3 hermite_normal_form(const Mat3& basis, const Vec3& extra);
/// Same, for an arbitrary generating set.
Mat3 hermite_normal_form(std::vector<Vec3> generators);

std::string to_string(const Mat3& a);

}  // namespace tqf
