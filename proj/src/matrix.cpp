#include "tqf/matrix.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

namespace tqf {

Mat3 Mat3::identity() { return diagonal(1, 1, 1); }

Mat3 Mat3::diagonal(Int d0, Int d1, Int d2) {
  Mat3 r;
  r.m[0][0] = d0;
  r.m[1][1] = d1;
  r.m[2][2] = d2;
  return r;
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    r.m[i][0] = c0[i];
    r.m[i][1] = c1[i];
    r.m[i][2] = c2[i];
  }
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
  return r;
}

Int Mat3::determinant() const {
  Wide d = static_cast<Wide>(m[0][0]) * (static_cast<Wide>(m[1][1]) * m[2][2] - static_cast<Wide>(m[1][2]) * m[2][1]) -
           static_cast<Wide>(m[0][1]) * (static_cast<Wide>(m[1][0]) * m[2][2] - static_cast<Wide>(m[1][2]) * m[2][0]) +
           static_cast<Wide>(m[0][2]) * (static_cast<Wide>(m[1][0]) * m[2][1] - static_cast<Wide>(m[1][1]) * m[2][0]);
  return narrow(d);
}

Mat3 Mat3::adjugate() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // cofactor C_ji goes to position (i, j)
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      Wide v = static_cast<Wide>(m[r0][c0]) * m[r1][c1] - static_cast<Wide>(m[r0][c1]) * m[r1][c0];
      r.m[i][j] = narrow(v);
    }
  }
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Wide s = 0;
      for (int k = 0; k < 3; ++k) s += static_cast<Wide>(a.m[i][k]) * b.m[k][j];
      r.m[i][j] = narrow(s);
    }
  }
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) {
    Wide s = 0;
    for (int k = 0; k < 3; ++k) s += static_cast<Wide>(a.m[i][k]) * v[k];
    r[i] = narrow(s);
  }
  return r;
}

Mat3 operator-(const Mat3& a) { return scaled(a, -1); }

Mat3 scaled(const Mat3& a, Int k) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = checked_mul(a.m[i][j], k);
  return r;
}

Mat3 divided_exactly(const Mat3& a, Int k) {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (a.m[i][j] % k != 0) throw ConsistencyError("matrix entry not divisible by " + std::to_string(k));
      r.m[i][j] = a.m[i][j] / k;
    }
  }
  return r;
}

Mat3 elementary(int i, int j) {
  Mat3 r = Mat3::identity();
  r.m[i - 1][j - 1] = 1;
  return r;
}

Mat3 swap_yz_move() {
  Mat3 r;
  r.m[0][0] = 1;
  r.m[1][2] = -1;
  r.m[2][1] = 1;
  return r;
}

Mat3 unimodular_inverse(const Mat3& a) {
  Int d = a.determinant();
  if (d != 1 && d != -1) throw PreconditionError("matrix is not unimodular (determinant " + std::to_string(d) + ")");
  return scaled(a.adjugate(), d);
}

Mat3 complete_to_basis(const Vec3& v) {
  if (gcd(gcd(v[0], v[1]), v[2]) != 1) throw PreconditionError("vector is not primitive");
  // Row operations R with R v = e1; then R^{-1} has first column v.
  Mat3 r = Mat3::identity();
  Vec3 w = v;
  auto row_op = [&](int dst, int src, Int k) {  // row dst -= k * row src
    for (int c = 0; c < 3; ++c) r.m[dst][c] = checked_add(r.m[dst][c], -checked_mul(k, r.m[src][c]));
    w[dst] -= k * w[src];
  };
  auto row_swap = [&](int a, int b) {
    std::swap(r.m[a], r.m[b]);
    std::swap(w[a], w[b]);
  };
  // Euclid on (w0, w1), then on (w0, w2).
  for (int other : {1, 2}) {
    while (w[other] != 0) {
      Int q = w[0] / w[other];
      row_op(0, other, q);
      row_swap(0, other);
    }
  }
  if (w[0] == -1) {
    for (int c = 0; c < 3; ++c) r.m[0][c] = -r.m[0][c];
    w[0] = 1;
  }
  Mat3 inv = unimodular_inverse(r);
  return inv;
}

Mat3 hermite_normal_form(const Mat3& basis, const Vec3& extra) {
  return hermite_normal_form({basis.column(0), basis.column(1), basis.column(2), extra});
}

Mat3 hermite_normal_form(std::vector<Vec3> work) {
  Mat3 h;
  // Bottom-up: make the lattice upper triangular, pivot of row 2 first.
  std::array<Vec3, 3> out{};
  for (int row = 2; row >= 0; --row) {
    // gcd-combine entries in this row across all working columns.
    std::size_t piv = work.size();
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i][row] == 0) continue;
      if (piv == work.size()) {
        piv = i;
        continue;
      }
      Vec3& a = work[piv];
      Vec3& b = work[i];
      while (b[row] != 0) {
        Int q = a[row] / b[row];
        for (int k = 0; k < 3; ++k) a[k] -= q * b[k];
        std::swap(a, b);
      }
    }
    if (piv == work.size()) throw PreconditionError("generators do not span a full-rank lattice");
    Vec3 p = work[piv];
    if (p[row] < 0)
      for (auto& x : p) x = -x;
    out[row] = p;
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(piv));
  }
  h = Mat3::from_columns(out[0], out[1], out[2]);
  // Columns: out[r] has zero entries below row r. Reduce entries above pivots.
  for (int col = 1; col < 3; ++col) {
    for (int row = col - 1; row >= 0; --row) {
      Int piv = h.m[row][row];
      Int q = floor_div(h.m[row][col], piv);
      if (q == 0) continue;
      for (int k = 0; k < 3; ++k) h.m[k][col] -= q * h.m[k][row];
    }
  }
  return h;
}

std::string to_string(const Mat3& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? ";" : "") << a.m[i][0] << "," << a.m[i][1] << "," << a.m[i][2];
  }
  os << "]";
  return os.str();
}

}  // namespace tqf
