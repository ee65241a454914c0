#pragma once

// Brute-force oracles and random generators shared by the unit tests. The
// oracles deliberately avoid the library's enumeration code.

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <vector>

#include "tqf/form.hpp"

namespace test {

using tqf::Int;
using tqf::Mat3;
using tqf::TernaryForm;
using tqf::Vec3;

// Half-width of a cube containing the ellipsoid form <= bound: the largest
// x_i^2 on it is bound * adj(G)_ii / disc.
inline Int box_for(const TernaryForm& f, Int bound) {
  const Mat3 adj = tqf::gram(f).adjugate();
  const Int disc = tqf::discriminant(f);
  Int r = 0;
  for (int i = 0; i < 3; ++i) {
    Int k = 0;
    while ((k + 1) * (k + 1) * disc <= bound * adj(i, i)) ++k;
    r = std::max(r, k);
  }
  return r;
}

inline Int brute_rep_count(const TernaryForm& f, Int n) {
  const Int r = box_for(f, n);
  Int total = 0;
  for (Int x = -r; x <= r; ++x)
    for (Int y = -r; y <= r; ++y)
      for (Int z = -r; z <= r; ++z)
        if (tqf::evaluate(f, x, y, z) == n) ++total;
  return total;
}

inline std::vector<Vec3> brute_vectors_of_value(const TernaryForm& f, Int n) {
  const Int r = box_for(f, n);
  std::vector<Vec3> out;
  for (Int x = -r; x <= r; ++x)
    for (Int y = -r; y <= r; ++y)
      for (Int z = -r; z <= r; ++z)
        if (tqf::evaluate(f, x, y, z) == n) out.push_back({x, y, z});
  return out;
}

// Every integer U with U' G U = G, by trying all column triples of the
// right values.
inline std::size_t brute_automorph_count(const TernaryForm& f) {
  const auto c0 = brute_vectors_of_value(f, f.a);
  const auto c1 = brute_vectors_of_value(f, f.b);
  const auto c2 = brute_vectors_of_value(f, f.c);
  std::size_t count = 0;
  for (const auto& u : c0)
    for (const auto& v : c1)
      for (const auto& w : c2)
        if (tqf::transform(f, Mat3::from_columns(u, v, w)) == f) ++count;
  return count;
}

inline Int brute_count_mod(const TernaryForm& f, Int n, Int p, int t) {
  Int q = 1;
  for (int i = 0; i < t; ++i) q *= p;
  const Int target = ((n % q) + q) % q;
  Int total = 0;
  for (Int x = 0; x < q; ++x)
    for (Int y = 0; y < q; ++y)
      for (Int z = 0; z < q; ++z) {
        Int v = tqf::evaluate(f, x, y, z) % q;
        if (v < 0) v += q;
        if (v == target) ++total;
      }
  return total;
}

inline Int brute_s(Int n) {
  Int total = 0;
  for (Int x = -40; x <= 40; ++x)
    for (Int y = -40; y <= 40; ++y)
      for (Int z = -40; z <= 40; ++z)
        if (x * x + y * y + z * z == n) ++total;
  return total;
}

// Product of random elementary moves, sign flips and the y/z rotation.
inline Mat3 random_unimodular(std::mt19937_64& rng, int steps = 6) {
  Mat3 u = Mat3::identity();
  std::uniform_int_distribution<int> pick(0, 8), idx(1, 3);
  for (int s = 0; s < steps; ++s) {
    const int kind = pick(rng);
    if (kind == 0) {
      u = u * tqf::swap_yz_move();
    } else if (kind == 1) {
      Mat3 d = Mat3::identity();
      const int k = idx(rng) - 1;
      d(k, k) = -1;
      u = u * d;
    } else {
      int i = idx(rng), j = idx(rng);
      while (j == i) j = idx(rng);
      u = u * tqf::elementary(i, j);
    }
  }
  return u;
}

inline TernaryForm random_positive_form(std::mt19937_64& rng, Int diag = 9, Int cross = 4) {
  std::uniform_int_distribution<Int> dd(1, diag), cc(-cross, cross);
  while (true) {
    TernaryForm f{dd(rng), dd(rng), dd(rng), cc(rng), cc(rng), cc(rng)};
    if (tqf::is_positive_definite(f)) return f;
  }
}

}  // namespace test
