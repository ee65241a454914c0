#include "tqf/form.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <optional>
#include <tuple>
#include <vector>

#include "tqf/ellipsoid.hpp"

namespace tqf {

UnimodularMap::UnimodularMap(const Mat3& m) : m_(m) {
  Int d = m.determinant();
  if (d != 1 && d != -1) {
    throw PreconditionError("matrix " + tqf::to_string(m) + " is not unimodular (determinant " + std::to_string(d) + ")");
  }
}

UnimodularMap UnimodularMap::inverse() const { return UnimodularMap(unimodular_inverse(m_)); }

Int evaluate(const TernaryForm& q, Int x, Int y, Int z) {
  Wide v = static_cast<Wide>(q.a) * x * x + static_cast<Wide>(q.b) * y * y + static_cast<Wide>(q.c) * z * z +
           static_cast<Wide>(q.d) * y * z + static_cast<Wide>(q.e) * z * x + static_cast<Wide>(q.f) * x * y;
  return narrow(v);
}

Int discriminant(const TernaryForm& q) {
  const Wide a = q.a, b = q.b, c = q.c, d = q.d, e = q.e, f = q.f;
  return narrow(4 * a * b * c + d * e * f - a * d * d - b * e * e - c * f * f);
}

Mat3 gram(const TernaryForm& q) {
  Mat3 g;
  g.m = {{{checked_mul(2, q.a), q.f, q.e}, {q.f, checked_mul(2, q.b), q.d}, {q.e, q.d, checked_mul(2, q.c)}}};
  return g;
}

TernaryForm form_from_gram(const Mat3& g) {
  if (g(0, 1) != g(1, 0) || g(0, 2) != g(2, 0) || g(1, 2) != g(2, 1)) {
    throw PreconditionError("Gram matrix is not symmetric: " + to_string(g));
  }
  if (g(0, 0) % 2 != 0 || g(1, 1) % 2 != 0 || g(2, 2) % 2 != 0) {
    throw PreconditionError("Gram matrix has an odd diagonal entry: " + to_string(g));
  }
  return {g(0, 0) / 2, g(1, 1) / 2, g(2, 2) / 2, g(1, 2), g(0, 2), g(0, 1)};
}

Int bilinear(const TernaryForm& form, const Vec3& u, const Vec3& v) {
  Mat3 g = gram(form);
  Wide s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += static_cast<Wide>(u[i]) * g(i, j) * v[j];
  return narrow(s);
}

TernaryForm transform(const TernaryForm& form, const Mat3& u) {
  Vec3 c0 = u.column(0), c1 = u.column(1), c2 = u.column(2);
  return {evaluate(form, c0), evaluate(form, c1), evaluate(form, c2),
          bilinear(form, c1, c2), bilinear(form, c0, c2), bilinear(form, c0, c1)};
}

TernaryForm apply_map(const TernaryForm& form, const UnimodularMap& u) { return transform(form, u.matrix()); }

bool is_positive_definite(const TernaryForm& q) {
  if (q.a <= 0) return false;
  Wide minor2 = 4 * static_cast<Wide>(q.a) * q.b - static_cast<Wide>(q.f) * q.f;
  return minor2 > 0 && discriminant(q) > 0;
}

Int content(const TernaryForm& q) {
  Int g = 0;
  for (Int k : q.coeffs()) g = gcd(g, k);
  return g;
}

bool is_primitive(const TernaryForm& q) { return content(q) == 1; }

namespace {

struct Reducer {
  TernaryForm form;
  Mat3 u = Mat3::identity();

  void apply(const Mat3& e) {
    form = transform(form, e);
    u = u * e;
  }

  Int norm(int i) const { return i == 0 ? form.a : (i == 1 ? form.b : form.c); }
  // Gram entry between basis vectors i < j.
  Int off(int i, int j) const {
    if (i == 0 && j == 1) return form.f;
    if (i == 0 && j == 2) return form.e;
    return form.d;
  }

  bool sort_step() {
    for (int i = 0; i < 2; ++i) {
      if (norm(i) > norm(i + 1)) {
        Mat3 p;
        for (int k = 0; k < 3; ++k) p.m[k][k] = 1;
        p.m[i][i] = p.m[i + 1][i + 1] = 0;
        p.m[i][i + 1] = p.m[i + 1][i] = 1;
        apply(p);
        return true;
      }
    }
    return false;
  }

  bool size_step() {
    for (int j = 1; j < 3; ++j) {
      for (int i = 0; i < j; ++i) {
        Wide gii = 2 * static_cast<Wide>(norm(i));
        Wide gij = off(i, j);
        Int k = floor_div(2 * gij + gii, 2 * gii);
        if (k == 0) continue;
        Wide next = 2 * static_cast<Wide>(norm(j)) - 2 * k * gij + static_cast<Wide>(k) * k * gii;
        if (next >= 2 * static_cast<Wide>(norm(j))) continue;
        Mat3 e = Mat3::identity();
        e.m[i][j] = -k;
        apply(e);
        return true;
      }
    }
    return false;
  }

  bool corner_step() {
    for (Int s1 : {1, -1}) {
      for (Int s2 : {1, -1}) {
        Vec3 v{s1, s2, 1};
        if (evaluate(form, v) < form.c) {
          Mat3 e = Mat3::identity();
          e.m[0][2] = s1;
          e.m[1][2] = s2;
          apply(e);
          return true;
        }
      }
    }
    return false;
  }

  void run() {
    while (sort_step() || size_step() || corner_step()) {
    }
  }
};

using ReductionKey = std::tuple<Int, Int, Int, Int, Int, Int, Int, Int, Int>;

ReductionKey reduction_key(const TernaryForm& q) {
  auto abs = [](Int v) { return v < 0 ? -v : v; };
  return {q.a, q.b, q.c, abs(q.d), abs(q.e), abs(q.f), -q.d, -q.e, -q.f};
}

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

}  // namespace

MappedForm reduce(const TernaryForm& form) {
  if (!is_positive_definite(form)) throw PreconditionError("reduce: form is not positive definite: " + to_string(form));
  Reducer r{form};
  r.run();
  const TernaryForm& g = r.form;
  Int bound = std::max({g.a, g.b, g.c});
  std::vector<ValuedVector> vecs = short_vectors(g, bound);

  // Successive minima by rank tracking over the value-sorted vectors.
  std::array<Int, 3> minima{};
  std::vector<Vec3> span;
  for (const auto& sv : vecs) {
    bool independent = false;
    if (span.empty()) {
      independent = true;
    } else if (span.size() == 1) {
      Vec3 c = cross(span[0], sv.v);
      independent = c[0] != 0 || c[1] != 0 || c[2] != 0;
    } else {
      independent = Mat3::from_columns(span[0], span[1], sv.v).determinant() != 0;
    }
    if (independent) {
      minima[span.size()] = sv.value;
      span.push_back(sv.v);
      if (span.size() == 3) break;
    }
  }
  if (span.size() != 3) throw ConsistencyError("reduce: short vectors do not span the lattice");

  auto with_value = [&](Int value) {
    std::vector<Vec3> out;
    for (const auto& sv : vecs)
      if (sv.value == value) out.push_back(sv.v);
    return out;
  };
  std::vector<Vec3> s1 = with_value(minima[0]), s2 = with_value(minima[1]), s3 = with_value(minima[2]);

  std::optional<TernaryForm> best;
  Mat3 best_basis;
  for (const Vec3& v1 : s1) {
    for (const Vec3& v2 : s2) {
      Int f = bilinear(g, v1, v2);
      if (2 * std::abs(f) > 2 * minima[0]) continue;
      for (const Vec3& v3 : s3) {
        Mat3 basis = Mat3::from_columns(v1, v2, v3);
        Int det = basis.determinant();
        if (det != 1 && det != -1) continue;
        TernaryForm cand{minima[0], minima[1], minima[2], bilinear(g, v2, v3), bilinear(g, v1, v3), f};
        if (!best || reduction_key(cand) < reduction_key(*best)) {
          best = cand;
          best_basis = basis;
        }
      }
    }
  }
  if (!best) throw ConsistencyError("reduce: no basis realizes the successive minima");
  return {*best, UnimodularMap(r.u * best_basis)};
}

bool is_convenient_shape_1(const TernaryForm& q) {
  Int disc = discriminant(q);
  return q.a % 2 != 0 && mod(static_cast<Wide>(q.a) + disc, 4) == 0 && q.d % 2 != 0 && q.e % 2 == 0 && q.f % 2 == 0;
}

bool is_convenient_shape_2(const TernaryForm& q) {
  Int disc = discriminant(q);
  if (disc % 16 != 0) return false;
  Int delta = disc / 16;
  return q.a % 2 != 0 && mod(static_cast<Wide>(q.a) + delta, 4) == 0 && q.b % 4 == 0 && q.c % 4 == 0 &&
         q.d % 4 == 0 && q.e % 4 == 0 && q.f % 4 == 0;
}

namespace {

// Primitive vector with odd value, smallest (value, vector) in the first box
// max(|x|,|y|,|z|) <= r (r = 6, 8, ...) that contains one.
Vec3 odd_primitive_value(const TernaryForm& q) {
  for (Int r = 6;; r += 2) {
    std::optional<std::pair<Int, Vec3>> best;
    for (Int x = -r; x <= r; ++x)
      for (Int y = -r; y <= r; ++y)
        for (Int z = -r; z <= r; ++z) {
          Int v = evaluate(q, x, y, z);
          if (v % 2 == 0 || gcd(gcd(x, y), z) != 1) continue;
          std::pair<Int, Vec3> cand{v, Vec3{x, y, z}};
          if (!best || cand < *best) best = cand;
        }
    if (best) return best->second;
    if (r > 64) throw ConsistencyError("no odd value found for primitive form " + to_string(q));
  }
}

}  // namespace

MappedForm to_convenient_shape_1(const TernaryForm& form) {
  if (!is_positive_definite(form)) throw PreconditionError("shape 1: form is not positive definite");
  if (!is_primitive(form)) throw PreconditionError("shape 1: form is not primitive");
  if (discriminant(form) % 2 == 0) throw PreconditionError("shape 1: discriminant is even");
  if (is_convenient_shape_1(form)) return {form, UnimodularMap::identity()};

  Reducer r{form};
  r.apply(complete_to_basis(odd_primitive_value(form)));
  auto odd = [](Int v) { return v % 2 != 0; };
  if (odd(r.form.e) || odd(r.form.f)) {
    if (odd(r.form.f)) r.apply(swap_yz_move());
    if (!odd(r.form.d)) r.apply(elementary(1, 2));
    if (odd(r.form.f)) r.apply(elementary(3, 2));
    r.apply(elementary(2, 1));
  }
  if (!is_convenient_shape_1(r.form)) {
    throw ConsistencyError("shape 1 normalization failed for " + to_string(form) + " -> " + to_string(r.form));
  }
  return {r.form, UnimodularMap(r.u)};
}

Int first_value_1_2_mod_4(const TernaryForm& form, Int bound) {
  Int best = 0;
  for_each_vector(form, bound, [&](const Vec3&, Int v) {
    Int m = v % 4;
    if ((m == 1 || m == 2) && (best == 0 || v < best)) best = v;
  });
  return best;
}

MappedForm to_convenient_shape_2(const TernaryForm& form) {
  if (!is_positive_definite(form)) throw PreconditionError("shape 2: form is not positive definite");
  if (!is_primitive(form)) throw PreconditionError("shape 2: form is not primitive");
  Int disc = discriminant(form);
  if (disc % 16 != 0 || (disc / 16) % 2 == 0) {
    throw PreconditionError("shape 2: discriminant " + std::to_string(disc) + " is not 16 times an odd number");
  }
  if (form.d % 2 != 0 || form.e % 2 != 0 || form.f % 2 != 0) {
    throw PreconditionError("shape 2: cross coefficients d, e, f are not all even");
  }
  if (is_convenient_shape_2(form)) return {form, UnimodularMap::identity()};

  Reducer r{form};
  r.apply(complete_to_basis(odd_primitive_value(form)));
  Mat3 clear = Mat3::identity();
  clear.m[0][1] = (r.form.f / 2) % 2 != 0 ? 1 : 0;
  clear.m[0][2] = (r.form.e / 2) % 2 != 0 ? 1 : 0;
  r.apply(clear);
  if (!is_convenient_shape_2(r.form)) {
    Int n = first_value_1_2_mod_4(form, checked_mul(4, disc));
    if (n != 0) {
      throw PreconditionError("shape 2: form represents " + std::to_string(n) + ", which is 1 or 2 mod 4");
    }
    throw PreconditionError("shape 2: no basis with b, c, d, e, f divisible by 4 and a = -disc/16 mod 4 (got " +
                            to_string(r.form) + ")");
  }
  return {r.form, UnimodularMap(r.u)};
}

std::string to_string(const TernaryForm& q) {
  std::string s;
  for (std::size_t i = 0; i < 6; ++i) {
    if (i) s += ",";
    s += std::to_string(q.coeffs()[i]);
  }
  return s;
}

TernaryForm parse_form(std::string_view text) {
  static constexpr const char* names = "abcdef";
  std::array<Int, 6> k{};
  std::size_t field = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (field >= 6) throw PreconditionError("form has more than 6 coefficients: '" + std::string(text) + "'");
    Int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw PreconditionError(std::string("bad coefficient ") + names[field] + " (field " + std::to_string(field + 1) +
                              "): '" + std::string(tok) + "'");
    }
    k[field++] = v;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (field != 6) {
    throw PreconditionError("form needs 6 coefficients a,b,c,d,e,f; got " + std::to_string(field) + " (missing " +
                            names[field] + ")");
  }
  return TernaryForm::from_coeffs(k);
}

}  // namespace tqf
