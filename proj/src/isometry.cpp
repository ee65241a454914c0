#include "tqf/isometry.hpp"

#include <algorithm>
#include <map>

#include "tqf/ellipsoid.hpp"

namespace tqf {

bool AutomorphGroup::contains(const UnimodularMap& u) const {
  return std::binary_search(elements.begin(), elements.end(), u);
}

std::vector<Mat3> isometries(const TernaryForm& source, const TernaryForm& target, bool first_only) {
  if (!is_positive_definite(source) || !is_positive_definite(target)) {
    throw PreconditionError("isometry search needs positive definite forms");
  }
  std::vector<Mat3> found;
  if (discriminant(source) != discriminant(target)) return found;

  const std::array<Int, 3> want{target.a, target.b, target.c};
  std::map<Int, std::vector<Vec3>> by_value;
  for (const auto& sv : short_vectors(source, std::max({target.a, target.b, target.c}))) {
    by_value[sv.value].push_back(sv.v);
  }
  const std::vector<Vec3> none;
  auto candidates = [&](int i) -> const std::vector<Vec3>& {
    auto it = by_value.find(want[i]);
    return it == by_value.end() ? none : it->second;
  };

  for (const Vec3& u1 : candidates(0)) {
    for (const Vec3& u2 : candidates(1)) {
      if (bilinear(source, u1, u2) != target.f) continue;
      for (const Vec3& u3 : candidates(2)) {
        if (bilinear(source, u1, u3) != target.e || bilinear(source, u2, u3) != target.d) continue;
        // Equal Gram matrices and equal discriminants force det = +-1.
        found.push_back(Mat3::from_columns(u1, u2, u3));
        if (first_only) return found;
      }
    }
  }
  return found;
}

std::optional<UnimodularMap> equivalent(const TernaryForm& g, const TernaryForm& h) {
  if (!is_positive_definite(g) || !is_positive_definite(h)) {
    throw PreconditionError("equivalence test needs positive definite forms");
  }
  if (discriminant(g) != discriminant(h)) return std::nullopt;
  MappedForm rg = reduce(g);
  MappedForm rh = reduce(h);
  auto maps = isometries(rg.form, rh.form, true);
  if (maps.empty()) return std::nullopt;
  return rg.map * UnimodularMap(maps.front()) * rh.map.inverse();
}

AutomorphGroup automorphs(const TernaryForm& form) {
  if (!is_positive_definite(form)) throw PreconditionError("automorphs need a positive definite form");
  MappedForm r = reduce(form);
  UnimodularMap inv = r.map.inverse();
  AutomorphGroup group{form, {}};
  for (const Mat3& a : isometries(r.form, r.form, false)) {
    group.elements.push_back(r.map * UnimodularMap(a) * inv);
  }
  std::sort(group.elements.begin(), group.elements.end());
  return group;
}

}  // namespace tqf
