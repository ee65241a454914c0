#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "tqf/form.hpp"

namespace tqf {

enum class GenusLabel { TG1, TG2 };

std::string to_string(GenusLabel label);

struct GenusClass {
  TernaryForm form;  // canonical
  Int aut = 0;       // automorph group order

  auto operator<=>(const GenusClass&) const = default;
};

/// TG1: positive primitive forms of discriminant p^2.
/// TG2: their images under phi (discriminant 16 p^2).
struct GenusSet {
  GenusLabel label = GenusLabel::TG1;
  Int prime = 0;
  std::vector<GenusClass> classes;  // sorted by form
  Rational mass;                    // sum of 1/aut
};

inline constexpr Int kDefaultPrimeBound = 97;

/// (p - 1) / 48.
Rational mass_closed_form(Int p);

/// Every class of TG1 for an odd prime p <= prime_bound. Throws
/// ConsistencyError if the mass differs from (p - 1) / 48.
GenusSet enumerate_tg1(Int p, Int prime_bound = kDefaultPrimeBound);

/// Images of the TG1 classes under phi. Throws ConsistencyError if an image
/// has a different automorph order than its preimage, or two images coincide.
GenusSet build_tg2(const GenusSet& tg1);

/// Sum over classes of rep_count(class, n) / aut.
Rational weighted_rep_sum(const GenusSet& genus, Int n);

/// Genus sets memoized in memory and, when a path is given, in a JSON file
/// shared between runs. Entries read from the file are re-validated
/// (discriminant, canonical form, mass); invalid entries are recomputed.
class GenusStore {
 public:
  explicit GenusStore(std::filesystem::path cache_path = {}, Int prime_bound = kDefaultPrimeBound);

  GenusSet tg1(Int p);
  GenusSet tg2(Int p);

  const std::filesystem::path& path() const { return path_; }

 private:
  void load();
  void save();
  bool valid(const GenusSet& g) const;

  std::filesystem::path path_;
  Int prime_bound_;
  std::mutex mutex_;
  std::map<std::pair<GenusLabel, Int>, GenusSet> memo_;
};

std::string genus_to_json(const GenusSet& genus);
GenusSet genus_from_json(const std::string& text);

}  // namespace tqf
