#include "tqf/genus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "tqf/isometry.hpp"
#include "tqf/lattice_count.hpp"
#include "tqf/watson.hpp"

namespace tqf {

using nlohmann::json;

std::string to_string(GenusLabel label) { return label == GenusLabel::TG1 ? "TG1" : "TG2"; }

namespace {

GenusLabel parse_label(const std::string& s) {
  if (s == "TG1") return GenusLabel::TG1;
  if (s == "TG2") return GenusLabel::TG2;
  throw PreconditionError("unknown genus label '" + s + "'");
}

void require_odd_prime(Int p, Int bound) {
  if (p == 2 || !is_prime(p)) throw PreconditionError(std::to_string(p) + " is not an odd prime");
  if (p > bound) throw PreconditionError("prime " + std::to_string(p) + " exceeds the enumeration bound " + std::to_string(bound));
}

Rational mass_of(const std::vector<GenusClass>& classes) {
  Rational m = 0;
  for (const auto& c : classes) m += Rational(1) / Rational(mpz_class(static_cast<long>(c.aut)));
  return m;
}

json genus_json(const GenusSet& g) {
  json classes = json::array();
  for (const auto& c : g.classes) {
    auto k = c.form.coeffs();
    classes.push_back({{"coeffs", std::vector<Int>(k.begin(), k.end())}, {"aut", c.aut}});
  }
  return {{"v", 1}, {"label", to_string(g.label)}, {"p", g.prime}, {"classes", classes}, {"mass", to_string(g.mass)}};
}

GenusSet genus_from(const json& j) {
  if (j.at("v").get<int>() != 1) throw PreconditionError("unsupported genus schema version");
  GenusSet g;
  g.label = parse_label(j.at("label").get<std::string>());
  g.prime = j.at("p").get<Int>();
  for (const auto& c : j.at("classes")) {
    auto k = c.at("coeffs").get<std::vector<Int>>();
    if (k.size() != 6) throw PreconditionError("genus class needs six coefficients");
    g.classes.push_back({TernaryForm{k[0], k[1], k[2], k[3], k[4], k[5]}, c.at("aut").get<Int>()});
  }
  g.mass = Rational(j.at("mass").get<std::string>());
  g.mass.canonicalize();
  return g;
}

}  // namespace

Rational mass_closed_form(Int p) {
  if (p == 2 || !is_prime(p)) throw PreconditionError(std::to_string(p) + " is not an odd prime");
  return rational(p - 1, 48);
}

GenusSet enumerate_tg1(Int p, Int prime_bound) {
  require_odd_prime(p, prime_bound);
  const Int disc = p * p;
  Int amax = 1;
  while ((amax + 1) * (amax + 1) * (amax + 1) <= disc) ++amax;

  std::vector<std::set<TernaryForm>> found(static_cast<std::size_t>(amax) + 1);
#pragma omp parallel for schedule(dynamic)
  for (Int a = 1; a <= amax; ++a) {
    auto& out = found[static_cast<std::size_t>(a)];
    for (Int b = a; a * b * b <= disc; ++b)
      for (Int d = -b; d <= b; ++d)
        for (Int e = -a; e <= a; ++e)
          for (Int f = -a; f <= a; ++f) {
            // disc = c (4ab - f^2) + def - a d^2 - b e^2, solved for c
            const Int den = 4 * a * b - f * f;
            const Int num = disc - d * e * f + a * d * d + b * e * e;
            if (num % den != 0) continue;
            const Int c = num / den;
            if (c < b) continue;
            const TernaryForm g{a, b, c, d, e, f};
            if (!is_positive_definite(g) || !is_primitive(g)) continue;
            out.insert(reduce(g).form);
          }
  }
  std::set<TernaryForm> all;
  for (const auto& s : found) all.insert(s.begin(), s.end());

  GenusSet g;
  g.label = GenusLabel::TG1;
  g.prime = p;
  for (const auto& f : all) g.classes.push_back({f, static_cast<Int>(automorphs(f).order())});
  g.mass = mass_of(g.classes);
  if (g.mass != mass_closed_form(p))
    throw ConsistencyError("TG1 enumeration for p=" + std::to_string(p) + " is incomplete: mass " + to_string(g.mass) +
                           ", expected " + to_string(mass_closed_form(p)));
  return g;
}

GenusSet build_tg2(const GenusSet& tg1) {
  if (tg1.label != GenusLabel::TG1) throw PreconditionError("build_tg2 needs a TG1 genus");
  GenusSet g;
  g.label = GenusLabel::TG2;
  g.prime = tg1.prime;
  std::set<TernaryForm> seen;
  for (const auto& c : tg1.classes) {
    const TernaryForm image = phi(c.form);
    const auto aut = static_cast<Int>(automorphs(image).order());
    if (aut != c.aut)
      throw ConsistencyError("phi changed the automorph order of " + to_string(c.form) + ": " + std::to_string(c.aut) +
                             " -> " + std::to_string(aut));
    if (!seen.insert(image).second) throw ConsistencyError("phi images coincide at " + to_string(image));
    g.classes.push_back({image, aut});
  }
  std::sort(g.classes.begin(), g.classes.end());
  g.mass = mass_of(g.classes);
  if (g.mass != tg1.mass) throw ConsistencyError("TG2 mass differs from TG1 mass");
  return g;
}

Rational weighted_rep_sum(const GenusSet& genus, Int n) {
  if (n < 0) throw PreconditionError("weighted_rep_sum needs n >= 0");
  Rational total = 0;
  for (const auto& c : genus.classes) total += Rational(mpz_class(static_cast<long>(rep_count(c.form, n)))) / Rational(mpz_class(static_cast<long>(c.aut)));
  return total;
}

std::string genus_to_json(const GenusSet& genus) { return genus_json(genus).dump(); }

GenusSet genus_from_json(const std::string& text) {
  try {
    return genus_from(json::parse(text));
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed genus JSON: ") + e.what());
  }
}

GenusStore::GenusStore(std::filesystem::path cache_path, Int prime_bound)
    : path_(std::move(cache_path)), prime_bound_(prime_bound) {
  load();
}

bool GenusStore::valid(const GenusSet& g) const {
  if (g.prime == 2 || !is_prime(g.prime) || g.classes.empty()) return false;
  const Int disc = g.prime * g.prime * (g.label == GenusLabel::TG1 ? 1 : 16);
  for (const auto& c : g.classes) {
    if (c.aut <= 0 || discriminant(c.form) != disc || !is_positive_definite(c.form) || !is_primitive(c.form)) return false;
    if (reduce(c.form).form != c.form) return false;
  }
  return std::is_sorted(g.classes.begin(), g.classes.end()) && g.mass == mass_of(g.classes) &&
         g.mass == mass_closed_form(g.prime);
}

void GenusStore::load() {
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("v", 0) != 1 || !j.contains("genera")) return;
  for (const auto& entry : j["genera"]) {
    try {
      GenusSet g = genus_from(entry);
      if (valid(g)) memo_[{g.label, g.prime}] = std::move(g);
    } catch (const std::exception&) {
      // stale or foreign entry; recomputed on demand
    }
  }
}

void GenusStore::save() {
  if (path_.empty()) return;
  json genera = json::array();
  for (const auto& [key, g] : memo_) genera.push_back(genus_json(g));
  const json doc{{"v", 1}, {"genera", genera}};
  const std::filesystem::path tmp = path_.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write genus cache " + tmp.string());
    out << doc.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path_);
}

GenusSet GenusStore::tg1(Int p) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto key = std::make_pair(GenusLabel::TG1, p);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  GenusSet g = enumerate_tg1(p, prime_bound_);
  memo_[key] = g;
  save();
  return g;
}

GenusSet GenusStore::tg2(Int p) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = memo_.find({GenusLabel::TG2, p}); it != memo_.end()) return it->second;
  }
  GenusSet g = build_tg2(tg1(p));
  std::lock_guard<std::mutex> lock(mutex_);
  memo_[{GenusLabel::TG2, p}] = g;
  save();
  return g;
}

}  // namespace tqf
