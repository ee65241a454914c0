#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "support.hpp"
#include "tqf/genus.hpp"
#include "tqf/isometry.hpp"
#include "tqf/lattice_count.hpp"

using namespace tqf;

namespace {

// Every positive primitive form of discriminant disc, found in a generous
// box (no reduction conditions on the cross terms) and canonicalized.
std::set<TernaryForm> brute_classes(Int disc, Int box) {
  std::set<TernaryForm> out;
  for (Int a = 1; a <= box; ++a)
    for (Int b = 1; b <= box; ++b)
      for (Int d = -box; d <= box; ++d)
        for (Int e = -box; e <= box; ++e)
          for (Int f = -box; f <= box; ++f) {
            const Int den = 4 * a * b - f * f;
            if (den <= 0) continue;
            const Int num = disc - d * e * f + a * d * d + b * e * e;
            if (num % den != 0 || num / den < 1) continue;
            const TernaryForm g{a, b, num / den, d, e, f};
            if (is_positive_definite(g) && is_primitive(g) && discriminant(g) == disc) out.insert(reduce(g).form);
          }
  return out;
}

std::filesystem::path temp_cache(const char* name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("mass closed form") {
  CHECK(mass_closed_form(73) == rational(3, 2));
  CHECK(mass_closed_form(3) == rational(1, 24));
  CHECK(mass_closed_form(5) == rational(1, 12));
  CHECK_THROWS_AS(mass_closed_form(9), PreconditionError);
}

TEST_CASE("enumeration is certified by the mass") {
  for (Int p : {3, 5, 7, 11, 13, 17, 19, 23, 73}) {
    const GenusSet g = enumerate_tg1(p);
    CHECK(g.mass == mass_closed_form(p));
    for (const auto& c : g.classes) {
      CHECK(discriminant(c.form) == p * p);
      CHECK(is_primitive(c.form));
      CHECK(reduce(c.form).form == c.form);
      CHECK(c.aut == static_cast<Int>(automorphs(c.form).order()));
    }
  }
}

TEST_CASE("enumeration agrees with an unreduced brute-force search") {
  for (Int p : {3, 5, 7, 11}) {
    std::set<TernaryForm> listed;
    for (const auto& c : enumerate_tg1(p).classes) listed.insert(c.form);
    CHECK(brute_classes(p * p, 8) == listed);
  }
}

TEST_CASE("small genera") {
  const GenusSet g3 = enumerate_tg1(3);
  REQUIRE(g3.classes.size() == 1);
  CHECK(equivalent(g3.classes[0].form, {1, 1, 3, 0, 0, 1}));
  CHECK(g3.classes[0].aut == 24);
  const GenusSet g5 = enumerate_tg1(5);
  REQUIRE(g5.classes.size() == 1);
  CHECK(equivalent(g5.classes[0].form, {2, 2, 2, -1, 1, 1}));
  CHECK(g5.classes[0].aut == 12);

  const GenusSet t3 = build_tg2(g3);
  REQUIRE(t3.classes.size() == 1);
  CHECK(equivalent(t3.classes[0].form, {4, 3, 4, 0, 4, 0}));
  // the coefficient map applied to <1,1,3,0,0,1> directly (not in Shape 1)
  // lands outside the genus: it represents 1
  CHECK_FALSE(equivalent(t3.classes[0].form, {1, 4, 12, 0, 0, 2}));
  CHECK(t3.classes[0].aut == 24);
  const GenusSet t5 = build_tg2(g5);
  CHECK(equivalent(t5.classes[0].form, {7, 8, 8, -4, 8, 8}));
}

TEST_CASE("the genus of discriminant 73^2") {
  const GenusSet g = enumerate_tg1(73);
  const std::vector<TernaryForm> h{{31, 5, 11, 1, -14, 6}, {15, 14, 10, 7, 4, 16}, {11, 7, 20, 7, 2, 4}, {7, 11, 21, 11, 2, 4}};
  const std::vector<TernaryForm> gg{{31, 20, 44, 4, -28, 12}, {15, 56, 40, 28, 8, 32}, {11, 28, 80, 28, 4, 8}, {7, 44, 84, 44, 4, 8}};
  const std::vector<Int> orders{2, 2, 4, 4};
  REQUIRE(g.classes.size() == 4);
  const GenusSet t = build_tg2(g);
  REQUIRE(t.classes.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    int hits = 0;
    for (const auto& c : g.classes)
      if (auto w = equivalent(c.form, h[i])) {
        ++hits;
        CHECK(apply_map(c.form, *w) == h[i]);
        CHECK(c.aut == orders[i]);
      }
    CHECK(hits == 1);
    hits = 0;
    for (const auto& c : t.classes)
      if (equivalent(c.form, gg[i])) {
        ++hits;
        CHECK(c.aut == orders[i]);
      }
    CHECK(hits == 1);
  }
  CHECK(t.mass == rational(3, 2));
}

TEST_CASE("weighted representation sums") {
  const GenusSet g73 = enumerate_tg1(73);
  CHECK(weighted_rep_sum(g73, 0) == rational(3, 2));
  CHECK(weighted_rep_sum(enumerate_tg1(3), 1) == rational(1, 4));
  const GenusSet t = build_tg2(g73);
  for (Int n = 1; n <= 60; ++n)
    if (n % 4 == 1 || n % 4 == 2) CHECK(weighted_rep_sum(t, n) == 0);
  CHECK_THROWS_AS(weighted_rep_sum(g73, -1), PreconditionError);
}

TEST_CASE("input checks") {
  CHECK_THROWS_AS(enumerate_tg1(2), PreconditionError);
  CHECK_THROWS_AS(enumerate_tg1(15), PreconditionError);
  CHECK_THROWS_AS(enumerate_tg1(101), PreconditionError);
  CHECK_THROWS_AS(build_tg2(build_tg2(enumerate_tg1(3))), PreconditionError);
}

TEST_CASE("json round trip") {
  const GenusSet g = enumerate_tg1(73);
  const std::string text = genus_to_json(g);
  CHECK(text.find("\"mass\":\"3/2\"") != std::string::npos);
  CHECK(text.find("\"v\":1") != std::string::npos);
  const GenusSet back = genus_from_json(text);
  CHECK(back.classes == g.classes);
  CHECK(back.mass == g.mass);
  CHECK_THROWS_AS(genus_from_json("{"), PreconditionError);
}

TEST_CASE("cache file") {
  const auto path = temp_cache("tqf_genus_cache_test.json");
  {
    GenusStore store(path);
    CHECK(store.tg2(13).classes.size() == store.tg1(13).classes.size());
  }
  REQUIRE(std::filesystem::exists(path));
  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  CHECK(text.find("\"TG1\"") != std::string::npos);
  CHECK(text.find("\"TG2\"") != std::string::npos);
  GenusStore again(path);
  CHECK(again.tg1(13).classes == enumerate_tg1(13).classes);

  // tampered entries are ignored and recomputed
  const auto pos = text.find("\"aut\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 5, "\"xut\"");
  {
    std::ofstream out(path);
    out << text;
  }
  GenusStore tampered(path);
  CHECK(tampered.tg1(13).mass == mass_closed_form(13));
  {
    std::ofstream out(path);
    out << "not json";
  }
  GenusStore broken(path);
  CHECK(broken.tg1(3).classes.size() == 1);
  std::filesystem::remove(path);
}
