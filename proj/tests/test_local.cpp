#include <doctest.h>

#include "support.hpp"
#include "tqf/lattice_count.hpp"
#include "tqf/local.hpp"
#include "tqf/reference.hpp"

using namespace tqf;

namespace {

const TernaryForm kThree{1, 1, 1, 0, 0, 0};

Rational r(Int n, Int d = 1) { return rational(n, d); }

}  // namespace

TEST_CASE("congruence counts match brute force") {
  std::mt19937_64 rng(31);
  std::vector<TernaryForm> forms{kThree,         {1, 1, 3, 0, 0, 1},  {4, 3, 4, 0, 4, 0}, {31, 5, 11, 1, -14, 6},
                                 {-1, 0, 0, 1, 0, 0}, {-1, 0, 0, 4, 0, 0}, {3, 0, 5, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
                                 {9, 3, 27, 0, 0, 0}, {2, 6, 4, 2, 4, 2}};
  for (int i = 0; i < 6; ++i) forms.push_back(test::random_positive_form(rng));
  for (const auto& f : forms)
    for (Int p : {2, 3, 5})
      for (int t = 1; t <= (p == 2 ? 4 : 2); ++t) {
        const Int q = ipow(p, t);
        for (Int n = 0; n < q; ++n) CHECK(count_solutions_mod(f, n, p, t) == test::brute_count_mod(f, n, p, t));
      }
}

TEST_CASE("congruence counts match the serial reference at larger moduli") {
  for (const TernaryForm& f : {kThree, TernaryForm{-1, 0, 0, 1, 0, 0}, TernaryForm{7, 11, 21, 11, 2, 4}})
    for (Int n : {0, 1, 3, 7, 12, 20, 31}) {
      CHECK(count_solutions_mod(f, n, 2, 5) == reference::count_solutions_mod(f, n, 2, 5));
      CHECK(count_solutions_mod(f, n, 3, 3) == reference::count_solutions_mod(f, n, 3, 3));
    }
}

TEST_CASE("known congruence counts") {
  // all three odd: 4 * 4 * 4 triples, density 64 / 8^2 = 1
  CHECK(count_solutions_mod(kThree, 3, 2, 3) == 64);
  CHECK(count_solutions_mod(kThree, 7, 2, 3) == 0);
  // 9 * (2/3): the density at n = 1, p = 3 is already attained at t = 1
  CHECK(count_solutions_mod(kThree, 1, 3, 1) == 6);
  CHECK(count_solutions_mod(kThree, 1, 3, 2) == 54);
}

TEST_CASE("work limit") {
  try {
    count_solutions_mod({1, 2, 3, 1, 1, 1}, 1, 2, 12, 1000);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("2^12") != std::string::npos);
  }
  CHECK_THROWS_AS(local_density(kThree, 5, 101, 100), ResourceError);
  CHECK_THROWS_AS(count_solutions_mod(kThree, 1, 4, 2), PreconditionError);
  CHECK_THROWS_AS(count_solutions_mod(kThree, 1, 3, 0), PreconditionError);
}

TEST_CASE("local densities") {
  CHECK(local_density(kThree, 1, 2).value == r(3, 2));
  CHECK(local_density(kThree, 3, 2).value == 1);
  CHECK(local_density(kThree, 1, 3).value == r(2, 3));
  const LocalDensity d = local_density(kThree, 12, 2);
  CHECK(d.stabilized);
  CHECK(d.exponent_used == 7);
  CHECK(d.value == r(1, 2));
  CHECK_THROWS_AS(local_density(kThree, 0, 3), PreconditionError);
}

TEST_CASE("densities agree with brute-force counting") {
  // brute force at t = v_p(n) + 3 for odd p, straight from the definition
  for (Int n = 1; n <= 12; ++n) {
    const int t = valuation(n, 3) + 3;
    if (t > 4) continue;
    const Rational brute = rational(test::brute_count_mod(kThree, n, 3, t), ipow(3, 2 * t));
    CHECK(local_density(kThree, n, 3).value == brute);
  }
}

TEST_CASE("closed forms at odd primes") {
  CHECK(density_formula_odd(1, 3) == r(2, 3));
  CHECK(density_formula_odd(3, 3) == r(8, 9));
  CHECK(density_formula_odd(9, 3) == r(10, 9));
  CHECK(gamma_p(1, 3) == r(4, 3));
  CHECK(gamma_p(3, 3) == r(8, 9));
  CHECK(gamma_p(1, 5) == 0);
  CHECK_THROWS_AS(density_formula_odd(1, 2), PreconditionError);
}

TEST_CASE("psi") {
  CHECK(psi(7) == 0);
  CHECK(psi(12) == r(1, 2));
  CHECK(psi(2) == r(3, 2));
  const PsiValue v = psi_value(48);
  CHECK(v.a == 2);
  CHECK(v.k_class == PsiCase::ThreeMod8);
  CHECK(v.value == r(1, 4));
  CHECK_THROWS_AS(psi(0), PreconditionError);
}

TEST_CASE("p_factor") {
  CHECK(p_factor(1) == 1);
  CHECK(p_factor(30) == 1);
  CHECK(p_factor(4) == 1);
  // 1 + 1/(3 (1 + 1/3)) for n = 9
  CHECK(p_factor(9) == r(5, 4));
  CHECK(p_factor(18) == p_factor(2 * 9));
}

TEST_CASE("p_factor tracks s under n -> p^2 n") {
  // s(p^2 n) P(n) = p P(p^2 n) (1 - (-n|p)/p) s(n)
  for (Int p : {3, 5, 7})
    for (Int n = 1; n <= 120; ++n) {
      const Rational lhs = rational(s(p * p * n)) * p_factor(n);
      const Rational rhs = rational(p) * p_factor(p * p * n) * (1 - rational(kronecker(-n, p), p)) * rational(s(n));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("square roots modulo powers of two") {
  CHECK(sqrt_count_mod_2t(1, 3) == 4);
  CHECK(sqrt_count_mod_2t(3, 3) == 0);
  // x in {2, 6, 10, 14}
  CHECK(sqrt_count_mod_2t(4, 4) == 4);
  for (int t = 3; t <= 11; ++t) {
    const Int m = Int{1} << t;
    for (Int c = 0; c < m; ++c) {
      Int direct = 0;
      for (Int x = 0; x < m; ++x) direct += (x * x) % m == c;
      CHECK(sqrt_count_mod_2t(c, t) == direct);
    }
  }
  CHECK_THROWS_AS(sqrt_count_mod_2t(1, 2), PreconditionError);
  CHECK_THROWS_AS(sqrt_count_mod_2t(8, 3), PreconditionError);
}

TEST_CASE("character sums") {
  CHECK(character_sum_check(1, 3) == -1);
  CHECK(character_sum_check(2, 5) == -1);
  CHECK(character_sum_check(1, 13) == -1);
  CHECK_THROWS_AS(character_sum_check(5, 5), PreconditionError);
  CHECK(least_negative_nonresidue(3) == 1);
  CHECK(least_negative_nonresidue(5) == 2);
  CHECK(least_negative_nonresidue(7) == 1);
}

TEST_CASE("engine reuse gives the same answers") {
  DensityEngine e;
  for (Int n = 1; n <= 40; ++n) CHECK(e.density(kThree, n, 5).value == local_density(kThree, n, 5).value);
}
