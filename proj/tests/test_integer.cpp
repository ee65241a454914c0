#include <doctest.h>

#include <limits>

#include "tqf/integer.hpp"
#include "tqf/matrix.hpp"

using namespace tqf;

namespace {

// Euler's criterion, by repeated multiplication.
int legendre_oracle(Int a, Int p) {
  Int r = ((a % p) + p) % p;
  if (r == 0) return 0;
  Int acc = 1;
  for (Int i = 0; i < (p - 1) / 2; ++i) acc = acc * r % p;
  return acc == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("kronecker agrees with Euler's criterion at odd primes") {
  for (Int p : {3, 5, 7, 11, 13, 73, 97})
    for (Int a = -60; a <= 60; ++a) CHECK(kronecker(a, p) == legendre_oracle(a, p));
}

TEST_CASE("kronecker is multiplicative in the bottom argument") {
  for (Int a = -30; a <= 30; ++a)
    for (Int m = 1; m <= 40; m += 2)
      for (Int n = 1; n <= 40; n += 2) CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
}

TEST_CASE("kronecker at 2 and -1") {
  CHECK(kronecker(1, 2) == 1);
  CHECK(kronecker(7, 2) == 1);
  CHECK(kronecker(3, 2) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(4, 2) == 0);
  CHECK(kronecker(-3, -1) == -1);
  CHECK(kronecker(3, -1) == 1);
}

TEST_CASE("isqrt and is_square") {
  for (Int v = 0; v < 5000; ++v) {
    Int r = isqrt(v);
    CHECK(r * r <= v);
    CHECK((r + 1) * (r + 1) > v);
  }
  Int root = 0;
  CHECK(is_square(Wide{1} << 62, &root));
  CHECK(root == Int{1} << 31);
  CHECK_FALSE(is_square(99));
}

TEST_CASE("floor and ceil division, mod") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(ceil_div(-7, 2) == -3);
  CHECK(floor_div(7, -2) == -4);
  CHECK(mod(-7, 5) == 3);
  CHECK(mod(7, 5) == 2);
}

TEST_CASE("valuation, ipow, primality") {
  CHECK(valuation(72, 2) == 3);
  CHECK(valuation(72, 3) == 2);
  CHECK(valuation(-49, 7) == 2);
  CHECK_THROWS_AS(valuation(0, 3), PreconditionError);
  CHECK(ipow(73, 2) == 5329);
  int primes = 0;
  for (Int n = 0; n < 100; ++n) primes += is_prime(n);
  CHECK(primes == 25);
}

TEST_CASE("overflow is detected") {
  const Int big = std::numeric_limits<Int>::max();
  CHECK_THROWS_AS(checked_mul(big, 2), std::overflow_error);
  CHECK_THROWS_AS(checked_add(big, 1), std::overflow_error);
  CHECK_THROWS_AS(narrow(Wide{big} + 1), std::overflow_error);
  CHECK(checked_mul(-3, 7) == -21);
}

TEST_CASE("rationals print as num/den") {
  CHECK(to_string(rational(72, 48)) == "3/2");
  CHECK(to_string(rational(-2, 4)) == "-1/2");
  CHECK(to_string(rational(5)) == "5/1");
}

TEST_CASE("complete_to_basis and hermite normal form") {
  for (Vec3 v : {Vec3{3, 5, 7}, Vec3{0, 0, 1}, Vec3{6, 10, 15}, Vec3{-4, 9, 0}}) {
    const Mat3 u = complete_to_basis(v);
    CHECK(u.column(0) == v);
    CHECK((u.determinant() == 1 || u.determinant() == -1));
    CHECK(u * unimodular_inverse(u) == Mat3::identity());
  }
  const Mat3 h = hermite_normal_form(Mat3::diagonal(4, 4, 4), Vec3{2, 0, 0});
  CHECK(h == Mat3::diagonal(2, 4, 4));
  const Mat3 h2 = hermite_normal_form(std::vector<Vec3>{{4, 0, 0}, {0, 4, 0}, {0, 0, 4}, {1, 1, 0}, {0, 2, 2}});
  for (int r = 0; r < 3; ++r) {
    CHECK(h2(r, r) > 0);
    for (int c = 0; c < r; ++c) CHECK(h2(r, c) == 0);
    for (int c = r + 1; c < 3; ++c) CHECK((h2(r, c) >= 0 && h2(r, c) < h2(r, r)));
  }
  CHECK(h2.determinant() == 8);
}
