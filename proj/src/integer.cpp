#include "tqf/integer.hpp"

#include <cmath>
#include <limits>

namespace tqf {

Int narrow(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("integer overflow: value exceeds 64 bits");
  }
  return static_cast<Int>(v);
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

Int isqrt(Wide v) {
  if (v < 0) throw PreconditionError("isqrt of a negative number");
  if (v == 0) return 0;
  Wide r = static_cast<Wide>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return narrow(r);
}

bool is_square(Wide v, Int* root) {
  if (v < 0) return false;
  Int r = isqrt(v);
  if (root) *root = r;
  return static_cast<Wide>(r) * r == v;
}

Int floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return narrow(q);
}

Int ceil_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return narrow(q);
}

Int mod(Wide a, Int m) {
  Wide r = a % m;
  if (r < 0) r += m;
  return static_cast<Int>(r);
}

Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int valuation(Int n, Int p) {
  if (n == 0) throw PreconditionError("valuation of zero is infinite");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

Int ipow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int kronecker(Int a, Int n) {
  // Cohen, Algorithm 1.4.10.
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int k = 1;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v % 2 == 1) {
    Int a8 = mod(a, 8);
    if (a8 == 3 || a8 == 5) k = -k;
  }
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  a = mod(a, n);
  while (a != 0) {
    v = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++v;
    }
    if (v % 2 == 1) {
      Int n8 = n % 8;
      if (n8 == 3 || n8 == 5) k = -k;
    }
    if ((a & n & 2) != 0) k = -k;
    Int r = n % a;
    n = a;
    a = r;
  }
  return n == 1 ? k : 0;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational(Int num, Int den) {
  Rational r(static_cast<long>(num), static_cast<unsigned long>(1));
  if (den == 0) throw PreconditionError("zero denominator");
  Rational d(static_cast<long>(den), static_cast<unsigned long>(1));
  return r / d;
}

}  // namespace tqf
