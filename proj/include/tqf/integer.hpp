#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace tqf {

using Int = std::int64_t;
using Wide = __int128;

/// Exact rational number (GMP-backed, always canonical).
using Rational = mpq_class;

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested computation exceeds the configured work budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal certificate failed (mass mismatch, non-integral transport, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Narrow a 128-bit intermediate, throwing std::overflow_error if it does not fit.
Int narrow(Wide v);

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

/// floor(sqrt(v)) for v >= 0.
Int isqrt(Wide v);
bool is_square(Wide v, Int* root = nullptr);

Int floor_div(Wide a, Wide b);
Int ceil_div(Wide a, Wide b);
Int mod(Wide a, Int m);

Int gcd(Int a, Int b);

/// Exponent of p in n; n must be nonzero.
int valuation(Int n, Int p);

Int ipow(Int base, int exp);

bool is_prime(Int n);

/// Kronecker symbol (a|n) for arbitrary integers a, n.
int kronecker(Int a, Int n);

/// Rational formatted as "num/den" (denominator always present).
std::string to_string(const Rational& r);

Rational rational(Int num, Int den = 1);

}  // namespace tqf
