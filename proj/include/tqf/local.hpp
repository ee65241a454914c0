#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "tqf/form.hpp"

namespace tqf {

inline constexpr Int kDefaultWorkLimit = 1'000'000'000;

/// count / p^(2t), where count is the number of solution triples mod p^t.
struct LocalDensity {
  Rational value;
  Int prime = 0;
  int exponent_used = 0;
  bool stabilized = false;
};

enum class PsiCase { SevenMod8, ThreeMod8, OneOrTwoMod4 };

/// n = 4^a k with 4 not dividing k; the value depends on a and k mod 8.
struct PsiValue {
  Int n = 0;
  int a = 0;
  PsiCase k_class = PsiCase::OneOrTwoMod4;
  Rational value;
};

/// Number of (x, y, z) mod p^t with form(x, y, z) = n (mod p^t). Works for
/// any integral form, definite or not. Throws ResourceError when the
/// estimated work exceeds work_limit.
Int count_solutions_mod(const TernaryForm& form, Int n, Int p, int t, Int work_limit = kDefaultWorkLimit);

/// Memoizing front end for congruence counts. Counts only depend on the
/// class of n under multiplication by unit squares, and the per-form tables
/// depend only on (form, p, t), so suites that sweep n reuse both.
class DensityEngine {
 public:
  explicit DensityEngine(Int work_limit = kDefaultWorkLimit) : work_limit_(work_limit) {}

  Int count(const TernaryForm& form, Int n, Int p, int t);

  /// Density at t = v_p(n) + 3 (odd p) or v_2(n) + 5, certified equal to the
  /// value at t + 1. n must be nonzero.
  LocalDensity density(const TernaryForm& form, Int n, Int p);

  /// The exponent density() starts from.
  static int starting_exponent(Int n, Int p);

  class Counter;

 private:
  Int work_limit_;
  std::mutex mutex_;
  std::map<std::tuple<TernaryForm, Int, int>, std::shared_ptr<Counter>> counters_;
};

/// One-shot density (fresh engine).
LocalDensity local_density(const TernaryForm& form, Int n, Int p, Int work_limit = kDefaultWorkLimit);

/// Siegel's closed form for x^2 + y^2 + z^2 at an odd prime p.
Rational density_formula_odd(Int n, Int p);

PsiValue psi_value(Int n);
Rational psi(Int n);

/// p * (density_formula_odd(p^2 n, p) - density_formula_odd(n, p)) in closed form.
Rational gamma_p(Int n, Int p);

/// Product over odd primes q with q^2 | n of the local correction factor of
/// the three-squares formula.
Rational p_factor(Int n);

/// |{0 <= x < 2^t : x^2 = c (mod 2^t)}| from the closed-form case table.
Int sqrt_count_mod_2t(Int c, int t);

/// Sum over y mod p of (y^2 + a | p); always -1 for p not dividing a.
int character_sum_check(Int a, Int p);

/// Least u > 0 with (-u | p) = -1.
Int least_negative_nonresidue(Int p);

}  // namespace tqf
