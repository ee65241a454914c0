#pragma once

#include <string>
#include <vector>

#include "tqf/genus.hpp"
#include "tqf/local.hpp"

namespace tqf {

struct IdentityFailure {
  Int n = 0;
  Int lhs = 0;
  Int rhs = 0;
};

/// Outcome of checking s(p^2 n) - p s(n) = (weighted representation counts)
/// for 1 <= n <= n_max. Every n is checked; failures carry both sides.
struct IdentityReport {
  std::string identity;  // "thm1.1", "thm1.2", "thm1.3", "eq7.2"
  Int p = 0;
  Int n_max = 0;
  std::vector<IdentityFailure> failures;
  bool pass = false;
};

/// A named family of exact checks.
struct SuiteResult {
  std::string name;
  Int checked = 0;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

struct FullReport {
  std::vector<IdentityReport> identities;
  std::vector<SuiteResult> suites;
  bool pass = false;
};

/// One term of a right-hand side: weight * R_form(n).
struct WeightedForm {
  Rational weight;
  TernaryForm form;
};

/// Checks s(p^2 n) - p s(n) = sum of weight * R_form(n). The right side must
/// be an integer for every n; ConsistencyError otherwise.
IdentityReport check_identity(const std::string& id, Int p, Int n_max, const std::vector<WeightedForm>& rhs);

/// s(9n) - 3 s(n) = 2 R(1,1,3,0,0,1) - 4 R(4,3,4,0,4,0); report id "thm1.1".
IdentityReport verify_three_squares_p3(Int n_max);
/// s(25n) - 5 s(n) = 4 R(2,2,2,-1,1,1) - 8 R(7,8,8,-4,8,8); report id "thm1.2".
IdentityReport verify_three_squares_p5(Int n_max);
/// Right side 48 * (TG1 weighted sum) - 96 * (TG2 weighted sum); id "thm1.3".
IdentityReport verify_genus_identity(GenusStore& store, Int p, Int n_max);
/// The explicit eight-form expansion at p = 73; id "eq7.2".
IdentityReport verify_p73_expansion(Int n_max);

/// The eight forms and coefficients of the p = 73 expansion.
std::vector<WeightedForm> p73_expansion_terms();

/// Local densities against their closed forms and the relations between them.
std::vector<SuiteResult> verify_density_suites(Int work_limit = kDefaultWorkLimit);
std::vector<SuiteResult> verify_genus_properties(GenusStore& store, const std::vector<Int>& primes);
std::vector<SuiteResult> verify_watson_properties(GenusStore& store, const std::vector<Int>& primes);

/// Primes used by the genus and Watson suites.
std::vector<Int> default_test_primes();

/// Every identity and suite at its default range.
FullReport verify_all(GenusStore& store, Int work_limit = kDefaultWorkLimit);

/// Sorted-key JSON, byte-stable for fixed inputs.
std::string to_json(const IdentityReport& report);
std::string to_json(const SuiteResult& suite);
std::string to_json(const FullReport& report);

}  // namespace tqf
