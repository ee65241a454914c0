#include "tqf/local.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

#include <omp.h>

namespace tqf {

namespace {

Rational pow_rational(Int p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return Rational(r);
}

Int mulmod(Int a, Int b, Int q) { return mod(static_cast<Wide>(a) * b, q); }

// Counts depend only on the orbit of the residue m under multiplication by
// unit squares: (valuation, square class of the unit part).
Int residue_class(Int m, Int p, int t) {
  if (m == 0) return -1;
  int v = 0;
  Int u = m;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  Int tag;
  if (p == 2) {
    int bits = std::min(3, t - v);
    tag = u & ((Int{1} << bits) - 1);
  } else {
    tag = kronecker(u, p) == 1 ? 0 : 1;
  }
  return v * 16 + tag;
}

// squares[s] = #{x mod q : x^2 = s}
std::vector<Int> square_histogram(Int q) {
  std::vector<Int> h(static_cast<std::size_t>(q), 0);
  for (Int x = 0; x < q; ++x) ++h[static_cast<std::size_t>(mulmod(x, x, q))];
  return h;
}

// #{x mod q : u x^2 = c} for every c.
std::vector<Int> scaled_square_histogram(const std::vector<Int>& squares, Int u, Int q) {
  std::vector<Int> h(static_cast<std::size_t>(q), 0);
  for (Int s = 0; s < q; ++s) {
    Int m = squares[static_cast<std::size_t>(s)];
    if (m) h[static_cast<std::size_t>(mulmod(u, s, q))] += m;
  }
  return h;
}

struct Entry {
  Int value;
  Int mult;
};

std::vector<Entry> nonzero_entries(const std::vector<Int>& h) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i]) out.push_back({static_cast<Int>(i), h[i]});
  return out;
}

int capped_valuation(Int c, Int p, int t) { return c == 0 ? t : std::min(t, valuation(c, p)); }

// Over Z/p^t (p odd) the form is equivalent, up to a unit factor on the
// target, to a diagonal form: count(form = n) = count(diag = lambda * n).
struct Diagonal {
  std::array<Int, 3> u{};
  Int lambda = 1;
};

Diagonal diagonalize_odd(const TernaryForm& form, Int p, int t, Int q) {
  std::array<Int, 6> k = form.coeffs();
  for (auto& c : k) c = mod(c, q);
  int kmin = t;
  for (Int c : k) kmin = std::min(kmin, capped_valuation(c, p, t));
  Diagonal out;
  if (kmin >= t) return out;
  const Int pk = ipow(p, kmin);
  for (auto& c : k) c /= pk;
  TernaryForm q0 = TernaryForm::from_coeffs(k);

  const Vec3 tries[] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  for (const Vec3& v : tries) {
    if (mod(evaluate(q0, v), p) != 0) {
      q0 = transform(q0, complete_to_basis(v));
      break;
    }
  }
  std::array<Int, 6> r = q0.coeffs();
  for (auto& c : r) c = mod(c, q);
  const Int a = r[0], b = r[1], c = r[2], d = r[3], e = r[4], f = r[5];
  if (a % p == 0) throw ConsistencyError("odd-prime diagonalization found no unit value");

  // 4a*Q0 = X^2 + A y^2 + D yz + C z^2
  Int A = mod(4 * static_cast<Wide>(a) * b - static_cast<Wide>(f) * f, q);
  Int D = mod(2 * (2 * static_cast<Wide>(a) * d - static_cast<Wide>(e) * f), q);
  Int C = mod(4 * static_cast<Wide>(a) * c - static_cast<Wide>(e) * e, q);

  int jmin = std::min({capped_valuation(A, p, t), capped_valuation(D, p, t), capped_valuation(C, p, t)});
  if (jmin >= t) {
    out.u = {pk % q, 0, 0};
    out.lambda = mod(4 * static_cast<Wide>(a), q);
    return out;
  }
  const Int pj = ipow(p, jmin);
  A /= pj;
  D /= pj;
  C /= pj;
  if (A % p == 0) {
    if (C % p != 0) {
      std::swap(A, C);
    } else {
      Int a2 = mod(static_cast<Wide>(A) + C + D, q);
      D = mod(static_cast<Wide>(D) + 2 * static_cast<Wide>(C), q);
      A = a2;
    }
  }
  const Int pkj = mod(static_cast<Wide>(pk) * pj, q);
  out.u[0] = mulmod(pk, mod(4 * static_cast<Wide>(A), q), q);
  out.u[1] = pkj;
  out.u[2] = mulmod(pkj, mod(4 * static_cast<Wide>(A) * C - static_cast<Wide>(D) * D, q), q);
  out.lambda = mod(16 * static_cast<Wide>(a) * A, q);
  return out;
}

Int two_adic_work(int t) { return Int{1} << std::min(62, 2 * t + 3); }

}  // namespace

class DensityEngine::Counter {
 public:
  Counter(Int p, int t) : p_(p), t_(t), q_(ipow(p, t)) {}
  virtual ~Counter() = default;

  Int count(Int n) {
    Int m = mod(n, q_);
    Int cls = residue_class(m, p_, t_);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(cls);
      if (it != cache_.end()) return it->second;
    }
    Int v = compute(m);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_[cls] = v;
    return v;
  }

 protected:
  virtual Int compute(Int m) = 0;

  Int p_;
  int t_;
  Int q_;

 private:
  std::mutex mutex_;
  std::map<Int, Int> cache_;
};

namespace {

// Odd p: diagonalize, then convolve square histograms. The binary part is a
// class function, so it is tabulated once per residue class.
class DiagonalCounter final : public DensityEngine::Counter {
 public:
  DiagonalCounter(const TernaryForm& form, Int p, int t) : Counter(p, t) {
    Diagonal diag = diagonalize_odd(form, p, t, q_);
    lambda_ = diag.lambda;
    std::vector<Int> squares = square_histogram(q_);
    first_ = nonzero_entries(scaled_square_histogram(squares, diag.u[0], q_));
    std::vector<Entry> second = nonzero_entries(scaled_square_histogram(squares, diag.u[1], q_));
    std::vector<Int> third = scaled_square_histogram(squares, diag.u[2], q_);

    std::vector<Int> reps{0};
    Int g = 2;
    while (kronecker(g, p) != -1) ++g;
    for (int v = 0; v < t; ++v) {
      Int pv = ipow(p, v);
      reps.push_back(pv);
      reps.push_back(mulmod(pv, g, q_));
    }
    std::vector<Int> sums(reps.size(), 0);
    const auto nreps = static_cast<std::ptrdiff_t>(reps.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < nreps; ++i) {
      const Int r = reps[static_cast<std::size_t>(i)];
      Int total = 0;
      for (const Entry& en : second) total += en.mult * third[static_cast<std::size_t>(mod(static_cast<Wide>(r) - en.value, q_))];
      sums[static_cast<std::size_t>(i)] = total;
    }
    for (std::size_t i = 0; i < reps.size(); ++i) binary_[residue_class(reps[i], p, t)] = sums[i];
  }

 protected:
  Int compute(Int m) override {
    const Int target = mulmod(lambda_, m, q_);
    const auto n = static_cast<std::ptrdiff_t>(first_.size());
    Int total = 0;
#pragma omp parallel for reduction(+ : total)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const Entry& en = first_[static_cast<std::size_t>(i)];
      total += en.mult * binary_.at(residue_class(mod(static_cast<Wide>(target) - en.value, q_), p_, t_));
    }
    return total;
  }

 private:
  Int lambda_ = 1;
  std::vector<Entry> first_;
  std::map<Int, Int> binary_;
};

// One variable has no cross terms: form = alpha*x^2 + B(y, z). The count is
// a convolution of the x-histogram with the value counts of B, and the
// latter are a class function, so B is only counted at one residue per
// class. When B is linear in z, or diagonal with odd z^2 coefficient, each
// such count is a single pass over y; otherwise B is tabulated over all
// (y, z).
class SeparatedCounter final : public DensityEngine::Counter {
 public:
  enum class Mode { Linear, SquareRoot, Dense };

  static Mode mode_for(Int b, Int c, Int d, Int q) {
    if (mod(c, q) == 0 || mod(b, q) == 0) return Mode::Linear;
    if (mod(d, q) == 0 && (c % 2 != 0 || b % 2 != 0)) return Mode::SquareRoot;
    return Mode::Dense;
  }

  SeparatedCounter(Int alpha, Int b, Int c, Int d, Int p, int t) : Counter(p, t) {
    // y <-> z symmetry: put the zero or odd coefficient on z^2
    if (mod(c, q_) != 0 && (mod(b, q_) == 0 || (c % 2 == 0 && b % 2 != 0))) std::swap(b, c);
    b_ = mod(b, q_);
    c_ = mod(c, q_);
    d_ = mod(d, q_);
    mode_ = mode_for(b_, c_, d_, q_);
    squares_ = square_histogram(q_);
    first_ = nonzero_entries(scaled_square_histogram(squares_, mod(alpha, q_), q_));
    if (mode_ == Mode::SquareRoot) c_inverse_ = inverse_mod(c_, q_);
    if (mode_ == Mode::Dense) tabulate();
  }

 protected:
  Int compute(Int m) override {
    Int total = 0;
    for (const Entry& en : first_) total += en.mult * binary_count(mod(static_cast<Wide>(m) - en.value, q_));
    return total;
  }

 private:
  static Int inverse_mod(Int a, Int q) {
    Int r0 = q, r1 = mod(a, q), s0 = 0, s1 = 1;
    while (r1 != 0) {
      const Int k = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
      std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
    }
    return mod(s0, q);
  }

  void tabulate() {
    dense_.assign(static_cast<std::size_t>(q_), 0);
    const Int q = q_, bb = b_, cc = c_, dd = d_;
#pragma omp parallel
    {
      std::vector<Int> local(static_cast<std::size_t>(q), 0);
#pragma omp for schedule(static) nowait
      for (Int y = 0; y < q; ++y) {
        const Int by2 = mulmod(bb, mulmod(y, y, q), q);
        const Int dy = mulmod(dd, y, q);
        for (Int z = 0; z < q; ++z) {
          Wide v = static_cast<Wide>(by2) + static_cast<Wide>(z) * ((static_cast<Wide>(cc) * z + dy) % q);
          ++local[static_cast<std::size_t>(v % q)];
        }
      }
#pragma omp critical
      for (std::size_t i = 0; i < local.size(); ++i) dense_[i] += local[i];
    }
  }

  // #{(y, z) mod q : B(y, z) = r}
  Int binary_count(Int r) {
    if (mode_ == Mode::Dense) return dense_[static_cast<std::size_t>(r)];
    const Int cls = residue_class(r, p_, t_);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (auto it = by_class_.find(cls); it != by_class_.end()) return it->second;
    }
    Int total = 0;
    const Int q = q_;
    if (mode_ == Mode::Linear) {
      // (d y) z = r - b y^2: solvable iff 2^j divides the right side, j = v(d y)
#pragma omp parallel for reduction(+ : total)
      for (Int y = 0; y < q; ++y) {
        const Int g = mulmod(d_, y, q);
        const Int rhs = mod(static_cast<Wide>(r) - mulmod(b_, mulmod(y, y, q), q), q);
        const Int pj = g == 0 ? q : Int{1} << valuation(g, 2);
        if (rhs % pj == 0) total += pj;
      }
    } else {
#pragma omp parallel for reduction(+ : total)
      for (Int y = 0; y < q; ++y) {
        const Int rhs = mod(static_cast<Wide>(r) - mulmod(b_, mulmod(y, y, q), q), q);
        total += squares_[static_cast<std::size_t>(mulmod(c_inverse_, rhs, q))];
      }
    }
    std::lock_guard<std::mutex> lock(mutex_);
    by_class_[cls] = total;
    return total;
  }

  Int b_ = 0, c_ = 0, d_ = 0, c_inverse_ = 1;
  Mode mode_ = Mode::Dense;
  std::vector<Int> squares_;
  std::vector<Entry> first_;
  std::vector<Int> dense_;
  std::mutex mutex_;
  std::map<Int, Int> by_class_;
};

// Generic: depth-first lifting of solutions mod p^k to mod p^(k+1).
class LiftingCounter final : public DensityEngine::Counter {
 public:
  LiftingCounter(const TernaryForm& form, Int p, int t) : Counter(p, t), form_(form) {}

 protected:
  Int compute(Int m) override {
    const Int p = p_;
    const Int p3 = p * p * p;
    Int total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
    for (Int digit = 0; digit < p3; ++digit) {
      Vec3 x{digit % p, (digit / p) % p, digit / (p * p)};
      if (mod(static_cast<Wide>(evaluate(form_, x)) - m, p) == 0) total += descend(x, 1, p, m);
    }
    return total;
  }

 private:
  Int descend(const Vec3& x, int k, Int pk, Int m) const {
    if (k == t_) return 1;
    const Int next = pk * p_;
    Int total = 0;
    for (Int i = 0; i < p_; ++i)
      for (Int j = 0; j < p_; ++j)
        for (Int l = 0; l < p_; ++l) {
          Vec3 y{x[0] + i * pk, x[1] + j * pk, x[2] + l * pk};
          if (mod(static_cast<Wide>(evaluate(form_, y)) - m, next) == 0) total += descend(y, k + 1, next, m);
        }
    return total;
  }

  TernaryForm form_;
};

}  // namespace

Int DensityEngine::count(const TernaryForm& form, Int n, Int p, int t) {
  if (t < 1) throw PreconditionError("count_solutions_mod: exponent t must be >= 1");
  if (!is_prime(p)) throw PreconditionError("count_solutions_mod: " + std::to_string(p) + " is not prime");
  std::shared_ptr<Counter> counter;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(form, p, t);
    auto it = counters_.find(key);
    if (it != counters_.end()) {
      counter = it->second;
    } else {
      const Wide q = static_cast<Wide>(ipow(p, t));
      auto refuse = [&](Wide work) {
        if (work > work_limit_) {
          throw ResourceError("density count mod " + std::to_string(p) + "^" + std::to_string(t) + " needs ~" +
                              std::to_string(static_cast<long long>(work)) + " operations (work limit " +
                              std::to_string(work_limit_) + ")");
        }
      };
      auto separated_work = [&](Int b, Int c, Int d) -> Wide {
        const Int qi = static_cast<Int>(q);
        if (SeparatedCounter::mode_for(b, c, d, qi) == SeparatedCounter::Mode::Dense) return q * q + q;
        return q * (4 * t + 8);
      };
      if (p != 2) {
        refuse(q * (2 * t + 4));
        counter = std::make_shared<DiagonalCounter>(form, p, t);
      } else if (form.e == 0 && form.f == 0) {
        refuse(separated_work(form.b, form.c, form.d));
        counter = std::make_shared<SeparatedCounter>(form.a, form.b, form.c, form.d, p, t);
      } else if (form.d == 0 && form.f == 0) {
        refuse(separated_work(form.a, form.c, form.e));
        counter = std::make_shared<SeparatedCounter>(form.b, form.a, form.c, form.e, p, t);
      } else if (form.d == 0 && form.e == 0) {
        refuse(separated_work(form.a, form.b, form.f));
        counter = std::make_shared<SeparatedCounter>(form.c, form.a, form.b, form.f, p, t);
      } else {
        refuse(two_adic_work(t));
        counter = std::make_shared<LiftingCounter>(form, p, t);
      }
      counters_.emplace(key, counter);
    }
  }
  return counter->count(n);
}

int DensityEngine::starting_exponent(Int n, Int p) {
  if (n == 0) throw PreconditionError("local density of 0 is not defined");
  return valuation(n, p) + (p == 2 ? 5 : 3);
}

LocalDensity DensityEngine::density(const TernaryForm& form, Int n, Int p) {
  const int t = starting_exponent(n, p);
  Rational at_t = Rational(mpz_class(static_cast<long>(count(form, n, p, t)))) / pow_rational(p, 2 * t);
  Rational at_next = Rational(mpz_class(static_cast<long>(count(form, n, p, t + 1)))) / pow_rational(p, 2 * t + 2);
  if (at_t != at_next) {
    throw ConsistencyError("local density of " + to_string(form) + " at n=" + std::to_string(n) + ", p=" +
                           std::to_string(p) + " did not stabilize: " + to_string(at_t) + " at t=" + std::to_string(t) +
                           " vs " + to_string(at_next) + " at t=" + std::to_string(t + 1));
  }
  return {at_t, p, t, true};
}

Int count_solutions_mod(const TernaryForm& form, Int n, Int p, int t, Int work_limit) {
  DensityEngine engine(work_limit);
  return engine.count(form, n, p, t);
}

LocalDensity local_density(const TernaryForm& form, Int n, Int p, Int work_limit) {
  DensityEngine engine(work_limit);
  return engine.density(form, n, p);
}

namespace {

void require_odd_prime(Int p) {
  if (p == 2 || !is_prime(p)) throw PreconditionError(std::to_string(p) + " is not an odd prime");
}

}  // namespace

Rational density_formula_odd(Int n, Int p) {
  require_odd_prime(p);
  if (n <= 0) throw PreconditionError("density formula needs n >= 1");
  const int v = valuation(n, p);
  const Int m = n / ipow(p, v);
  const Rational base = Rational(1) + Rational(1) / pow_rational(p, 1);
  if (v % 2 == 0) {
    const int k = v / 2;
    return base + Rational(kronecker(-m, p) - 1) / pow_rational(p, k + 1);
  }
  const int k = (v - 1) / 2;
  return base * (Rational(1) - Rational(1) / pow_rational(p, k + 1));
}

PsiValue psi_value(Int n) {
  if (n < 1) throw PreconditionError("psi needs n >= 1");
  PsiValue out;
  out.n = n;
  Int k = n;
  while (k % 4 == 0) {
    k /= 4;
    ++out.a;
  }
  if (k % 8 == 7) {
    out.k_class = PsiCase::SevenMod8;
    out.value = 0;
  } else if (k % 8 == 3) {
    out.k_class = PsiCase::ThreeMod8;
    out.value = Rational(1) / pow_rational(2, out.a);
  } else {
    out.k_class = PsiCase::OneOrTwoMod4;
    out.value = Rational(3) / pow_rational(2, out.a + 1);
  }
  return out;
}

Rational psi(Int n) { return psi_value(n).value; }

Rational gamma_p(Int n, Int p) {
  require_odd_prime(p);
  if (n <= 0) throw PreconditionError("gamma_p needs n >= 1");
  const int v = valuation(n, p);
  const Int m = n / ipow(p, v);
  if (v % 2 == 0) {
    const int k = v / 2;
    return Rational(p - 1) / pow_rational(p, 1 + k) * Rational(1 - kronecker(-m, p));
  }
  const int k = (v - 1) / 2;
  return Rational(p - 1) / pow_rational(p, 1 + k) * (Rational(1) + Rational(1) / pow_rational(p, 1));
}

Rational p_factor(Int n) {
  if (n < 1) throw PreconditionError("p_factor needs n >= 1");
  Rational out = 1;
  Int rest = n;
  while (rest % 2 == 0) rest /= 2;
  for (Int q = 3; q * q <= rest; q += 2) {
    if (rest % q != 0) continue;
    int v = 0;
    while (rest % q == 0) {
      rest /= q;
      ++v;
    }
    if (v < 2) continue;
    const int b = v / 2;
    const Int m = n / ipow(q, 2 * b);
    Rational term = 0;
    for (int i = 0; i < b; ++i) term += Rational(1) / pow_rational(q, i);
    term += Rational(1) / (pow_rational(q, b) * (Rational(1) - Rational(kronecker(-m, q)) / pow_rational(q, 1)));
    out *= term;
  }
  return out;
}

Int sqrt_count_mod_2t(Int c, int t) {
  if (t < 3) throw PreconditionError("sqrt_count_mod_2t needs t >= 3");
  if (c < 0 || c >= (Int{1} << t)) throw PreconditionError("sqrt_count_mod_2t needs 0 <= c < 2^t");
  const int s = (t - 3) / 2;
  const int delta = (t - 3) % 2;
  if (c == 0) return Int{1} << (s + 1 + delta);
  const int v = valuation(c, 2);
  if (v % 2 != 0) return 0;
  const int m = v / 2;
  const Int u = c >> v;
  if (m <= s) return u % 8 == 1 ? Int{1} << (m + 2) : 0;
  if (m == s + 1 && u == 1) return Int{1} << (s + 1 + delta);
  return 0;
}

int character_sum_check(Int a, Int p) {
  require_odd_prime(p);
  if (a % p == 0) throw PreconditionError("character sum needs p not dividing a");
  int total = 0;
  for (Int y = 0; y < p; ++y) total += kronecker(mod(static_cast<Wide>(y) * y + a, p), p);
  return total;
}

Int least_negative_nonresidue(Int p) {
  require_odd_prime(p);
  Int u = 1;
  while (kronecker(-u, p) != -1) ++u;
  return u;
}

}  // namespace tqf
