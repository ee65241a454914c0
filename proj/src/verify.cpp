#include "tqf/verify.hpp"

#include <functional>
#include <random>
#include <set>

#include <json.hpp>

#include "tqf/isometry.hpp"
#include "tqf/lattice_count.hpp"
#include "tqf/watson.hpp"

namespace tqf {

using nlohmann::json;

namespace {

Rational q(Int n) { return Rational(mpz_class(static_cast<long>(n))); }

// Runs body, turning any exception into a failure entry.
SuiteResult run_suite(const std::string& name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult s;
  s.name = name;
  try {
    body(s);
  } catch (const std::exception& e) {
    s.failures.push_back(std::string("exception: ") + e.what());
  }
  return s;
}

void expect(SuiteResult& s, bool ok, const std::function<std::string()>& what) {
  ++s.checked;
  if (!ok) s.failures.push_back(what());
}

std::string show(const Rational& r) { return to_string(r); }

}  // namespace

IdentityReport check_identity(const std::string& id, Int p, Int n_max, const std::vector<WeightedForm>& rhs) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  std::vector<Int> ns;
  ns.reserve(static_cast<std::size_t>(2 * n_max));
  for (Int n = 1; n <= n_max; ++n) {
    ns.push_back(checked_mul(p * p, n));
    ns.push_back(n);
  }
  const std::vector<Int> sv = s_values(ns);
  std::vector<ThetaVector> thetas;
  for (const auto& term : rhs) thetas.push_back(theta(term.form, n_max));

  IdentityReport r;
  r.identity = id;
  r.p = p;
  r.n_max = n_max;
  for (Int n = 1; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(2 * (n - 1));
    const Int lhs = sv[i] - p * sv[i + 1];
    Rational total = 0;
    for (std::size_t k = 0; k < rhs.size(); ++k) total += rhs[k].weight * q(thetas[k].at(n));
    if (total.get_den() != 1)
      throw ConsistencyError(id + ": right side " + show(total) + " at n=" + std::to_string(n) + " is not an integer");
    const Int value = total.get_num().get_si();
    if (value != lhs) r.failures.push_back({n, lhs, value});
  }
  r.pass = r.failures.empty();
  return r;
}

IdentityReport verify_three_squares_p3(Int n_max) {
  return check_identity("thm1.1", 3, n_max, {{2, {1, 1, 3, 0, 0, 1}}, {-4, {4, 3, 4, 0, 4, 0}}});
}

IdentityReport verify_three_squares_p5(Int n_max) {
  return check_identity("thm1.2", 5, n_max, {{4, {2, 2, 2, -1, 1, 1}}, {-8, {7, 8, 8, -4, 8, 8}}});
}

IdentityReport verify_genus_identity(GenusStore& store, Int p, Int n_max) {
  std::vector<WeightedForm> terms;
  for (const auto& c : store.tg1(p).classes) terms.push_back({Rational(48) / q(c.aut), c.form});
  for (const auto& c : store.tg2(p).classes) terms.push_back({Rational(-96) / q(c.aut), c.form});
  return check_identity("thm1.3", p, n_max, terms);
}

std::vector<WeightedForm> p73_expansion_terms() {
  return {{24, {31, 5, 11, 1, -14, 6}},  {24, {15, 14, 10, 7, 4, 16}}, {12, {11, 7, 20, 7, 2, 4}},
          {12, {7, 11, 21, 11, 2, 4}},   {-48, {31, 20, 44, 4, -28, 12}}, {-48, {15, 56, 40, 28, 8, 32}},
          {-24, {11, 28, 80, 28, 4, 8}}, {-24, {7, 44, 84, 44, 4, 8}}};
}

IdentityReport verify_p73_expansion(Int n_max) { return check_identity("eq7.2", 73, n_max, p73_expansion_terms()); }

std::vector<SuiteResult> verify_density_suites(Int work_limit) {
  const TernaryForm three{1, 1, 1, 0, 0, 0};
  const TernaryForm g1{-1, 0, 0, 1, 0, 0};  // yz - x^2
  const TernaryForm g2{-1, 0, 0, 4, 0, 0};  // 4yz - x^2
  std::vector<SuiteResult> out;

  out.push_back(run_suite("odd-density-formula", [&](SuiteResult& s) {
    for (Int p : {3, 5, 7, 11}) {
      DensityEngine engine(work_limit);
      for (Int n = 1; n <= 200; ++n) {
        const Rational d = engine.density(three, n, p).value;
        const Rational f = density_formula_odd(n, p);
        expect(s, d == f, [&] { return "p=" + std::to_string(p) + " n=" + std::to_string(n) + ": " + show(d) + " != " + show(f); });
      }
    }
  }));

  out.push_back(run_suite("gamma-closed-form", [&](SuiteResult& s) {
    for (Int p : {3, 5, 7, 11})
      for (Int n = 1; n <= 200; ++n) {
        const Rational g = gamma_p(n, p);
        const Rational h = q(p) * (density_formula_odd(p * p * n, p) - density_formula_odd(n, p));
        expect(s, g == h, [&] { return "p=" + std::to_string(p) + " n=" + std::to_string(n); });
      }
  }));

  DensityEngine two(work_limit);
  auto d0 = [&](Int n) { return two.density(three, n, 2).value; };
  auto d1 = [&](Int n) { return two.density(g1, n, 2).value; };
  auto d2 = [&](Int n) { return two.density(g2, n, 2).value; };

  out.push_back(run_suite("psi-is-2-adic-density", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n)
      expect(s, psi(n) == d0(n), [&] { return "n=" + std::to_string(n) + ": psi " + show(psi(n)) + " density " + show(d0(n)); });
  }));

  out.push_back(run_suite("2-adic-scaling-and-zeros", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) {
      expect(s, d0(4 * n) == d0(n) / 2, [&] { return "d(4n) != d(n)/2 at n=" + std::to_string(n); });
      if (n % 8 == 7) expect(s, d0(n) == 0, [&] { return "n=" + std::to_string(n); });
    }
  }));

  out.push_back(run_suite("2-adic-density-values", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) {
      if (n % 8 == 3) expect(s, d0(n) == 1, [&] { return "n=" + std::to_string(n); });
      if (n % 4 == 1 || n % 4 == 2) expect(s, d0(n) == Rational(3, 2), [&] { return "n=" + std::to_string(n); });
    }
  }));

  out.push_back(run_suite("psi-table", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) {
      const PsiValue v = psi_value(n);
      const Int k = n / ipow(4, v.a);
      const bool shape = k % 4 != 0 && (v.k_class == PsiCase::SevenMod8) == (k % 8 == 7) &&
                         (v.k_class == PsiCase::ThreeMod8) == (k % 8 == 3);
      expect(s, shape, [&] { return "classification at n=" + std::to_string(n); });
      expect(s, psi(4 * n) == psi(n) / 2, [&] { return "psi(4n) != psi(n)/2 at n=" + std::to_string(n); });
    }
  }));

  out.push_back(run_suite("nonresidue-form-density", [&](SuiteResult& s) {
    for (Int p : {3, 5, 7}) {
      const Int u = least_negative_nonresidue(p);
      const TernaryForm g{u, p, p * u, 0, 0, 0};
      DensityEngine engine(work_limit);
      for (Int n = 1; n <= 150; ++n) {
        const Rational d = engine.density(g, n, p).value;
        const Rational want = q(p) / q(p - 1) * gamma_p(n, p);
        expect(s, d == want, [&] { return "p=" + std::to_string(p) + " n=" + std::to_string(n) + ": " + show(d) + " != " + show(want); });
      }
    }
  }));

  out.push_back(run_suite("nonresidue-form-scaling", [&](SuiteResult& s) {
    for (Int p : {3, 5, 7}) {
      const Int u = least_negative_nonresidue(p);
      const TernaryForm g{u, p, p * u, 0, 0, 0};
      DensityEngine engine(work_limit);
      for (Int n = 1; n <= 30; ++n) {
        if (n % (p * p) == 0) continue;
        const Rational base = engine.density(g, n, p).value;
        for (int k = 1; k <= 2; ++k) {
          const Rational scaled = engine.density(g, n * ipow(p, 2 * k), p).value;
          expect(s, scaled == base / q(ipow(p, k)),
                 [&] { return "p=" + std::to_string(p) + " n=" + std::to_string(n) + " k=" + std::to_string(k); });
        }
      }
    }
  }));

  out.push_back(run_suite("character-sum", [&](SuiteResult& s) {
    for (Int p : {3, 5, 7, 11, 13})
      for (Int a = 1; a < p; ++a)
        expect(s, character_sum_check(a, p) == -1, [&] { return "p=" + std::to_string(p) + " a=" + std::to_string(a); });
  }));

  out.push_back(run_suite("square-roots-mod-2^t", [&](SuiteResult& s) {
    for (int t = 3; t <= 12; ++t) {
      const Int m = Int{1} << t;
      std::vector<Int> direct(static_cast<std::size_t>(m), 0);
      for (Int x = 0; x < m; ++x) ++direct[static_cast<std::size_t>(x * x % m)];
      for (Int c = 0; c < m; ++c)
        expect(s, sqrt_count_mod_2t(c, t) == direct[static_cast<std::size_t>(c)],
               [&] { return "t=" + std::to_string(t) + " c=" + std::to_string(c); });
    }
  }));

  out.push_back(run_suite("density-yz-x2", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) {
      const PsiValue v = psi_value(n);
      Rational want = Rational(3, 2);
      if (v.k_class == PsiCase::ThreeMod8) want -= Rational(1) / q(Int{1} << (v.a + 1));
      if (v.k_class == PsiCase::OneOrTwoMod4) want -= Rational(3) / q(Int{1} << (v.a + 2));
      expect(s, d1(n) == want, [&] { return "n=" + std::to_string(n) + ": " + show(d1(n)) + " != " + show(want); });
    }
  }));

  out.push_back(run_suite("density-4yz-x2", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) {
      const PsiValue v = psi_value(n);
      Rational want = 3;
      if (v.k_class == PsiCase::ThreeMod8) want -= Rational(2) / q(Int{1} << v.a);
      if (v.k_class == PsiCase::OneOrTwoMod4) want -= Rational(3) / q(Int{1} << v.a);
      expect(s, d2(n) == want, [&] { return "n=" + std::to_string(n) + ": " + show(d2(n)) + " != " + show(want); });
    }
  }));

  out.push_back(run_suite("psi-from-model-densities", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) expect(s, psi(n) == 2 * d1(n) - d2(n), [&] { return "n=" + std::to_string(n); });
  }));
  out.push_back(run_suite("model-density-doubling", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) expect(s, 2 * d1(n) == d2(4 * n), [&] { return "n=" + std::to_string(n); });
  }));
  out.push_back(run_suite("model-density-relation", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) expect(s, 4 * d1(n) - d2(n) == 3, [&] { return "n=" + std::to_string(n); });
  }));
  out.push_back(run_suite("model-density-initial-values", [&](SuiteResult& s) {
    for (Int n = 1; n <= 256; ++n) {
      if (n % 4 == 0) continue;
      const Rational want = n % 8 == 7 ? 3 : n % 8 == 3 ? 1 : 0;
      expect(s, d2(n) == want, [&] { return "n=" + std::to_string(n); });
    }
  }));
  return out;
}

std::vector<Int> default_test_primes() { return {3, 5, 7, 11, 13, 17, 19, 23, 73}; }

std::vector<SuiteResult> verify_genus_properties(GenusStore& store, const std::vector<Int>& primes) {
  std::vector<SuiteResult> out;
  out.push_back(run_suite("genus-mass", [&](SuiteResult& s) {
    for (Int p : primes) {
      const GenusSet g1 = store.tg1(p), g2 = store.tg2(p);
      expect(s, g1.mass == mass_closed_form(p), [&] { return "TG1 p=" + std::to_string(p) + " mass " + show(g1.mass); });
      expect(s, g2.mass == g1.mass, [&] { return "TG2 p=" + std::to_string(p) + " mass " + show(g2.mass); });
      std::multiset<Int> a1, a2;
      for (const auto& c : g1.classes) a1.insert(c.aut);
      for (const auto& c : g2.classes) a2.insert(c.aut);
      expect(s, a1 == a2, [&] { return "automorph orders differ at p=" + std::to_string(p); });
    }
  }));
  out.push_back(run_suite("genus-inequivalence", [&](SuiteResult& s) {
    for (Int p : primes)
      for (const GenusSet& g : {store.tg1(p), store.tg2(p)})
        for (std::size_t i = 0; i < g.classes.size(); ++i)
          for (std::size_t j = i + 1; j < g.classes.size(); ++j)
            expect(s, !equivalent(g.classes[i].form, g.classes[j].form),
                   [&] { return to_string(g.classes[i].form) + " ~ " + to_string(g.classes[j].form); });
  }));
  out.push_back(run_suite("genus-tg2-shape", [&](SuiteResult& s) {
    for (Int p : primes)
      for (const auto& c : store.tg2(p).classes) {
        const TernaryForm& f = c.form;
        expect(s, discriminant(f) == 16 * p * p && f.d % 2 == 0 && f.e % 2 == 0 && f.f % 2 == 0,
               [&] { return "shape of " + to_string(f); });
        const ThetaVector th = theta(f, 200);
        for (Int n = 1; n <= 200; ++n)
          if (n % 4 == 1 || n % 4 == 2)
            expect(s, th.at(n) == 0, [&] { return to_string(f) + " represents " + std::to_string(n); });
        expect(s, is_convenient_shape_2(to_convenient_shape_2(f).form), [&] { return "shape 2 of " + to_string(f); });
      }
  }));
  out.push_back(run_suite("genus-residues", [&](SuiteResult& s) {
    for (Int p : primes) {
      const int want = p % 4 == 1 ? -1 : 1;
      for (const auto& c : store.tg1(p).classes) {
        const ThetaVector th = theta(c.form, 200);
        for (Int n = 1; n <= 200; ++n)
          if (n % p != 0 && th.at(n) > 0)
            expect(s, kronecker(n, p) == want, [&] { return to_string(c.form) + " represents " + std::to_string(n); });
      }
    }
  }));
  out.push_back(run_suite("genus-vanishing", [&](SuiteResult& s) {
    // n = 7 (mod 8): s(n) = s(p^2 n) = 0, so the two weighted sums balance
    for (Int p : primes) {
      const GenusSet g1 = store.tg1(p), g2 = store.tg2(p);
      for (Int n = 7; n <= 200; n += 8) {
        expect(s, tqf::s(n) == 0 && tqf::s(p * p * n) == 0, [&] { return "s does not vanish at n=" + std::to_string(n); });
        expect(s, 48 * weighted_rep_sum(g1, n) == 96 * weighted_rep_sum(g2, n),
               [&] { return "p=" + std::to_string(p) + " n=" + std::to_string(n); });
      }
    }
  }));
  out.push_back(run_suite("genus-phi-inverse", [&](SuiteResult& s) {
    for (Int p : primes) {
      std::set<TernaryForm> want, got;
      for (const auto& c : store.tg1(p).classes) want.insert(c.form);
      for (const auto& c : store.tg2(p).classes) got.insert(phi_inverse(c.form));
      expect(s, want == got, [&] { return "phi_inverse(TG2) != TG1 at p=" + std::to_string(p); });
    }
  }));
  return out;
}

std::vector<SuiteResult> verify_watson_properties(GenusStore& store, const std::vector<Int>& primes) {
  std::vector<GenusClass> classes;
  for (Int p : primes)
    for (const auto& c : store.tg1(p).classes) classes.push_back(c);

  std::vector<SuiteResult> out;
  out.push_back(run_suite("watson-involution", [&](SuiteResult& s) {
    std::vector<TernaryForm> forms;
    for (const auto& c : classes) forms.push_back(c.form);
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<Int> diag(1, 12), cross(-6, 6);
    while (forms.size() < classes.size() + 20) {
      TernaryForm f{diag(rng), diag(rng), diag(rng), cross(rng), cross(rng), cross(rng)};
      if (is_positive_definite(f) && is_primitive(f) && discriminant(f) % 2 != 0) forms.push_back(f);
    }
    for (const auto& f : forms)
      expect(s, lambda_m(lambda_m(f, 4), 4) == reduce(f).form, [&] { return "lambda_4^2 of " + to_string(f); });
  }));
  out.push_back(run_suite("watson-phi-lambda", [&](SuiteResult& s) {
    for (const auto& c : classes)
      expect(s, phi(c.form) == lambda_m(c.form, 4), [&] { return to_string(c.form); });
  }));
  out.push_back(run_suite("watson-scaling", [&](SuiteResult& s) {
    for (const auto& c : classes) {
      const ThetaVector a = theta(c.form, 300);
      const ThetaVector b = theta(phi(c.form), 1200);
      for (Int n = 0; n <= 300; ++n)
        expect(s, a.at(n) == b.at(4 * n), [&] { return to_string(c.form) + " n=" + std::to_string(n); });
    }
  }));
  out.push_back(run_suite("watson-transport", [&](SuiteResult& s) {
    for (const auto& c : classes) {
      const WatsonLattice lat = lambda_lattice(c.form, 4);
      const AutomorphGroup source = automorphs(c.form);
      const AutomorphGroup target = automorphs(lat.image);
      std::set<UnimodularMap> image;
      for (const auto& r : source.elements) image.insert(transport_automorph(lat, r));
      expect(s, image.size() == source.order() && image.size() == target.order(),
             [&] { return "transport not bijective on " + to_string(c.form); });
      for (const auto& u : image) expect(s, target.contains(u), [&] { return "transported map outside Aut of image"; });
      for (const auto& r1 : source.elements)
        for (const auto& r2 : source.elements)
          expect(s, transport_automorph(lat, r1 * r2) == transport_automorph(lat, r1) * transport_automorph(lat, r2),
                 [&] { return "transport is not multiplicative on " + to_string(c.form); });
    }
  }));
  out.push_back(run_suite("watson-lattice", [&](SuiteResult& s) {
    for (const auto& c : classes) {
      const TernaryForm s1 = to_convenient_shape_1(c.form).form;
      expect(s, lambda_lattice(s1, 4).basis == Mat3::diagonal(2, 4, 4), [&] { return "shape 1 basis of " + to_string(s1); });
      const TernaryForm s2 = to_convenient_shape_2(phi(c.form)).form;
      expect(s, lambda_lattice(s2, 4).basis == Mat3::diagonal(2, 1, 1), [&] { return "shape 2 basis of " + to_string(s2); });
      for (Int m : {2, 3, 4, 5, 8}) {
        const WatsonLattice lat = lambda_lattice(c.form, m);
        const Mat3 g = gram(c.form);
        for (int col = 0; col < 3; ++col) {
          const Vec3 v = lat.basis.column(col);
          const Vec3 gv = g * v;
          expect(s, mod(gv[0], m) == 0 && mod(gv[1], m) == 0 && mod(gv[2], m) == 0 && mod(evaluate(c.form, v), m) == 0,
                 [&] { return "basis column outside the lattice, m=" + std::to_string(m); });
        }
        expect(s, lat.basis * lat.cofactor == Mat3::diagonal(m, m, m), [&] { return "M N != m I"; });
      }
    }
  }));
  return out;
}

FullReport verify_all(GenusStore& store, Int work_limit) {
  FullReport r;
  r.identities.push_back(verify_three_squares_p3(1000));
  r.identities.push_back(verify_three_squares_p5(1000));
  for (Int p : {3, 5, 7, 11, 13}) r.identities.push_back(verify_genus_identity(store, p, 500));
  r.identities.push_back(verify_genus_identity(store, 73, 200));
  r.identities.push_back(verify_p73_expansion(200));
  for (auto& s : verify_density_suites(work_limit)) r.suites.push_back(std::move(s));
  for (auto& s : verify_genus_properties(store, default_test_primes())) r.suites.push_back(std::move(s));
  for (auto& s : verify_watson_properties(store, default_test_primes())) r.suites.push_back(std::move(s));
  r.pass = true;
  for (const auto& i : r.identities) r.pass = r.pass && i.pass;
  for (const auto& s : r.suites) r.pass = r.pass && s.pass();
  return r;
}

namespace {

json identity_json(const IdentityReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"n", f.n}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return {{"identity", r.identity}, {"p", r.p}, {"n_max", r.n_max}, {"failures", failures}, {"pass", r.pass}};
}

json suite_json(const SuiteResult& s) {
  return {{"name", s.name}, {"checked", s.checked}, {"failures", s.failures}, {"pass", s.pass()}};
}

}  // namespace

std::string to_json(const IdentityReport& report) { return identity_json(report).dump(); }
std::string to_json(const SuiteResult& suite) { return suite_json(suite).dump(); }

std::string to_json(const FullReport& report) {
  json ids = json::array(), suites = json::array();
  for (const auto& i : report.identities) ids.push_back(identity_json(i));
  for (const auto& s : report.suites) suites.push_back(suite_json(s));
  return json{{"identities", ids}, {"suites", suites}, {"pass", report.pass}}.dump();
}

}  // namespace tqf
