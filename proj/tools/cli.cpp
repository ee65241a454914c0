#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "tqf/genus.hpp"
#include "tqf/isometry.hpp"
#include "tqf/lattice_count.hpp"
#include "tqf/local.hpp"
#include "tqf/parallel.hpp"
#include "tqf/verify.hpp"
#include "tqf/watson.hpp"

namespace tqf::cli {

using nlohmann::json;

namespace {

json matrix_json(const Mat3& m) {
  return json::array({json::array({m(0, 0), m(0, 1), m(0, 2)}), json::array({m(1, 0), m(1, 1), m(1, 2)}),
                      json::array({m(2, 0), m(2, 1), m(2, 2)})});
}

std::string tsv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(std::ostream& out, const json& doc, const std::string& format) {
  if (format == "tsv" && doc.is_object()) {
    for (const auto& [key, value] : doc.items()) out << key << '\t' << tsv_cell(value) << '\n';
    return;
  }
  out << doc.dump() << '\n';
}

json genus_doc(const GenusSet& g) { return json::parse(genus_to_json(g)); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral ternary quadratic forms: reduction, isometry, representation counts, genera, local densities"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string cache;
  int threads = 0;
  std::string format = "json";
  Int work_limit = kDefaultWorkLimit;
  app.add_option("--cache", cache, "Genus cache file (JSON); falls back to $TERNARY_CACHE, default none")
      ->envname("TERNARY_CACHE");
  app.add_option("--threads", threads, "Worker threads; 0 = runtime default")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--work-limit", work_limit, "Operation budget for congruence counting")->check(CLI::PositiveNumber);

  std::string form_text, other_text, target;
  Int n = 0, p = 0, m = 0, bound = 0, n_max = 0;
  std::string label = "TG1";

  auto* disc = app.add_subcommand("disc", "Discriminant 4abc + def - ad^2 - be^2 - cf^2");
  disc->add_option("form", form_text, "a,b,c,d,e,f")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "Canonical reduced form and the map to it");
  reduce_cmd->add_option("form", form_text, "a,b,c,d,e,f")->required();

  auto* count = app.add_subcommand("count", "Number of representations of n");
  count->add_option("form", form_text, "a,b,c,d,e,f")->required();
  count->add_option("n", n, "Target value")->required();

  auto* theta_cmd = app.add_subcommand("theta", "Representation numbers for 0..bound");
  theta_cmd->add_option("form", form_text, "a,b,c,d,e,f")->required();
  theta_cmd->add_option("bound", bound, "Largest n")->required()->check(CLI::NonNegativeNumber);

  auto* auts = app.add_subcommand("auts", "Order of the integral automorph group");
  auts->add_option("form", form_text, "a,b,c,d,e,f")->required();

  auto* equiv = app.add_subcommand("equiv", "Integral equivalence test with witness");
  equiv->add_option("form", form_text, "a,b,c,d,e,f")->required();
  equiv->add_option("other", other_text, "a,b,c,d,e,f")->required();

  auto* genus = app.add_subcommand("genus", "Classes of TG1 (discriminant p^2) or TG2 (their phi images)");
  genus->add_option("p", p, "Odd prime")->required();
  genus->add_option("--label", label, "TG1 or TG2")->check(CLI::IsMember({"TG1", "TG2"}));

  auto* mass = app.add_subcommand("mass", "Mass of TG1 from enumeration and from (p - 1)/48");
  mass->add_option("p", p, "Odd prime")->required();

  auto* phi_cmd = app.add_subcommand("phi", "<a,b,c,d,e,f> -> <a,4b,4c,4d,2e,2f> on a Shape 1 representative");
  phi_cmd->add_option("form", form_text, "a,b,c,d,e,f")->required();

  auto* phi_inv = app.add_subcommand("phi-inv", "Inverse of phi through a Shape 2 representative");
  phi_inv->add_option("form", form_text, "a,b,c,d,e,f")->required();

  auto* lambda = app.add_subcommand("lambda", "Watson's lambda_m: lattice basis and rescaled form");
  lambda->add_option("form", form_text, "a,b,c,d,e,f")->required();
  lambda->add_option("m", m, "Modulus")->required()->check(CLI::PositiveNumber);

  auto* density = app.add_subcommand("density", "Local density at p by congruence counting");
  density->add_option("form", form_text, "a,b,c,d,e,f")->required();
  density->add_option("n", n, "Target value (nonzero)")->required();
  density->add_option("p", p, "Prime")->required();

  auto* verify = app.add_subcommand("verify", "Check an identity or run every suite");
  verify->add_option("identity", target, "thm1.1 | thm1.2 | thm1.3 | eq7.2 | densities | all")
      ->required()
      ->check(CLI::IsMember({"thm1.1", "thm1.2", "thm1.3", "eq7.2", "densities", "all"}));
  verify->add_option("--p", p, "Prime for thm1.3");
  verify->add_option("--n-max", n_max, "Largest n checked")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    set_thread_count(threads);
    auto store = [&] { return GenusStore(cache); };
    json doc;
    int code = kOk;

    if (disc->parsed()) {
      doc = {{"disc", discriminant(parse_form(form_text))}};
    } else if (reduce_cmd->parsed()) {
      const MappedForm r = reduce(parse_form(form_text));
      doc = {{"form", to_string(r.form)}, {"map", matrix_json(r.map.matrix())}};
    } else if (count->parsed()) {
      doc = {{"count", rep_count(parse_form(form_text), n)}};
    } else if (theta_cmd->parsed()) {
      doc = {{"counts", theta(parse_form(form_text), bound).counts}};
    } else if (auts->parsed()) {
      doc = {{"order", automorphs(parse_form(form_text)).order()}};
    } else if (equiv->parsed()) {
      const auto w = equivalent(parse_form(form_text), parse_form(other_text));
      doc = {{"equivalent", w.has_value()}};
      if (w) doc["witness"] = matrix_json(w->matrix());
    } else if (genus->parsed()) {
      GenusStore s = store();
      doc = genus_doc(label == "TG1" ? s.tg1(p) : s.tg2(p));
    } else if (mass->parsed()) {
      GenusStore s = store();
      doc = {{"p", p}, {"mass", to_string(s.tg1(p).mass)}, {"closed_form", to_string(mass_closed_form(p))}};
    } else if (phi_cmd->parsed()) {
      doc = {{"form", to_string(phi(parse_form(form_text)))}};
    } else if (phi_inv->parsed()) {
      doc = {{"form", to_string(phi_inverse(parse_form(form_text)))}};
    } else if (lambda->parsed()) {
      const WatsonLattice lat = lambda_lattice(parse_form(form_text), m);
      doc = {{"basis", matrix_json(lat.basis)},
             {"index", lat.index},
             {"raw", to_string(lat.image)},
             {"form", to_string(lambda_m(lat.form, m))}};
    } else if (density->parsed()) {
      const LocalDensity d = local_density(parse_form(form_text), n, p, work_limit);
      doc = {{"value", to_string(d.value)}, {"t", d.exponent_used}, {"stabilized", d.stabilized}};
    } else if (verify->parsed()) {
      if (target == "thm1.3" && p == 0) throw PreconditionError("verify thm1.3 needs --p");
      std::string text;
      bool pass = false;
      if (target == "all" || target == "densities") {
        FullReport r;
        if (target == "all") {
          GenusStore s = store();
          r = verify_all(s, work_limit);
        } else {
          r.suites = verify_density_suites(work_limit);
          r.pass = true;
          for (const auto& suite : r.suites) r.pass = r.pass && suite.pass();
        }
        text = to_json(r);
        pass = r.pass;
      } else {
        IdentityReport r;
        if (target == "thm1.1") r = verify_three_squares_p3(n_max ? n_max : 1000);
        if (target == "thm1.2") r = verify_three_squares_p5(n_max ? n_max : 1000);
        if (target == "eq7.2") r = verify_p73_expansion(n_max ? n_max : 200);
        if (target == "thm1.3") {
          GenusStore s = store();
          r = verify_genus_identity(s, p, n_max ? n_max : 200);
        }
        text = to_json(r);
        pass = r.pass;
      }
      doc = json::parse(text);
      code = pass ? kOk : kFailed;
    }
    emit(out, doc, format);
    return code;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace tqf::cli
