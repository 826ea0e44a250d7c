#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "torloop/coord_change.hpp"
#include "torloop/error.hpp"
#include "torloop/expr.hpp"
#include "torloop/io.hpp"
#include "torloop/root_data.hpp"
#include "torloop/verify.hpp"

namespace torloop::cli {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  return out;
}

IntVec int_list(const std::string& text, const char* what) {
  IntVec out;
  for (const auto& part : split_commas(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": '" + part + "' is not an integer");
    }
  }
  return out;
}

RatVec rat_list(const std::string& text) {
  RatVec out;
  if (text.empty()) return out;
  for (const auto& part : split_commas(text)) out.push_back(parse_rational(part));
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TORLOOP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("TORLOOP_SEED must be a nonnegative integer");
    }
  }
  return 0;
}

struct Common {
  std::string setup_path;
  std::string structure_path;
  std::string out_path;
  bool text = false;

  TwistedSetup setup() const {
    if (setup_path.empty()) throw InputError("--setup is required");
    std::optional<std::string> structure;
    if (!structure_path.empty()) structure = read_text_file(structure_path);
    return setup_from_json(read_text_file(setup_path), structure);
  }

  void emit(std::ostream& out, const std::string& body) const {
    if (out_path.empty()) out << body;
    else write_text_file(out_path, body);
  }
};

void add_common(CLI::App* app, Common& c, bool setup = true) {
  if (setup) {
    app->add_option("--setup", c.setup_path, "setup JSON file");
    app->add_option("--structure", c.structure_path, "replacement structure-constant file (export format)");
  }
  app->add_option("--out", c.out_path, "write output to this file");
  app->add_flag("--text", c.text, "human-readable output");
}

CocycleParams parse_phi(const std::string& text, std::uint32_t modulus) {
  const auto parts = split_commas(text);
  if (parts.size() != 2) throw InputError("--phi takes two comma-separated scalars mu1,mu2");
  return {parse_scalar(parts[0], modulus), parse_scalar(parts[1], modulus)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"torloop: exact computations in twisted toroidal Lie algebras"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::optional<std::uint64_t> seed;
  std::string phi_text;
  std::size_t samples = 100;

  auto* build = app.add_subcommand("build", "validate a setup and print its eigenspaces, adapted basis and assumptions");
  add_common(build, common);

  std::string expr_a, expr_b;
  auto* bracket = app.add_subcommand("bracket", "bracket of two elements of tau");
  add_common(bracket, common);
  bracket->add_option("--phi", phi_text, "cocycle coefficients mu1,mu2 (default 0,0)");
  bracket->add_option("a", expr_a, "first element")->required();
  bracket->add_option("b", expr_b, "second element")->required();

  std::string box_text = "2";
  auto* roots = app.add_subcommand("roots", "root spaces of tau in a degree box");
  add_common(roots, common);
  roots->add_option("--box", box_text, "bounds |k0|,|k1|,... (one value applies to every axis)");

  std::string alpha_text, degree_text, finite_text, delta_text, lambda_text;
  auto* coroot_cmd = app.add_subcommand("coroot", "coroot of a real root alpha + k0 delta_0 + delta_k");
  add_common(coroot_cmd, common);
  coroot_cmd->add_option("--alpha", alpha_text, "values of alpha on the h(0) basis")->required();
  coroot_cmd->add_option("--degree", degree_text, "k0,k1,...,kn")->required();

  auto* reflect_cmd = app.add_subcommand("reflect", "reflect a functional in a real root");
  add_common(reflect_cmd, common);
  reflect_cmd->add_option("--alpha", alpha_text, "values of alpha on the h(0) basis")->required();
  reflect_cmd->add_option("--degree", degree_text, "k0,k1,...,kn")->required();
  reflect_cmd->add_option("--finite", finite_text, "functional: values on the h(0) basis");
  reflect_cmd->add_option("--delta", delta_text, "functional: coefficients of delta_0..delta_n");
  reflect_cmd->add_option("--lambda", lambda_text, "functional: coefficients of Lambda_0..Lambda_n");

  std::string charge_text;
  auto* charge = app.add_subcommand("normalize-charge", "unimodular change of coordinates taking c to (gcd, 0, ..., 0)");
  add_common(charge, common, false);
  charge->add_option("charge", charge_text, "c0,c1,...,cn")->required();

  std::string algebra_name;
  auto* exp = app.add_subcommand("export", "write basis, structure constants and form of g");
  add_common(exp, common, false);
  exp->add_option("--algebra", algebra_name, "e.g. A1, B2, G2")->required();

  std::string suite, module_path;
  int depth = 3;
  auto* verify = app.add_subcommand("verify", "run a verification suite and print a report");
  add_common(verify, common);
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"jacobi", "cocycle", "invariance", "grading", "assumptions", "automorphism", "ideal-chain",
                             "module-relations", "components", "theta", "roots"}));
  verify->add_option("--samples", samples, "random samples per check");
  verify->add_option("--seed", seed, "random seed (default: TORLOOP_SEED, then 0)");
  verify->add_option("--phi", phi_text, "cocycle coefficients mu1,mu2 (jacobi; default: four standard choices)");
  verify->add_option("--d", depth, "ideal chain depth");
  verify->add_option("--module", module_path, "module JSON file");
  verify->add_option("--box", box_text, "degree bound for root checks");

  std::vector<std::string> argv_store{"torloop"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*build) {
      common.emit(out, setup_summary_json(common.setup()));
      return 0;
    }
    if (*bracket) {
      const TwistedSetup s = common.setup();
      const CocycleParams phi = phi_text.empty() ? CocycleParams{} : parse_phi(phi_text, s.modulus());
      const TauElement a = parse_element(s, expr_a), b = parse_element(s, expr_b);
      const std::string result = to_string(s, tau_bracket(s, a, b, phi));
      if (common.text) {
        common.emit(out, result + "\n");
      } else {
        json j;
        j["a"] = to_string(s, a);
        j["b"] = to_string(s, b);
        j["phi"] = {phi.mu1.to_string(), phi.mu2.to_string()};
        j["result"] = result;
        common.emit(out, j.dump(2) + "\n");
      }
      return 0;
    }
    if (*roots) {
      const TwistedSetup s = common.setup();
      IntVec box = int_list(box_text, "--box");
      if (box.size() == 1) box.assign(s.n() + 1, box[0]);
      const auto table = root_spaces(s, box);
      std::ostringstream os;
      if (common.text) {
        for (const auto& [g, d] : table) os << to_string(g) << "\t" << d << "\n";
      } else {
        json arr = json::array();
        for (const auto& [g, d] : table) arr.push_back({{"root", to_string(g)}, {"real", g.is_real()}, {"dim", d}});
        os << arr.dump(2) << "\n";
      }
      common.emit(out, os.str());
      return 0;
    }
    if (*coroot_cmd || *reflect_cmd) {
      const TwistedSetup s = common.setup();
      RootLabel g{rat_list(alpha_text), int_list(degree_text, "--degree")};
      if (g.alpha.size() != s.h0().size()) throw InputError("--alpha needs one value per h(0) basis vector");
      if (g.degree.size() != s.n() + 1) throw InputError("--degree needs n+1 entries");
      if (!is_root(s, g)) throw InputError(to_string(g) + " is not a root of this setup");
      std::string body;
      if (*coroot_cmd) {
        body = to_string(coroot(s, g));
      } else {
        WeightFunctional w = zero_functional(s);
        if (!finite_text.empty()) w.finite = rat_list(finite_text);
        if (!delta_text.empty()) w.delta = rat_list(delta_text);
        if (!lambda_text.empty()) w.lambda = rat_list(lambda_text);
        if (w.finite.size() != s.h0().size() || w.delta.size() != s.n() + 1 || w.lambda.size() != s.n() + 1)
          throw InputError("functional has the wrong number of coordinates");
        body = to_string(reflect(s, g, w));
      }
      if (common.text) {
        common.emit(out, body + "\n");
      } else {
        json j;
        j["root"] = to_string(g);
        j[*coroot_cmd ? "coroot" : "reflection"] = body;
        common.emit(out, j.dump(2) + "\n");
      }
      return 0;
    }
    if (*charge) {
      const IntVec c = int_list(charge_text, "charge");
      const auto [B, v] = normalize_central_charge(c);
      if (common.text) {
        std::ostringstream os;
        os << "B =\n";
        for (const auto& row : B.B) os << "  " << to_string(row) << "\n";
        os << "charge = " << to_string(v) << "\n";
        common.emit(out, os.str());
      } else {
        json j;
        j["input"] = c;
        j["B"] = B.B;
        j["charge"] = v;
        common.emit(out, j.dump(2) + "\n");
      }
      return 0;
    }
    if (*exp) {
      common.emit(out, export_algebra(algebra_from_name(algebra_name)));
      return 0;
    }
    if (*verify) {
      const TwistedSetup s = common.setup();
      Report report;
      report.command = "verify " + suite;
      report.seed = resolve_seed(seed);
      Rng rng(report.seed);
      auto module = [&]() {
        if (module_path.empty()) throw InputError("--module is required for this suite");
        return module_from_json(s, read_text_file(module_path));
      };
      auto append = [&](std::vector<Check> v) { report.checks.insert(report.checks.end(), v.begin(), v.end()); };
      if (suite == "jacobi") {
        std::vector<CocycleParams> phis;
        if (phi_text.empty()) {
          phis = {{CycloScalar(0), CycloScalar(0)}, {CycloScalar(1), CycloScalar(0)}, {CycloScalar(0), CycloScalar(1)},
                  {CycloScalar(2), CycloScalar(-3)}};
        } else {
          phis = {parse_phi(phi_text, s.modulus())};
        }
        if (!common.structure_path.empty()) report.checks.push_back(check_structure_jacobi(s.algebra()));
        append(suite_jacobi(s, phis, samples, rng));
      } else if (suite == "cocycle") {
        append(suite_cocycle(s, samples, rng));
      } else if (suite == "invariance") {
        append(suite_invariance(s, samples, rng));
      } else if (suite == "grading") {
        append(suite_grading(s, samples, rng));
      } else if (suite == "assumptions") {
        append(suite_assumptions(s));
      } else if (suite == "roots") {
        if (!check_assumptions(s).all()) throw InputError("root data needs the standing assumptions to hold");
        IntVec box = int_list(box_text, "--box");
        if (box.size() == 1) box.assign(s.n() + 1, box[0]);
        append(suite_roots(s, box, samples, rng));
      } else if (suite == "automorphism") {
        append(suite_automorphism(s, samples, rng));
      } else if (suite == "ideal-chain") {
        append(suite_ideal_chain(s, depth, samples, rng));
      } else if (suite == "module-relations") {
        const ModuleSpec m = module();
        append(suite_module_relations(s, m.v1, m.v2, m.alpha, m.d0, samples, rng));
      } else if (suite == "components") {
        append(suite_components(s, module().module, samples, rng));
      } else if (suite == "theta") {
        const ModuleSpec m = module();
        if (!m.theta) throw InputError("the module file has no theta");
        append(suite_theta(s, m.module, *m.theta, samples, rng));
      }
      common.emit(out, common.text ? report.to_text() : report.to_json());
      return report.pass() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "torloop: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace torloop::cli
