#include "cvp/cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cvp/continuum.hpp"
#include "cvp/core_model.hpp"
#include "cvp/dependence.hpp"
#include "cvp/index_set.hpp"
#include "cvp/inner_solver.hpp"
#include "cvp/ivp.hpp"
#include "cvp/optimizer.hpp"
#include "cvp/parallel.hpp"
#include "cvp/problem_io.hpp"
#include "cvp/result_io.hpp"

namespace cvp {

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::TooManyPoints:
      return kExitSizeCap;
    case ErrorCode::NotAdmissible:
    case ErrorCode::SingularSupportMatrix:
    case ErrorCode::DoesNotEncloseInitialData:
    case ErrorCode::NoDependentSet:
    case ErrorCode::NoGerms:
    case ErrorCode::NumericalFailure:
      return kExitNoSolution;
    default:
      return kExitValidation;
  }
}

struct Loaded {
  std::string digest;
  ProblemInstance inst;
};

Loaded load(const std::string& path) {
  const std::string bytes = io::read_file(path);
  return {io::sha256_hex(bytes), io::parse_problem(bytes)};
}

const Potential& need_potential(const ProblemInstance& inst, const char* cmd) {
  if (!inst.potential) throw Error(ErrorCode::DimensionMismatch, fmt::format("{} needs a potential in the file", cmd));
  return *inst.potential;
}

InitialData initial_or_empty(const ProblemInstance& inst) {
  return inst.initial ? *inst.initial : InitialData::empty(inst.n());
}

void require_exact_size(const ProblemInstance& inst) {
  if (inst.n() > kExactSolverMaxN)
    throw Error(ErrorCode::TooManyPoints,
                fmt::format("{} points exceed the exhaustive cap of {}; use --iterative", inst.n(), kExactSolverMaxN));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal variational principle solver", "cvp"};
  app.require_subcommand(1);

  std::string file;
  bool iterative = false;
  std::string measure_text;
  std::string problem_text;
  std::string b_scope = "space";
  std::size_t circle_n = 0;
  bool modified = false;
  std::optional<double> phi_const;

  auto* validate = app.add_subcommand("validate", "parse and validate a problem file");
  auto* solve = app.add_subcommand("solve", "all global minimizers for the file's potential");
  auto* check = app.add_subcommand("check", "Euler-Lagrange residuals of a given measure");
  auto* admissible = app.add_subcommand("admissible", "admissibility of the initial data");
  auto* ivp = app.add_subcommand("ivp", "initial value problem with the file's potential");
  auto* optimize_cmd = app.add_subcommand("optimize", "optimize over solutions of the initial value problem");
  auto* dod = app.add_subcommand("dod", "maximal dependent sets and their intersection");
  auto* germs = app.add_subcommand("germs", "solution germs by volume");
  auto* maximal = app.add_subcommand("maximal", "maximal optimal solution");
  auto* circle = app.add_subcommand("discretize-circle", "emit a heat-kernel circle instance");

  for (auto* sc : {validate, solve, check, admissible, ivp, optimize_cmd, dod, germs, maximal})
    sc->add_option("file", file, "problem file")->required();
  solve->add_flag("--iterative", iterative, "projected gradient instead of support enumeration");
  check->add_option("--measure", measure_text, "comma-separated weights")->required();
  optimize_cmd->add_option("--problem", problem_text, "A, B, C or D")
      ->required()
      ->check(CLI::IsMember({"A", "B", "C", "D"}));
  optimize_cmd->add_option("--b-scope", b_scope, "points the (B) maximum runs over")
      ->check(CLI::IsMember({"space", "support"}));
  circle->add_option("--n", circle_n, "number of sample points")->required();
  circle->add_flag("--modified", modified, "drop the first Fourier mode");
  circle->add_option("--phi-const", phi_const, "constant potential");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  set_thread_count(threads_from_environment());

  try {
    if (circle->parsed()) {
      const CircleDiscretization disc(circle_n);
      auto L = modified ? modified_heat_kernel_circle(disc) : heat_kernel_circle(disc);
      std::optional<Potential> phi;
      if (phi_const) phi = Potential::constant(circle_n, *phi_const);
      const auto inst = make_instance(PointSpace::indexed(circle_n, "x"), std::move(L), 1.0, std::move(phi));
      out << io::render_problem(
          inst, fmt::format("{} heat kernel on the circle, n = {}; weights are masses", modified ? "modified" : "plain",
                            circle_n));
      return kExitOk;
    }

    const Loaded ld = load(file);
    const ProblemInstance& inst = ld.inst;
    const std::string cmd = app.get_subcommands().front()->get_name();
    io::ResultWriter w(cmd, ld.digest);
    int rc = kExitOk;

    if (validate->parsed()) {
      w.flag("valid", true);
      w.count("points", inst.n());
      w.number("s", inst.s);
      w.number("spectral_norm", inst.lagrangian.spectral_norm());
      w.number("min_eigenvalue", restricted_min_eigenvalue(inst, full_set(inst.n())));
      w.flag("has_potential", inst.potential.has_value());
      w.flag("has_initial_data", inst.initial.has_value());
    } else if (solve->parsed()) {
      const Potential& phi = need_potential(inst, "solve");
      if (iterative) {
        const auto res = minimize_iterative(inst, phi);
        w.field("method", "iterative");
        w.flag("converged", res.converged);
        w.count("iterations", res.iterations);
        w.solutions({res.record}, inst);
        if (!res.converged) rc = kExitNoSolution;
      } else {
        require_exact_size(inst);
        const auto recs = minimize_exact(inst, phi);
        w.field("method", "exact");
        w.solutions(recs, inst);
        if (recs.empty()) rc = kExitNoSolution;
      }
    } else if (check->parsed()) {
      const Potential& phi = need_potential(inst, "check");
      Vector wts = io::parse_weight_list(measure_text);
      require_size(static_cast<std::size_t>(wts.size()), inst.n(), "measure");
      const Measure rho(std::move(wts));
      const auto el = el_residuals(rho, phi, inst);
      w.vector("rho", rho.weights());
      w.labels("support", rho.support(), inst.space);
      w.number("action", action_value(rho, phi, inst));
      w.vector("residuals", el.per_point);
      w.number("el_sup_residual", el.sup);
      w.number("psd_min_eigenvalue", el.psd_min_eigenvalue);
      if (inst.n() <= kExactSolverMaxN)
        w.flag("global_minimizer", verify_global_minimizer(rho, phi, inst));
    } else if (admissible->parsed()) {
      write_admissibility(w, check_admissible(initial_or_empty(inst), inst), inst);
    } else if (ivp->parsed()) {
      require_exact_size(inst);
      const auto recs = solve_ivp(initial_or_empty(inst), need_potential(inst, "ivp"), inst);
      w.solutions(recs, inst);
      if (recs.empty()) rc = kExitNoSolution;
    } else if (optimize_cmd->parsed()) {
      require_exact_size(inst);
      OptimizerConfig cfg;
      cfg.b_scope = b_scope == "support" ? BScope::Support : BScope::Space;
      const auto res = optimize(parse_problem_tag(problem_text), initial_or_empty(inst), inst, cfg);
      write_optimization(w, res, inst, cfg.b_scope);
      if (res.solutions.empty()) rc = kExitNoSolution;
    } else if (dod->parsed()) {
      const InitialData init = initial_or_empty(inst);
      const auto sets = maximal_dependent_sets(init, inst);
      if (sets.empty()) throw Error(ErrorCode::NoDependentSet, "no enclosing subset is certified dependent");
      IndexSet d = sets.front();
      w.field("maximal_dependent_sets", "");
      for (const auto& S : sets) {
        w.line(1, "- " + io::flow_labels(S, inst.space));
        d = set_intersection(d, S);
      }
      w.labels("domain_of_dependence", d, inst.space);
    } else if (germs->parsed()) {
      const auto g = solution_germs(initial_or_empty(inst), inst);
      write_germs(w, g, inst);
      if (g.empty()) rc = kExitNoSolution;
    } else if (maximal->parsed()) {
      const auto g = solution_germs(initial_or_empty(inst), inst);
      if (g.empty()) throw Error(ErrorCode::NoGerms, "no solution germ exists");
      w.labels("subset", g.back().subset, inst.space);
      w.vector("rho", g.back().rho.weights());
      w.number("volume", g.back().volume);
    }

    out << w.str();
    return rc;
  } catch (const ParseError& e) {
    err << "cvp: parse error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "cvp: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace cvp
