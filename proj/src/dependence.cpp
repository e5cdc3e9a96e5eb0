#include "cvp/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cvp/core_model.hpp"
#include "cvp/index_set.hpp"
#include "cvp/ivp.hpp"
#include "cvp/kernels.hpp"
#include "cvp/linalg.hpp"
#include "cvp/optimizer.hpp"

namespace cvp {

namespace {

void check_cap(std::size_t n) {
  if (n > kSubsetEnumMaxN)
    throw Error(ErrorCode::TooManyPoints, fmt::format("{} points exceed the subset cap of {}", n, kSubsetEnumMaxN));
}

void require_encloses(const IndexSet& subset, const InitialData& initial) {
  if (!is_subset(initial.anchor(), subset))
    throw Error(ErrorCode::DoesNotEncloseInitialData, "subset does not contain supp rho0 and I0");
}

}  // namespace

double constrained_quadratic_min(const IndexSet& subset, const IndexSet& anchor, const ProblemInstance& inst,
                                 const Tolerances& tol) {
  const IndexSet O = normalize_index_set(subset, inst.n());
  const IndexSet A = normalize_index_set(anchor, inst.n());
  if (O.empty()) return std::numeric_limits<double>::infinity();
  const Matrix Z = linalg::null_space(linalg::submatrix(inst.L(), A, O), inst.psd_tolerance(tol));
  if (Z.cols() == 0) return std::numeric_limits<double>::infinity();
  return linalg::min_eigenvalue(Z.transpose() * linalg::principal(inst.L(), O) * Z);
}

DependenceCertificate certify_dependent(const IndexSet& subset, const InitialData& initial,
                                        const ProblemInstance& inst, const Tolerances& tol) {
  DependenceCertificate c;
  c.subset = normalize_index_set(subset, inst.n());
  require_encloses(c.subset, initial);
  c.constrained_min_eig = constrained_quadratic_min(c.subset, initial.anchor(), inst, tol);
  c.trivial_subspace = std::isinf(c.constrained_min_eig);
  c.certified_dependent = c.trivial_subspace || c.constrained_min_eig > inst.psd_tolerance(tol);
  return c;
}

std::vector<IndexSet> maximal_dependent_sets(const InitialData& initial, const ProblemInstance& inst, Execution exec,
                                             const Tolerances& tol) {
  check_cap(inst.n());
  const IndexSet anchor = initial.anchor();
  auto certified = kernels::filter_supersets(
      inst.n(), set_to_mask(anchor),
      [&](std::uint64_t mask) { return certify_dependent(mask_to_set(mask), initial, inst, tol).certified_dependent; },
      exec);
  std::vector<IndexSet> out;
  for (auto m : certified) {
    bool maximal = true;
    for (auto o : certified)
      if (o != m && (o & m) == m) { maximal = false; break; }
    if (maximal) out.push_back(mask_to_set(m));
  }
  return out;
}

IndexSet domain_of_dependence(const InitialData& initial, const ProblemInstance& inst, Execution exec,
                              const Tolerances& tol) {
  const auto sets = maximal_dependent_sets(initial, inst, exec, tol);
  if (sets.empty()) throw Error(ErrorCode::NoDependentSet, "no enclosing subset is certified dependent");
  IndexSet out = sets.front();
  for (const auto& s : sets) out = set_intersection(out, s);
  return out;
}

ProblemInstance restrict_instance(const ProblemInstance& inst, const IndexSet& J) {
  std::vector<std::string> labels;
  for (auto j : J) labels.push_back(inst.space.label(j));
  std::optional<Potential> phi;
  if (inst.potential) phi = Potential(linalg::gather(inst.potential->values(), J));
  std::optional<InitialData> init;
  if (inst.initial) init = restrict_initial(*inst.initial, J);
  return make_instance(PointSpace(std::move(labels)), validate_lagrangian(linalg::principal(inst.L(), J)), inst.s,
                       std::move(phi), std::move(init));
}

InitialData restrict_initial(const InitialData& initial, const IndexSet& J) {
  require_encloses(J, initial);
  InitialData out{Measure(linalg::gather(initial.rho0.weights(), J)), {}};
  for (std::size_t a = 0; a < J.size(); ++a)
    if (contains(initial.I0, J[a])) out.I0.push_back(a);
  return out;
}

DefiniteCertificate certify_definite(const IndexSet& subset, const InitialData& initial, const ProblemInstance& inst,
                                     const Tolerances& tol) {
  const IndexSet J = normalize_index_set(subset, inst.n());
  require_encloses(J, initial);
  check_cap(inst.n());
  DefiniteCertificate c;
  c.min_eigenvalue = restricted_min_eigenvalue(inst, J);
  c.positive = c.min_eigenvalue > inst.psd_tolerance(tol);
  c.max_lrho = 0.0;
  if (J.empty()) {
    c.bounded = true;
    c.definite = c.positive;
    return c;
  }
  // Every IVP solution inside J lies in one of the measure polytopes, and
  // L rho is affine on each, so vertices bound it.
  const ProblemInstance sub = restrict_instance(inst, J);
  const InitialData init = restrict_initial(initial, J);
  for (const auto& S : candidate_supports(init, sub, Execution::Serial, tol)) {
    const auto P = measure_polytope(S, init, sub);
    for (const auto& v : poly::vertices(P)) {
      const Vector rho = linalg::scatter(v, S, J.size());
      c.max_lrho = std::max(c.max_lrho, (sub.L() * rho).maxCoeff() / inst.s);
      ++c.vertices_checked;
    }
  }
  c.bounded = c.max_lrho <= 1.0 + tol.el_exact;
  c.definite = c.positive && c.bounded;
  return c;
}

std::vector<SolutionGerm> solution_germs(const InitialData& initial, const ProblemInstance& inst, Execution exec,
                                         const Tolerances& tol) {
  check_cap(inst.n());
  const std::size_t n = inst.n();
  const auto definite = kernels::filter_supersets(
      n, set_to_mask(initial.anchor()),
      [&](std::uint64_t mask) { return certify_definite(mask_to_set(mask), initial, inst, tol).definite; }, exec);

  std::vector<SolutionGerm> cand;
  for (auto mask : definite) {
    SolutionGerm g;
    g.subset = mask_to_set(mask);
    if (g.subset.empty()) {
      g.rho = Measure::zero(n);
    } else {
      const ProblemInstance sub = restrict_instance(inst, g.subset);
      OptimizerConfig cfg;
      cfg.exec = Execution::Serial;
      const auto res = optimize(OptProblem::D, restrict_initial(initial, g.subset), sub, cfg, tol);
      if (res.solutions.empty()) continue;
      g.rho = Measure::clamped(linalg::scatter(res.solutions.front().rho.weights(), g.subset, n));
    }
    g.volume = g.rho.total_mass();
    cand.push_back(std::move(g));
  }

  const double eps = 1e-9 * inst.s;
  std::vector<SolutionGerm> out;
  for (std::size_t a = 0; a < cand.size(); ++a) {
    bool germ = true;
    for (std::size_t b = 0; b < cand.size() && germ; ++b) {
      if (a == b || cand[b].volume < cand[a].volume - eps) continue;
      if ((cand[b].rho.weights() - cand[a].rho.weights()).minCoeff() < -eps) germ = false;
    }
    if (germ) out.push_back(cand[a]);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SolutionGerm& x, const SolutionGerm& y) { return x.volume < y.volume; });
  return out;
}

Measure maximal_optimal_solution(const InitialData& initial, const ProblemInstance& inst, Execution exec,
                                 const Tolerances& tol) {
  const auto germs = solution_germs(initial, inst, exec, tol);
  if (germs.empty()) throw Error(ErrorCode::NoGerms, "no solution germ exists");
  return germs.back().rho;
}

}  // namespace cvp
