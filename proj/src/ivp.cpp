#include "cvp/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvp/core_model.hpp"
#include "cvp/index_set.hpp"
#include "cvp/inner_solver.hpp"
#include "cvp/kernels.hpp"
#include "cvp/linalg.hpp"
#include "cvp/lp.hpp"
#include "cvp/polytope.hpp"

namespace cvp {

namespace {

void check_initial(const InitialData& initial, const ProblemInstance& inst) {
  require_size(initial.rho0.size(), inst.n(), "initial_measure");
  for (auto i : initial.I0)
    if (i >= inst.n()) throw Error(ErrorCode::DimensionMismatch, "initial set index out of range");
}

}  // namespace

AdmissibilityReport check_admissible(const InitialData& initial, const ProblemInstance& inst, const Tolerances& tol) {
  check_initial(initial, inst);
  AdmissibilityReport rep;
  const IndexSet T = initial.anchor();
  const Vector lr = inst.L() * initial.rho0.weights() / inst.s;
  rep.lrho0_max = 0.0;
  for (auto i : T) {
    const double v = lr(static_cast<Eigen::Index>(i));
    rep.lrho0_max = std::max(rep.lrho0_max, v);
    if (v > 1.0 + tol.el_exact && !rep.violating_index) rep.violating_index = i;
  }
  rep.psd_min_eig = restricted_min_eigenvalue(inst, T);
  rep.admissible = rep.lrho0_max <= 1.0 + tol.el_exact && rep.psd_min_eig >= -inst.psd_tolerance(tol);
  return rep;
}

bool is_totally_spacelike(const IndexSet& subset, const ProblemInstance& inst, double eps) {
  for (auto i : subset)
    for (auto j : subset)
      if (i != j && inst.lagrangian(i, j) > eps) return false;
  return true;
}

Potential canonical_initial_potential(const InitialData& initial, const ProblemInstance& inst, const Tolerances& tol) {
  const auto rep = check_admissible(initial, inst, tol);
  if (!rep.admissible) throw Error(ErrorCode::NotAdmissible, "initial data is not admissible");
  const Vector lr = inst.L() * initial.rho0.weights();
  Vector phi = Vector::Constant(static_cast<Eigen::Index>(inst.n()), 2.0 * inst.s);
  for (auto i : initial.anchor()) {
    const auto ii = static_cast<Eigen::Index>(i);
    phi(ii) = std::max(0.0, inst.s - lr(ii));
  }
  return Potential(std::move(phi));
}

bool satisfies_initial_conditions(const Measure& rho, const Potential& phi, const InitialData& initial,
                                  const ProblemInstance& inst, double el_tol, const Tolerances& tol) {
  check_initial(initial, inst);
  for (std::size_t i = 0; i < inst.n(); ++i)
    if (rho[i] < initial.rho0[i] - tol.support_epsilon * inst.s) return false;
  const Vector k = inst.L() * rho.weights() + phi.values();
  for (auto i : initial.I0)
    if (std::abs(k(static_cast<Eigen::Index>(i)) - inst.s) > el_tol * inst.s) return false;
  return restricted_min_eigenvalue(inst, set_union(initial.I0, rho.support(tol.support_epsilon))) >=
         -inst.psd_tolerance(tol);
}

namespace {

// Searches p + N c for a member meeting (a) and (b); maximizes the margin
// over rho0 on the support.
bool family_member(const Matrix& L, const Vector& phi, const Vector& rho0, const IndexSet& I0, const IndexSet& S,
                   const Vector& rho_rep, const Matrix& N, const Tolerances& tol, Vector& out) {
  const std::size_t n = static_cast<std::size_t>(L.rows());
  const IndexSet off = complement(S, n);
  for (auto i : off)
    if (rho0(static_cast<Eigen::Index>(i)) > tol.support_epsilon) return false;
  const Vector p = linalg::gather(rho_rep, S);
  const auto s = static_cast<Eigen::Index>(S.size());
  const Eigen::Index k = N.cols();
  const IndexSet I0_off = set_intersection(I0, off);
  const auto mo = static_cast<Eigen::Index>(off.size());
  const auto mi = static_cast<Eigen::Index>(I0_off.size());
  lp::Problem prob;
  prob.c = Vector::Zero(k + 1);
  prob.c(k) = -1.0;
  prob.A_ub = Matrix::Zero(2 * s + mo + mi + 1, k + 1);
  prob.b_ub = Vector::Zero(2 * s + mo + mi + 1);
  const Vector lower = linalg::gather(rho0, S);
  // rho_S - rho0_S >= t
  prob.A_ub.block(0, 0, s, k) = -N;
  prob.A_ub.block(0, k, s, 1).setOnes();
  prob.b_ub.head(s) = p - lower;
  // rho_S >= 0
  prob.A_ub.block(s, 0, s, k) = -N;
  prob.b_ub.segment(s, s) = p;
  // off-support minimality: (L rho)_i + phi_i >= 1
  const Matrix LoS = linalg::submatrix(L, off, S);
  if (mo > 0) {
    prob.A_ub.block(2 * s, 0, mo, k) = -LoS * N;
    prob.b_ub.segment(2 * s, mo) = LoS * p + linalg::gather(phi, off) - Vector::Ones(mo) +
                                   Vector::Constant(mo, 0.5 * tol.el_exact);
  }
  // (b) on I0 off the support: (L rho)_i + phi_i <= 1
  if (mi > 0) {
    const Matrix LiS = linalg::submatrix(L, I0_off, S);
    prob.A_ub.block(2 * s + mo, 0, mi, k) = LiS * N;
    prob.b_ub.segment(2 * s + mo, mi) = Vector::Ones(mi) - LiS * p - linalg::gather(phi, I0_off) +
                                        Vector::Constant(mi, 0.5 * tol.el_exact);
  }
  prob.A_ub(2 * s + mo + mi, k) = 1.0;
  prob.b_ub(2 * s + mo + mi) = 1.0;
  prob.free.assign(static_cast<std::size_t>(k + 1), true);
  const auto res = lp::solve(prob);
  if (res.status != lp::Status::Optimal || res.x(k) < -tol.support_epsilon) return false;
  Vector rS = (p + N * res.x.head(k)).cwiseMax(0.0);
  out = linalg::scatter(rS, S, n);
  return true;
}

}  // namespace

std::vector<SolutionRecord> solve_ivp(const InitialData& initial, const Potential& phi, const ProblemInstance& inst,
                                      Execution exec, const Tolerances& tol) {
  check_initial(initial, inst);
  if (inst.n() > kExactSolverMaxN) throw Error(ErrorCode::TooManyPoints, "too many points for exact IVP solve");
  require_size(phi.size(), inst.n(), "potential");
  const Matrix& L = inst.L();
  const Vector phi1 = phi.values() / inst.s;
  const Vector rho01 = initial.rho0.weights() / inst.s;
  const double rank_tol = inst.psd_tolerance(tol);
  const auto cands = kernels::support_candidates(L, phi1, rank_tol, tol, exec);
  std::vector<SolutionRecord> out;
  if (cands.empty()) return out;
  double best = cands.front().action;
  for (const auto& c : cands) best = std::min(best, c.action);

  std::vector<Vector> seen;
  for (const auto& c : cands) {
    if (c.action > best + tol.action_tie) continue;
    Vector rho = c.rho;
    auto ok = [&](const Vector& r) {
      return satisfies_initial_conditions(Measure::clamped(inst.s * r), phi, initial, inst, tol.el_exact, tol);
    };
    bool good = ok(rho);
    std::size_t dim = static_cast<std::size_t>(c.family.cols());
    if (!good && !c.support.empty()) {
      const auto sol = kernels::solve_support_s1(L, phi1, c.support, rank_tol, tol);
      if (sol.null_basis.cols() > 0) {
        Vector member;
        if (family_member(L, phi1, rho01, initial.I0, c.support, rho, sol.null_basis, tol, member) && ok(member)) {
          rho = member;
          good = true;
        }
      }
    }
    if (!good) continue;
    bool dup = false;
    for (const auto& v : seen)
      if ((v - rho).cwiseAbs().maxCoeff() <= 1e-9) dup = true;
    if (dup) continue;
    seen.push_back(rho);
    auto rec = make_record(Measure::clamped(inst.s * rho), phi, inst, tol.el_exact, tol);
    rec.degeneracy_dim = dim;
    rec.family_basis = c.family;
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [&](const SolutionRecord& a, const SolutionRecord& b) {
    const auto sa = a.rho.support(), sb = b.rho.support();
    if (sa != sb) return sa < sb;
    return poly::lex_less(a.rho.weights(), b.rho.weights());
  });
  return out;
}

bool is_ivp_solution(const Measure& rho, const Potential& phi, const InitialData& initial,
                     const ProblemInstance& inst, double el_tol, const Tolerances& tol) {
  if (!satisfies_initial_conditions(rho, phi, initial, inst, el_tol, tol)) return false;
  const auto el = el_residuals(rho, phi, inst);
  if (el.sup > el_tol * inst.s) return false;
  const auto mins = minimize_exact(inst, phi, Execution::Parallel, tol);
  if (mins.empty()) return false;
  return action_value(rho, phi, inst) <= mins.front().action + tol.action_tie * inst.s * inst.s;
}

}  // namespace cvp
