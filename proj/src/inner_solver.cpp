#include "cvp/inner_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "cvp/core_model.hpp"
#include "cvp/index_set.hpp"
#include "cvp/kernels.hpp"
#include "cvp/linalg.hpp"

namespace cvp {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap)
    throw Error(ErrorCode::TooManyPoints, fmt::format("{} points exceed the enumeration cap of {}", n, cap));
}

}  // namespace

SupportSolution solve_on_support(const ProblemInstance& inst, const Potential& phi, const IndexSet& support,
                                 const Tolerances& tol) {
  require_size(phi.size(), inst.n(), "potential");
  const IndexSet S = normalize_index_set(support, inst.n());
  auto sol = kernels::solve_support_s1(inst.L(), phi.values() / inst.s, S, inst.psd_tolerance(tol), tol);
  sol.rho_on_support *= inst.s;
  return sol;
}

SolutionRecord make_record(const Measure& rho, const Potential& phi, const ProblemInstance& inst, double el_tol,
                           const Tolerances& tol) {
  SolutionRecord r;
  r.rho = rho;
  r.phi = phi;
  r.action = action_value(rho, phi, inst);
  const auto el = el_residuals(rho, phi, inst);
  r.el_sup_residual = el.sup;
  r.psd_min_eigenvalue = el.psd_min_eigenvalue;
  r.family_basis = Matrix(static_cast<Eigen::Index>(inst.n()), 0);
  r.certified_global = el.sup <= el_tol * inst.s &&
                       verify_global_minimizer(rho, canonicalize_potential(rho, phi, inst, tol), inst, el_tol, tol);
  return r;
}

std::vector<SolutionRecord> minimize_exact(const ProblemInstance& inst, const Potential& phi, Execution exec,
                                           const Tolerances& tol) {
  check_cap(inst.n(), kExactSolverMaxN);
  require_size(phi.size(), inst.n(), "potential");
  const Vector phi1 = phi.values() / inst.s;
  const auto cands = kernels::support_candidates(inst.L(), phi1, inst.psd_tolerance(tol), tol, exec);
  std::vector<SolutionRecord> out;
  if (cands.empty()) return out;
  double best = cands.front().action;
  for (const auto& c : cands) best = std::min(best, c.action);
  for (const auto& c : cands) {
    if (c.action > best + tol.action_tie) continue;
    auto rec = make_record(Measure::clamped(inst.s * c.rho), phi, inst, tol.el_exact, tol);
    rec.degeneracy_dim = static_cast<std::size_t>(c.family.cols());
    rec.family_basis = c.family;
    out.push_back(std::move(rec));
  }
  return out;
}

IterativeResult minimize_iterative(const ProblemInstance& inst, const Potential& phi, const IterativeConfig& cfg,
                                   const Tolerances& tol) {
  require_size(phi.size(), inst.n(), "potential");
  const Matrix& L = inst.L();
  const auto n = static_cast<Eigen::Index>(inst.n());
  const Vector phi1 = phi.values() / inst.s;
  const double norm = inst.lagrangian.spectral_norm();
  const double step = 1.0 / (2.0 * norm);
  const Vector shift = phi1 - Vector::Ones(n);
  auto objective = [&](const Vector& r) { return r.dot(L * r) + 2.0 * shift.dot(r); };

  // Starts: zero, the uniform vector with roughly L rho = 1, then random ones.
  const double c = static_cast<double>(n) / L.sum();
  std::vector<Vector> starts{Vector::Zero(n), Vector::Constant(n, c)};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * c);
  for (std::size_t k = 0; k < cfg.restarts; ++k) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = unif(rng);
    starts.push_back(std::move(v));
  }

  Vector best_rho;
  double best_val = 0.0;
  bool best_conv = false;
  std::size_t best_iters = 0;
  for (const auto& start : starts) {
    Vector r = start;
    bool conv = false;
    std::size_t it = 0;
    for (; it < cfg.max_iters; ++it) {
      const Vector g = 2.0 * (L * r + shift);
      const double pg = (r - (r - g).cwiseMax(0.0)).cwiseAbs().maxCoeff();
      if (pg <= cfg.gradient_tol) { conv = true; break; }
      r = (r - step * g).cwiseMax(0.0);
    }
    const double val = objective(r);
    // Later restarts replace the incumbent only on a clear improvement.
    if (best_rho.size() == 0 || val < best_val - tol.action_tie) {
      best_rho = r;
      best_val = val;
      best_conv = conv;
      best_iters = it;
    }
  }

  IterativeResult res;
  const Measure rho(inst.s * best_rho);
  res.record.rho = rho;
  res.record.phi = phi;
  res.record.action = action_value(rho, phi, inst);
  const auto el = el_residuals(rho, phi, inst);
  res.record.el_sup_residual = el.sup;
  res.record.psd_min_eigenvalue = el.psd_min_eigenvalue;
  res.record.family_basis = Matrix(n, 0);
  const bool convex = linalg::min_eigenvalue(L) >= -inst.psd_tolerance(tol);
  res.record.certified_global = convex && el.sup <= tol.el_iterative * inst.s;
  res.converged = best_conv;
  res.iterations = best_iters;
  return res;
}

bool verify_global_minimizer(const Measure& rho, const Potential& phi, const ProblemInstance& inst, double el_tol,
                             const Tolerances& tol) {
  const ProblemInstance unit = normalized(inst);
  const Measure r(rho.weights() / inst.s);
  const Potential p(phi.values() / inst.s);
  const auto el = el_residuals(r, p, unit);
  if (el.sup > el_tol) return false;
  if (el.psd_min_eigenvalue < -inst.psd_tolerance(tol)) return false;
  IndexSet low;
  for (std::size_t i = 0; i < inst.n(); ++i)
    if (p[i] <= 1.0) low.push_back(i);
  return low == r.support(tol.support_epsilon);
}

Potential canonicalize_potential(const Measure& rho, const Potential& phi, const ProblemInstance& inst,
                                 const Tolerances& tol) {
  require_size(rho.size(), inst.n(), "measure");
  require_size(phi.size(), inst.n(), "potential");
  Vector v = Vector::Constant(static_cast<Eigen::Index>(inst.n()), 2.0 * inst.s);
  for (auto i : rho.support(tol.support_epsilon)) v(static_cast<Eigen::Index>(i)) = phi[i];
  return Potential(std::move(v));
}

std::pair<Measure, Potential> localize(const Measure& rho, const Potential& phi, const IndexSet& subset,
                                       const ProblemInstance& inst) {
  require_size(rho.size(), inst.n(), "measure");
  require_size(phi.size(), inst.n(), "potential");
  const IndexSet J = normalize_index_set(subset, inst.n());
  Vector inside = Vector::Zero(static_cast<Eigen::Index>(inst.n()));
  for (auto j : J) inside(static_cast<Eigen::Index>(j)) = rho[j];
  const Vector outside = rho.weights() - inside;
  return {Measure(inside), Potential(phi.values() + inst.L() * outside)};
}

PositivityCheck extended_positivity_check(const Measure& rho, const Potential& phi, const Measure& nu,
                                          const ProblemInstance& inst, const Tolerances& tol) {
  const std::size_t n = inst.n();
  require_size(rho.size(), n, "measure");
  require_size(phi.size(), n, "potential");
  require_size(nu.size(), n, "extension measure");
  const IndexSet supp_nu = nu.support(tol.support_epsilon);
  if (supp_nu.empty()) throw Error(ErrorCode::NuZero, "extension measure is zero");
  const IndexSet supp = rho.support(tol.support_epsilon);
  const Vector k = (inst.L() * rho.weights() + phi.values()) / inst.s - Vector::Ones(static_cast<Eigen::Index>(n));
  for (auto i : supp_nu) {
    if (contains(supp, i) || std::abs(k(static_cast<Eigen::Index>(i))) > tol.el_exact)
      throw Error(ErrorCode::NuNotInK, fmt::format("extension measure charges point {} outside K minus supp rho", i));
  }
  // Columns: rho_a e_a for a in supp, then nu. Weights rho_a and nu(I).
  const auto m = static_cast<Eigen::Index>(supp.size());
  Matrix B = Matrix::Zero(static_cast<Eigen::Index>(n), m + 1);
  Vector w(m + 1);
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto i = supp[static_cast<std::size_t>(a)];
    B(static_cast<Eigen::Index>(i), a) = rho[i];
    w(a) = rho[i];
  }
  B.col(m) = nu.weights();
  w(m) = nu.total_mass();
  const Vector scale = w.cwiseSqrt().cwiseInverse();
  const Matrix op = scale.asDiagonal() * (B.transpose() * inst.L() * B) * scale.asDiagonal();
  PositivityCheck out;
  out.min_eigenvalue = linalg::min_eigenvalue(op);
  out.nonnegative = out.min_eigenvalue >= -inst.psd_tolerance(tol);
  return out;
}

bool convex_certificate(const Measure& rho, const Potential& phi, const ProblemInstance& inst, double el_tol,
                        const Tolerances& tol) {
  const auto el = el_residuals(rho, phi, inst);
  if (el.sup > el_tol * inst.s) return false;
  IndexSet low;
  for (std::size_t i = 0; i < inst.n(); ++i)
    if (phi[i] <= inst.s) low.push_back(i);
  if (!is_subset(rho.support(tol.support_epsilon), low)) return false;
  return restricted_min_eigenvalue(inst, low) >= -inst.psd_tolerance(tol);
}

}  // namespace cvp
