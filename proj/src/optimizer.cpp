#include "cvp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "cvp/core_model.hpp"
#include "cvp/index_set.hpp"
#include "cvp/inner_solver.hpp"
#include "cvp/ivp.hpp"
#include "cvp/kernels.hpp"
#include "cvp/linalg.hpp"
#include "cvp/qp.hpp"

namespace cvp {

char problem_tag(OptProblem p) {
  switch (p) {
    case OptProblem::A: return 'A';
    case OptProblem::B: return 'B';
    case OptProblem::C: return 'C';
    case OptProblem::D: return 'D';
  }
  return '?';
}

OptProblem parse_problem_tag(const std::string& s) {
  if (s == "A") return OptProblem::A;
  if (s == "B") return OptProblem::B;
  if (s == "C") return OptProblem::C;
  if (s == "D") return OptProblem::D;
  throw Error(ErrorCode::ParseError, fmt::format("unknown problem '{}', expected A, B, C or D", s));
}

SolutionPolytope feasible_region(const IndexSet& support, const InitialData& initial, const ProblemInstance& inst,
                                 const Tolerances& tol) {
  const std::size_t n = inst.n();
  const IndexSet S = normalize_index_set(support, n);
  if (!is_subset(initial.anchor(), S))
    throw Error(ErrorCode::DoesNotEncloseInitialData, "support must contain supp rho0 and I0");
  const Matrix LS = linalg::principal(inst.L(), S);
  Eigen::SelfAdjointEigenSolver<Matrix> es(LS, Eigen::EigenvaluesOnly);
  if (S.empty() || es.eigenvalues().cwiseAbs().minCoeff() <= inst.psd_tolerance(tol))
    throw Error(ErrorCode::SingularSupportMatrix, "L restricted to the support is singular");

  SolutionPolytope out;
  out.support = S;
  out.map = LS.inverse();
  const auto k = static_cast<Eigen::Index>(S.size());
  const IndexSet off = complement(S, n);
  const auto m = 2 * k + static_cast<Eigen::Index>(off.size());
  out.constraints.A = Matrix::Zero(m, k);
  out.constraints.b = Vector::Zero(m);
  const Vector ones = Vector::Ones(k);
  Eigen::Index r = 0;
  for (Eigen::Index a = 0; a < k; ++a, ++r) {
    out.constraints.A(r, a) = -1.0;
    out.constraints.b(r) = 0.0;
    out.constraint_names.push_back(fmt::format("phi >= 0 at {}", inst.space.label(S[static_cast<std::size_t>(a)])));
  }
  for (Eigen::Index a = 0; a < k; ++a, ++r) {
    const auto i = S[static_cast<std::size_t>(a)];
    out.constraints.A.row(r) = out.map.row(a);
    out.constraints.b(r) = inst.s * out.map.row(a).dot(ones) - initial.rho0[i];
    out.constraint_names.push_back(fmt::format("rho >= rho0 at {}", inst.space.label(i)));
  }
  // With phi = 2s off the support these only ask L rho >= -s; kept for completeness.
  for (auto i : off) {
    const Vector row = linalg::submatrix(inst.L(), {i}, S).row(0).transpose();
    out.constraints.A.row(r) = (row.transpose() * out.map);
    out.constraints.b(r) = inst.s + inst.s * row.dot(out.map * ones);
    out.constraint_names.push_back(fmt::format("off-support minimality at {}", inst.space.label(i)));
    ++r;
  }
  return out;
}

poly::HPolytope measure_polytope(const IndexSet& support, const InitialData& initial, const ProblemInstance& inst) {
  const IndexSet& S = support;
  const IndexSet extra = set_difference(initial.I0, S);
  const auto k = static_cast<Eigen::Index>(S.size());
  const auto e = static_cast<Eigen::Index>(extra.size());
  poly::HPolytope P;
  P.A = Matrix::Zero(2 * k + e, k);
  P.b = Vector::Zero(2 * k + e);
  for (Eigen::Index a = 0; a < k; ++a) {
    P.A(a, a) = -1.0;
    P.b(a) = -initial.rho0[S[static_cast<std::size_t>(a)]];
  }
  P.A.block(k, 0, k, k) = linalg::principal(inst.L(), S);
  P.b.segment(k, k).setConstant(inst.s);
  if (e > 0) {
    P.A.block(2 * k, 0, e, k) = linalg::submatrix(inst.L(), extra, S);
    P.b.segment(2 * k, e).setConstant(inst.s);
  }
  return P;
}

std::vector<IndexSet> candidate_supports(const InitialData& initial, const ProblemInstance& inst, Execution exec,
                                         const Tolerances& tol) {
  const double psd_tol = inst.psd_tolerance(tol);
  const auto masks = kernels::filter_supersets(
      inst.n(), set_to_mask(initial.rho0.support(tol.support_epsilon)),
      [&](std::uint64_t mask) {
        return restricted_min_eigenvalue(inst, set_union(mask_to_set(mask), initial.I0)) >= -psd_tol;
      },
      exec);
  std::vector<IndexSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(mask_to_set(m));
  return out;
}

Potential solution_potential(const Measure& rho, const InitialData& initial, const ProblemInstance& inst, double off) {
  const Vector lr = inst.L() * rho.weights();
  Vector phi = Vector::Constant(static_cast<Eigen::Index>(inst.n()), off);
  for (auto i : set_union(rho.support(), initial.I0)) {
    const auto ii = static_cast<Eigen::Index>(i);
    phi(ii) = std::max(0.0, inst.s - lr(ii));
  }
  return Potential(std::move(phi));
}

double objective_value(OptProblem problem, const Measure& rho, const Potential& phi, const ProblemInstance& inst,
                       BScope scope) {
  switch (problem) {
    case OptProblem::A:
    case OptProblem::D:
      return action_value(rho, phi, inst);
    case OptProblem::C:
      return rho.total_mass();
    case OptProblem::B: {
      if (scope == BScope::Space) return phi.values().maxCoeff();
      double m = 0.0;
      for (auto i : rho.support()) m = std::max(m, phi[i]);
      return m;
    }
  }
  return 0.0;
}

namespace {

struct SupportFace {
  IndexSet S;
  std::vector<Vector> verts;   // rho_S coordinates (B: lifted with t last)
  std::vector<double> values;
};

std::vector<std::size_t> shuffled_order(Eigen::Index m, std::uint64_t seed) {
  std::vector<std::size_t> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

poly::HPolytope lifted_b_polytope(const poly::HPolytope& P, const IndexSet& S, const Matrix& L, BScope scope) {
  const auto k = static_cast<Eigen::Index>(S.size());
  const std::size_t n = static_cast<std::size_t>(L.rows());
  const IndexSet scope_pts = scope == BScope::Space ? full_set(n) : S;
  const auto q = static_cast<Eigen::Index>(scope_pts.size());
  poly::HPolytope Q;
  Q.A = Matrix::Zero(P.A.rows() + q + 2, k + 1);
  Q.b = Vector::Zero(P.A.rows() + q + 2);
  Q.A.topLeftCorner(P.A.rows(), k) = P.A;
  Q.b.head(P.A.rows()) = P.b;
  // t >= 1 - (L rho)_i
  Q.A.block(P.A.rows(), 0, q, k) = -linalg::submatrix(L, scope_pts, S);
  Q.A.block(P.A.rows(), k, q, 1).setConstant(-1.0);
  Q.b.segment(P.A.rows(), q).setConstant(-1.0);
  Q.A(P.A.rows() + q, k) = -1.0;  // t >= 0
  Q.A(P.A.rows() + q + 1, k) = 1.0;
  Q.b(P.A.rows() + q + 1) = 1.0;  // t <= 1, never binding at an optimum
  return Q;
}

double vertex_value(OptProblem problem, const Vector& v, const Matrix& LS) {
  switch (problem) {
    case OptProblem::A: return -v.dot(LS * v);
    case OptProblem::B: return v(v.size() - 1);
    case OptProblem::C:
    case OptProblem::D: return v.sum();
  }
  return 0.0;
}

// Dimension of span(dirs) ∩ null(LS), with that intersection's basis.
Matrix null_directions(const Matrix& dirs, const Matrix& LS, double rank_tol) {
  if (dirs.cols() == 0) return dirs;
  const Matrix Z = linalg::null_space(LS * dirs, rank_tol);
  return dirs * Z;
}

Matrix embed(const Matrix& M, const IndexSet& S, std::size_t n) {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n), M.cols());
  for (std::size_t a = 0; a < S.size(); ++a) out.row(static_cast<Eigen::Index>(S[a])) = M.row(static_cast<Eigen::Index>(a));
  return out;
}

}  // namespace

OptimizationResult optimize(OptProblem problem, const InitialData& initial, const ProblemInstance& inst,
                            const OptimizerConfig& cfg, const Tolerances& tol) {
  const std::size_t n = inst.n();
  if (n > kExactSolverMaxN)
    throw Error(ErrorCode::TooManyPoints, fmt::format("{} points exceed the optimizer cap of {}", n, kExactSolverMaxN));
  const auto adm = check_admissible(initial, inst, tol);
  if (!adm.admissible) throw Error(ErrorCode::NotAdmissible, "initial data is not admissible");

  const ProblemInstance u = normalized(inst);
  const InitialData init1{Measure(initial.rho0.weights() / inst.s), initial.I0};
  const Matrix& L = u.L();
  const double rank_tol = u.psd_tolerance(tol);
  const auto supports = candidate_supports(init1, u, cfg.exec, tol);
  const OptProblem phase = problem == OptProblem::D ? OptProblem::C : problem;

  std::vector<SupportFace> faces(supports.size());
  auto build = [&](std::size_t idx) {
    SupportFace& f = faces[idx];
    f.S = supports[idx];
    poly::HPolytope P = measure_polytope(f.S, init1, u);
    if (phase == OptProblem::B) P = lifted_b_polytope(P, f.S, L, cfg.b_scope);
    f.verts = poly::vertices(P, shuffled_order(P.A.rows(), cfg.constraint_shuffle_seed));
    const Matrix LS = linalg::principal(L, f.S);
    for (const auto& v : f.verts) f.values.push_back(vertex_value(phase, v, LS));
  };
  if (cfg.exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(supports.size()); ++i) build(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < supports.size(); ++i) build(i);
  }

  const bool maximize = phase == OptProblem::C;
  double opt = maximize ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  for (const auto& f : faces)
    for (double v : f.values) opt = maximize ? std::max(opt, v) : std::min(opt, v);
  if (!std::isfinite(opt)) throw Error(ErrorCode::NumericalFailure, "no feasible solution found for admissible data");
  const double tie = tol.action_tie * std::max(1.0, std::abs(opt));

  // Optimal measures per support, with the dimension of the optimal face.
  struct Hit {
    IndexSet S;
    Vector rho_S;
    std::size_t face_dim;
    Matrix face_basis;  // |S| x face_dim
    double value;
  };
  std::vector<Hit> hits;
  for (const auto& f : faces) {
    std::vector<Vector> best;
    for (std::size_t k = 0; k < f.verts.size(); ++k) {
      if (std::abs(f.values[k] - opt) > tie) continue;
      Vector r = phase == OptProblem::B ? Vector(f.verts[k].head(f.verts[k].size() - 1)) : f.verts[k];
      bool dup = false;
      for (const auto& b : best)
        if ((b - r).cwiseAbs().maxCoeff() <= 1e-9) dup = true;
      if (!dup) best.push_back(std::move(r));
    }
    if (best.empty()) continue;
    const Matrix LS = linalg::principal(L, f.S);
    Matrix dirs = poly::affine_directions(best);
    if (problem == OptProblem::D) {
      // Minimize rho^T L rho over the maximal-volume face.
      const poly::HPolytope P = measure_polytope(f.S, init1, u);
      qp::Problem q;
      q.H = 2.0 * LS;
      q.g = Vector::Zero(LS.rows());
      q.A = P.A;
      q.b = P.b;
      q.E = Matrix::Ones(1, LS.rows());
      q.f = Vector::Constant(1, opt);
      const auto res = qp::solve(q, best.front());
      if (!res.converged) throw Error(ErrorCode::NumericalFailure, "active-set QP did not converge");
      const Matrix fam = null_directions(dirs, LS, rank_tol);
      hits.push_back({f.S, res.x, static_cast<std::size_t>(fam.cols()), fam, -res.x.dot(LS * res.x)});
      continue;
    }
    if (problem == OptProblem::A) dirs = null_directions(dirs, LS, rank_tol);
    for (auto& r : best) hits.push_back({f.S, r, static_cast<std::size_t>(dirs.cols()), dirs, opt});
  }

  double final_opt = opt;
  if (problem == OptProblem::D) {
    final_opt = -std::numeric_limits<double>::infinity();
    for (const auto& h : hits) final_opt = std::max(final_opt, h.value);
    const double dtie = tol.action_tie * std::max(1.0, std::abs(final_opt));
    std::erase_if(hits, [&](const Hit& h) { return h.value < final_opt - dtie; });
  }

  OptimizationResult out;
  out.problem = problem;
  const bool need_check = problem == OptProblem::B && cfg.b_scope == BScope::Space;
  auto is_minimizer = [&](const Measure& m1, const Potential& phi1) {
    if (convex_certificate(m1, phi1, u, tol.el_exact, tol)) return true;
    const auto mins = minimize_exact(u, phi1, cfg.exec, tol);
    return !mins.empty() && action_value(m1, phi1, u) <= mins.front().action + tol.action_tie;
  };
  std::vector<double> off_level(hits.size(), need_check ? std::max(0.0, final_opt) : 2.0);

  // (B, all points) The lifted optimum assumes the off-support potential can
  // drop to t. When L is indefinite that can break minimality for every
  // optimal vertex; then each vertex gets the lowest off-support level that
  // keeps it a minimizer (valid levels form an interval up to 1) and the
  // best vertex under that level is reported.
  bool relaxed_dropped = false;
  if (need_check) {
    bool any = false;
    for (std::size_t k = 0; k < hits.size() && !any; ++k) {
      const Measure m1 = Measure::clamped(linalg::scatter(hits[k].rho_S, hits[k].S, n).cwiseMax(0.0));
      any = is_minimizer(m1, solution_potential(m1, init1, u, off_level[k]));
    }
    if (!any && !hits.empty()) {
      relaxed_dropped = true;
      const double relaxed = final_opt;
      std::vector<Hit> fb;
      std::vector<double> fb_off;
      for (const auto& f : faces)
        for (const auto& v : f.verts) {
          const Vector rS = v.head(v.size() - 1);
          const Measure m1 = Measure::clamped(linalg::scatter(rS, f.S, n).cwiseMax(0.0));
          const Potential on = solution_potential(m1, init1, u, 0.0);
          double lo = std::max(0.0, v(v.size() - 1)), hi = 1.0;
          if (!is_minimizer(m1, solution_potential(m1, init1, u, lo))) {
            while (hi - lo > 1e-12) {
              const double mid = 0.5 * (lo + hi);
              (is_minimizer(m1, solution_potential(m1, init1, u, mid)) ? hi : lo) = mid;
            }
            lo = hi;
          }
          fb.push_back({f.S, rS, 0, Matrix(static_cast<Eigen::Index>(f.S.size()), 0),
                        std::max(on.values().maxCoeff(), lo)});
          fb_off.push_back(lo);
        }
      final_opt = std::numeric_limits<double>::infinity();
      for (const auto& h : fb) final_opt = std::min(final_opt, h.value);
      const double btie = tol.action_tie * std::max(1.0, std::abs(final_opt));
      hits.clear();
      off_level.clear();
      for (std::size_t k = 0; k < fb.size(); ++k)
        if (fb[k].value <= final_opt + btie) {
          hits.push_back(fb[k]);
          off_level.push_back(fb_off[k]);
        }
      out.notes.push_back(fmt::format(
          "the lifted B optimum {:.17g} loses minimality at every optimal vertex; reporting the best vertex whose "
          "off-support potential is raised until it minimizes",
          relaxed * inst.s));
    }
  }

  std::vector<std::pair<IndexSet, Vector>> kept;
  for (std::size_t hk = 0; hk < hits.size(); ++hk) {
    const Hit& h = hits[hk];
    Vector rho = linalg::scatter(h.rho_S, h.S, n).cwiseMax(0.0);
    bool dup = false;
    for (const auto& k : kept)
      if ((k.second - rho).cwiseAbs().maxCoeff() <= 1e-9) dup = true;
    if (dup) continue;
    const Measure m1 = Measure::clamped(rho);
    const Potential phi1 = solution_potential(m1, init1, u, off_level[hk]);
    if (need_check && !is_minimizer(m1, phi1)) {
      ++out.dropped_unverified;
      continue;
    }
    kept.emplace_back(h.S, rho);
    auto rec = make_record(Measure::clamped(inst.s * rho), Potential(inst.s * phi1.values()), inst, tol.el_exact, tol);
    rec.degeneracy_dim = h.face_dim;
    rec.family_basis = embed(h.face_basis, h.S, n);
    out.solutions.push_back(std::move(rec));
    out.family_vertices.push_back(inst.s * rho);
    if (h.face_dim >= out.family_dim) {
      out.family_dim = h.face_dim;
      out.family_basis = embed(h.face_basis, h.S, n);
    }
  }
  if (out.family_basis.size() == 0) out.family_basis = Matrix(static_cast<Eigen::Index>(n), 0);

  // Order by support, then weights.
  std::vector<std::size_t> idx(out.solutions.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto sa = out.solutions[a].rho.support(), sb = out.solutions[b].rho.support();
    if (sa != sb) return sa < sb;
    return poly::lex_less(out.solutions[a].rho.weights(), out.solutions[b].rho.weights());
  });
  std::vector<SolutionRecord> sorted_sol;
  std::vector<Vector> sorted_vert;
  for (auto i : idx) {
    sorted_sol.push_back(out.solutions[i]);
    sorted_vert.push_back(out.family_vertices[i]);
  }
  out.solutions = std::move(sorted_sol);
  out.family_vertices = std::move(sorted_vert);

  switch (problem) {
    case OptProblem::A:
    case OptProblem::D: out.optimum = final_opt * inst.s * inst.s; break;
    case OptProblem::B:
    case OptProblem::C: out.optimum = final_opt * inst.s; break;
  }
  out.unique = out.solutions.size() == 1 && out.family_dim == 0;

  // Potential coordinates that move along the optimal family.
  if (!out.solutions.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& r : out.solutions) {
        lo = std::min(lo, r.phi[i]);
        hi = std::max(hi, r.phi[i]);
        if (need_check && !relaxed_dropped && !contains(set_union(r.rho.support(), initial.I0), i)) {
          const double low = std::max(0.0, inst.s - inst.L().row(static_cast<Eigen::Index>(i)).dot(r.rho.weights()));
          lo = std::min(lo, low);
        }
      }
      if (hi - lo > 1e-9 * inst.s) out.free_potentials.push_back({i, lo, hi});
    }
  }

  if (problem == OptProblem::B) {
    if (cfg.b_scope == BScope::Space)
      out.notes.push_back(
          "B maximum taken over all points; off-support potentials are reported at the optimum, the largest value "
          "that keeps it");
    else
      out.notes.push_back("B maximum taken over supp rho only; off-support potentials fixed at 2");
  }
  for (const auto& fr : out.free_potentials)
    out.notes.push_back(fmt::format("potential at {} ranges over [{:.17g}, {:.17g}] across the optimal solutions",
                                    inst.space.label(fr.index), fr.lo, fr.hi));
  if (!out.free_potentials.empty() && problem == OptProblem::B)
    out.notes.push_back("setting off-support potentials to 2 collapses this potential family to one representative per measure");
  if (out.dropped_unverified > 0)
    out.notes.push_back(fmt::format("{} optimal candidates failed the minimality check and were dropped",
                                    out.dropped_unverified));
  return out;
}

}  // namespace cvp
