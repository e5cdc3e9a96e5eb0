#include <algorithm>
#include <cmath>

#include <omp.h>

#include "cvp/index_set.hpp"
#include "cvp/kernels.hpp"
#include "cvp/linalg.hpp"
#include "cvp/lp.hpp"
#include "cvp/polytope.hpp"

namespace cvp::kernels {

namespace {

bool off_support_ok(const Matrix& L, const Vector& phi, const Vector& rho, const IndexSet& off, double el_tol) {
  for (auto i : off) {
    const auto ii = static_cast<Eigen::Index>(i);
    if (L.row(ii).dot(rho) + phi(ii) < 1.0 - el_tol) return false;
  }
  return true;
}

// Most interior member p + N c of the family: maximize t with p + N c >= t
// on S and the off-support inequalities intact.
bool interior_member(const Matrix& L, const Vector& phi, const IndexSet& S, const IndexSet& off,
                     const Vector& p, const Matrix& N, double el_tol, Vector& out, double& t_out) {
  const Eigen::Index k = N.cols();
  const auto s = static_cast<Eigen::Index>(S.size());
  const auto m_off = static_cast<Eigen::Index>(off.size());
  lp::Problem prob;
  prob.c = Vector::Zero(k + 1);
  prob.c(k) = -1.0;
  prob.A_ub = Matrix::Zero(s + m_off + 1, k + 1);
  prob.b_ub = Vector::Zero(s + m_off + 1);
  prob.A_ub.block(0, 0, s, k) = -N;
  prob.A_ub.block(0, k, s, 1).setOnes();
  prob.b_ub.head(s) = p;
  const Matrix LoS = linalg::submatrix(L, off, S);
  if (m_off > 0) {
    prob.A_ub.block(s, 0, m_off, k) = -LoS * N;
    prob.b_ub.segment(s, m_off) = LoS * p + linalg::gather(phi, off) - Vector::Ones(m_off) +
                                  Vector::Constant(m_off, 0.5 * el_tol);
  }
  prob.A_ub(s + m_off, k) = 1.0;
  prob.b_ub(s + m_off) = 1.0;
  prob.free.assign(static_cast<std::size_t>(k + 1), true);
  const auto res = lp::solve(prob);
  if (res.status != lp::Status::Optimal) return false;
  out = p + N * res.x.head(k);
  t_out = res.x(k);
  return true;
}

}  // namespace

SupportSolution solve_support_s1(const Matrix& L, const Vector& phi, const IndexSet& S, double rank_tol,
                                 const Tolerances& tol) {
  SupportSolution out;
  out.support = S;
  const std::size_t n = static_cast<std::size_t>(L.rows());
  const IndexSet off = complement(S, n);
  const Matrix LS = linalg::principal(L, S);
  const Vector rhs = Vector::Ones(static_cast<Eigen::Index>(S.size())) - linalg::gather(phi, S);
  const auto sol = linalg::solve_symmetric(LS, rhs, rank_tol);
  out.null_basis = sol.null_basis;
  out.rho_on_support = sol.particular;
  if (sol.residual > tol.el_exact * (1.0 + rhs.cwiseAbs().maxCoeff())) {
    out.consistent = false;
    return out;
  }

  Vector rho_S = sol.particular;
  auto full = [&](const Vector& r) { return linalg::scatter(r, S, n); };
  out.feasible = rho_S.minCoeff() >= -tol.support_epsilon && off_support_ok(L, phi, full(rho_S), off, tol.el_exact);
  out.interior = out.feasible && rho_S.minCoeff() > tol.support_epsilon;

  if (sol.null_basis.cols() > 0 && !out.interior) {
    Vector member;
    double t = 0.0;
    if (interior_member(L, phi, S, off, sol.particular, sol.null_basis, tol.el_exact, member, t)) {
      if (t >= -tol.support_epsilon) {
        rho_S = member;
        out.feasible = true;
        out.interior = t > tol.support_epsilon;
      }
    }
  }
  out.rho_on_support = rho_S;

  // Lineality of the family: null directions that keep every active
  // off-support inequality an equality.
  if (sol.null_basis.cols() > 0) {
    const Vector rho = full(rho_S);
    IndexSet active;
    for (auto i : off) {
      const auto ii = static_cast<Eigen::Index>(i);
      if (std::abs(L.row(ii).dot(rho) + phi(ii) - 1.0) <= tol.el_exact) active.push_back(i);
    }
    Matrix F = sol.null_basis;
    if (!active.empty()) {
      const Matrix C = linalg::submatrix(L, active, S) * sol.null_basis;
      const Matrix Z = linalg::null_space(C, rank_tol);
      F = sol.null_basis * Z;
      if (F.cols() > 0) F = linalg::column_basis(F, 1e-12);
    }
    out.family_basis = F;
    out.family_dim = static_cast<std::size_t>(F.cols());
  }
  return out;
}

namespace {

void candidate_for_mask(const Matrix& L, const Vector& phi, std::uint64_t mask, double rank_tol,
                        const Tolerances& tol, std::vector<Candidate>& sink) {
  const std::size_t n = static_cast<std::size_t>(L.rows());
  const IndexSet S = mask_to_set(mask);
  const auto sol = solve_support_s1(L, phi, S, rank_tol, tol);
  if (!sol.interior) return;
  Candidate c;
  c.support = S;
  c.rho = linalg::scatter(sol.rho_on_support, S, n);
  c.family = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(sol.family_dim));
  for (std::size_t a = 0; a < S.size(); ++a)
    for (Eigen::Index j = 0; j < c.family.cols(); ++j)
      c.family(static_cast<Eigen::Index>(S[a]), j) = sol.family_basis(static_cast<Eigen::Index>(a), j);
  c.action = c.rho.dot(L * c.rho) + 2.0 * (phi.array() - 1.0).matrix().dot(c.rho);
  sink.push_back(std::move(c));
}

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.support != b.support) return a.support < b.support;
  return poly::lex_less(a.rho, b.rho);
}

}  // namespace

std::vector<Candidate> support_candidates(const Matrix& L, const Vector& phi, double rank_tol,
                                          const Tolerances& tol, Execution exec) {
  const std::size_t n = static_cast<std::size_t>(L.rows());
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Candidate> out;

  if (phi.minCoeff() >= 1.0 - tol.el_exact) {
    Candidate zero;
    zero.rho = Vector::Zero(static_cast<Eigen::Index>(n));
    zero.family = Matrix(static_cast<Eigen::Index>(n), 0);
    out.push_back(std::move(zero));
  }

  if (exec == Execution::Serial) {
    for (std::uint64_t mask = 1; mask < count; ++mask) candidate_for_mask(L, phi, mask, rank_tol, tol, out);
  } else {
    std::vector<std::vector<Candidate>> local(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
      auto& sink = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t mask = 1; mask < static_cast<std::int64_t>(count); ++mask)
        candidate_for_mask(L, phi, static_cast<std::uint64_t>(mask), rank_tol, tol, sink);
    }
    for (auto& v : local)
      for (auto& c : v) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), candidate_less);
  return out;
}

}  // namespace cvp::kernels
