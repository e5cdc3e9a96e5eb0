#include "cvp/lp.hpp"

#include <cmath>
#include <limits>

namespace cvp::lp {

namespace {

struct Tableau {
  Matrix T;  // rows 0..m-1 constraints, row m objective; last column rhs
  std::vector<Eigen::Index> basis;
  Eigen::Index m = 0, ncols = 0;

  void pivot(Eigen::Index r, Eigen::Index c) {
    T.row(r) /= T(r, c);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == r) continue;
      const double f = T(i, c);
      if (f != 0.0) T.row(i) -= f * T.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Bland's rule over columns [0, usable). Returns false if unbounded.
  Status run(Eigen::Index usable, double tol) {
    const Eigen::Index rhs = ncols;
    for (int iter = 0; iter < 100000; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < usable; ++j)
        if (T(m, j) < -tol) { enter = j; break; }
      if (enter < 0) return Status::Optimal;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = T(i, enter);
        if (a > tol) {
          const double ratio = T(i, rhs) / a;
          if (ratio < best - 1e-14 ||
              (std::abs(ratio - best) <= 1e-14 && basis[static_cast<std::size_t>(i)] <
                                                      basis[static_cast<std::size_t>(leave)])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
    return Status::IterationLimit;
  }
};

}  // namespace

Result solve(const Problem& p, double tol) {
  const Eigen::Index nv = p.c.size();
  const Eigen::Index m_ub = p.A_ub.rows();
  const Eigen::Index m_eq = p.A_eq.rows();
  const bool any_free = !p.free.empty();

  // Split free variables into positive and negative parts.
  std::vector<Eigen::Index> neg_col(static_cast<std::size_t>(nv), -1);
  Eigen::Index N = nv;
  if (any_free)
    for (Eigen::Index j = 0; j < nv; ++j)
      if (p.free[static_cast<std::size_t>(j)]) neg_col[static_cast<std::size_t>(j)] = N++;

  const Eigen::Index m = m_ub + m_eq;
  auto expand = [&](const Matrix& A) {
    Matrix out = Matrix::Zero(A.rows(), N);
    out.leftCols(nv) = A;
    for (Eigen::Index j = 0; j < nv; ++j)
      if (neg_col[static_cast<std::size_t>(j)] >= 0) out.col(neg_col[static_cast<std::size_t>(j)]) = -A.col(j);
    return out;
  };
  Matrix Aub = m_ub ? expand(p.A_ub) : Matrix(0, N);
  Matrix Aeq = m_eq ? expand(p.A_eq) : Matrix(0, N);

  // Columns: structural N, slacks m_ub, artificials (one per row needing one).
  std::vector<bool> needs_art(static_cast<std::size_t>(m), false);
  Eigen::Index n_art = 0;
  for (Eigen::Index i = 0; i < m_ub; ++i)
    if (p.b_ub(i) < 0) { needs_art[static_cast<std::size_t>(i)] = true; ++n_art; }
  for (Eigen::Index i = 0; i < m_eq; ++i) { needs_art[static_cast<std::size_t>(m_ub + i)] = true; ++n_art; }

  Tableau tab;
  tab.m = m;
  tab.ncols = N + m_ub + n_art;
  tab.T = Matrix::Zero(m + 1, tab.ncols + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);
  const Eigen::Index rhs = tab.ncols;
  Eigen::Index art = N + m_ub;
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool is_ub = i < m_ub;
    double sign = 1.0;
    if (is_ub) {
      tab.T.row(i).head(N) = Aub.row(i);
      tab.T(i, N + i) = 1.0;
      tab.T(i, rhs) = p.b_ub(i);
      if (p.b_ub(i) < 0) sign = -1.0;
    } else {
      tab.T.row(i).head(N) = Aeq.row(i - m_ub);
      tab.T(i, rhs) = p.b_eq(i - m_ub);
      if (p.b_eq(i - m_ub) < 0) sign = -1.0;
    }
    tab.T.row(i) *= sign;
    if (needs_art[static_cast<std::size_t>(i)]) {
      tab.T(i, art) = 1.0;
      tab.basis[static_cast<std::size_t>(i)] = art++;
    } else {
      tab.basis[static_cast<std::size_t>(i)] = N + i;
    }
  }

  Result res;
  // Phase 1.
  if (n_art > 0) {
    for (Eigen::Index j = N + m_ub; j < tab.ncols; ++j) tab.T(m, j) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (tab.basis[static_cast<std::size_t>(i)] >= N + m_ub) tab.T.row(m) -= tab.T.row(i);
    const Status st = tab.run(tab.ncols, tol);
    if (st == Status::IterationLimit) { res.status = st; return res; }
    const double scale = 1.0 + tab.T.col(rhs).head(m).cwiseAbs().maxCoeff();
    if (-tab.T(m, rhs) > tol * scale * 10) { res.status = Status::Infeasible; return res; }
    // Drive artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] < N + m_ub) continue;
      for (Eigen::Index j = 0; j < N + m_ub; ++j)
        if (std::abs(tab.T(i, j)) > 1e-9) { tab.pivot(i, j); break; }
    }
  }

  // Phase 2 on the original objective; artificial columns are frozen out.
  Vector cost = Vector::Zero(tab.ncols);
  cost.head(nv) = p.c;
  for (Eigen::Index j = 0; j < nv; ++j)
    if (neg_col[static_cast<std::size_t>(j)] >= 0) cost(neg_col[static_cast<std::size_t>(j)]) = -p.c(j);
  tab.T.row(m).setZero();
  tab.T.row(m).head(tab.ncols) = cost.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double cb = cost(tab.basis[static_cast<std::size_t>(i)]);
    if (cb != 0.0) tab.T.row(m) -= cb * tab.T.row(i);
  }
  // Rows still holding an artificial are redundant; keep them but never let
  // artificial columns re-enter.
  const Status st = tab.run(N + m_ub, tol);
  if (st != Status::Optimal) { res.status = st; return res; }

  Vector xs = Vector::Zero(tab.ncols);
  for (Eigen::Index i = 0; i < m; ++i) xs(tab.basis[static_cast<std::size_t>(i)]) = tab.T(i, rhs);
  res.x = xs.head(nv);
  for (Eigen::Index j = 0; j < nv; ++j)
    if (neg_col[static_cast<std::size_t>(j)] >= 0) res.x(j) -= xs(neg_col[static_cast<std::size_t>(j)]);
  res.objective = p.c.dot(res.x);
  res.status = Status::Optimal;
  return res;
}

}  // namespace cvp::lp
