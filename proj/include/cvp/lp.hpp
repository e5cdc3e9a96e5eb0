#pragma once

#include <vector>

#include "cvp/types.hpp"

namespace cvp::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

// minimize c^T x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x_j >= 0 unless free[j].
struct Problem {
  Vector c;
  Matrix A_ub;
  Vector b_ub;
  Matrix A_eq;
  Vector b_eq;
  std::vector<bool> free;  // empty: every variable nonnegative
};

struct Result {
  Status status = Status::Infeasible;
  Vector x;
  double objective = 0.0;
};

// Dense two-phase tableau simplex with Bland's rule. Meant for the tiny
// programs that show up per support, not for anything large.
Result solve(const Problem& p, double tol = 1e-10);

}  // namespace cvp::lp
