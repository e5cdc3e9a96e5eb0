#pragma once

#include "cvp/types.hpp"

namespace cvp::qp {

// minimize 1/2 x^T H x + g^T x  s.t.  A x <= b,  E x = f.
// H symmetric positive semidefinite; zero-curvature directions are followed
// until a constraint blocks them.
struct Problem {
  Matrix H;
  Vector g;
  Matrix A;
  Vector b;
  Matrix E;
  Vector f;
};

struct Result {
  bool converged = false;
  bool unbounded = false;
  Vector x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

// x0 must be feasible.
Result solve(const Problem& p, const Vector& x0, double tol = 1e-10);

}  // namespace cvp::qp
