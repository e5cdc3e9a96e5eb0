#pragma once

#include <vector>

#include "cvp/types.hpp"

namespace cvp::poly {

// {x : A x <= b}
struct HPolytope {
  Matrix A;
  Vector b;
  Eigen::Index dim() const { return A.cols(); }
};

// Vertices of a bounded polytope by the double description method on the
// homogenized cone {(x, t) : A x - b t <= 0, t >= 0}. Constraints are
// inserted in `order` (natural order when empty). Output is sorted
// lexicographically and duplicate-free; an empty polytope gives no vertices.
std::vector<Vector> vertices(const HPolytope& P, const std::vector<std::size_t>& order = {},
                             double tol = 1e-9);

// Orthonormal basis of the directions spanned by a point set (differences to the first point).
Matrix affine_directions(const std::vector<Vector>& pts, double tol = 1e-9);

bool lex_less(const Vector& a, const Vector& b);

}  // namespace cvp::poly
