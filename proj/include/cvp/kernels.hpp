#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cvp/inner_solver.hpp"

// Enumeration kernels. Each has a serial reference and an OpenMP version
// that must produce identical, identically ordered output.
namespace cvp::kernels {

// Works at s = 1: phi is already divided by s.
SupportSolution solve_support_s1(const Matrix& L, const Vector& phi, const IndexSet& S, double rank_tol,
                                 const Tolerances& tol);

struct Candidate {
  IndexSet support;
  Vector rho;           // full length, s = 1 scale
  Matrix family;        // n x family_dim
  double action = 0.0;  // s = 1 scale
};

// Feasible interior KKT points over all 2^n - 1 supports, plus rho = 0 when
// that is feasible. Sorted by support, then weights.
std::vector<Candidate> support_candidates(const Matrix& L, const Vector& phi, double rank_tol,
                                          const Tolerances& tol, Execution exec);

// All subsets Omega with anchor ⊆ Omega ⊆ {0..n-1} for which pred(mask) holds.
// Ascending mask order.
// pred must be safe to call concurrently.
std::vector<std::uint64_t> filter_supersets(std::size_t n, std::uint64_t anchor,
                                            const std::function<bool(std::uint64_t)>& pred, Execution exec);

}  // namespace cvp::kernels
