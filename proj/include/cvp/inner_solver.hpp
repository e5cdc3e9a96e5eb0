#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cvp/parallel.hpp"
#include "cvp/types.hpp"

namespace cvp {

struct SupportSolution {
  IndexSet support;
  Vector rho_on_support;     // min-norm solution, or an interior family member when that one is not
  std::size_t family_dim = 0;
  Matrix family_basis;       // |S| x family_dim, orthonormal
  Matrix null_basis;         // |S| x nullity(L_S)
  bool consistent = true;    // L_S rho = s - phi_S has a solution at all
  bool feasible = false;     // rho_S >= 0 and the off-support inequality holds
  bool interior = false;     // additionally every weight on S exceeds support_epsilon
};

SupportSolution solve_on_support(const ProblemInstance& inst, const Potential& phi, const IndexSet& support,
                                 const Tolerances& tol = kTol);

// Every global minimizer, one record per support (degenerate families carry a
// representative plus family_basis). Sorted by support, then weights.
std::vector<SolutionRecord> minimize_exact(const ProblemInstance& inst, const Potential& phi,
                                           Execution exec = Execution::Parallel, const Tolerances& tol = kTol);

struct IterativeConfig {
  std::size_t restarts = 8;
  std::size_t max_iters = 100000;
  double gradient_tol = 1e-10;
  std::uint64_t seed = 0x5eedULL;
};

struct IterativeResult {
  SolutionRecord record;
  bool converged = false;
  std::size_t iterations = 0;  // of the run that produced the record
};

IterativeResult minimize_iterative(const ProblemInstance& inst, const Potential& phi,
                                   const IterativeConfig& cfg = {}, const Tolerances& tol = kTol);

bool verify_global_minimizer(const Measure& rho, const Potential& phi, const ProblemInstance& inst,
                             double el_tol = kTol.el_exact, const Tolerances& tol = kTol);

// phi on supp rho, 2s elsewhere.
Potential canonicalize_potential(const Measure& rho, const Potential& phi, const ProblemInstance& inst,
                                 const Tolerances& tol = kTol);

std::pair<Measure, Potential> localize(const Measure& rho, const Potential& phi, const IndexSet& subset,
                                       const ProblemInstance& inst);

struct PositivityCheck {
  bool nonnegative = false;
  double min_eigenvalue = 0.0;
};
PositivityCheck extended_positivity_check(const Measure& rho, const Potential& phi, const Measure& nu,
                                          const ProblemInstance& inst, const Tolerances& tol = kTol);

// KKT holds and L is PSD on {phi <= s}: rho is then global by convexity on
// that set, whatever phi does elsewhere.
bool convex_certificate(const Measure& rho, const Potential& phi, const ProblemInstance& inst,
                        double el_tol = kTol.el_exact, const Tolerances& tol = kTol);

// Residuals and action for a pair already known to be a minimizer.
SolutionRecord make_record(const Measure& rho, const Potential& phi, const ProblemInstance& inst,
                           double el_tol, const Tolerances& tol = kTol);

}  // namespace cvp
