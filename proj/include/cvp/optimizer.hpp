#pragma once

#include <string>
#include <vector>

#include "cvp/parallel.hpp"
#include "cvp/polytope.hpp"
#include "cvp/types.hpp"

namespace cvp {

enum class OptProblem { A, B, C, D };
char problem_tag(OptProblem p);
OptProblem parse_problem_tag(const std::string& s);

// Which points the (B) maximum runs over.
//  Space:   every point; off-support potentials may be chosen as low as
//           minimality allows.
//  Support: supp rho only, off-support potentials fixed at 2.
enum class BScope { Space, Support };

struct OptimizerConfig {
  BScope b_scope = BScope::Space;
  Execution exec = Execution::Parallel;
  std::uint64_t constraint_shuffle_seed = 0;  // 0 keeps the natural constraint order
};

// Potential-space description of one support: rho_S = map * (s - phi_S).
struct SolutionPolytope {
  IndexSet support;
  Matrix map;                  // L_S^{-1}
  poly::HPolytope constraints; // in phi_S coordinates
  std::vector<std::string> constraint_names;
};

SolutionPolytope feasible_region(const IndexSet& support, const InitialData& initial, const ProblemInstance& inst,
                                 const Tolerances& tol = kTol);

// Measure-space polytope used by optimize: rho_S >= rho0_S, L_S rho_S <= s,
// and (L rho)_i <= s on I0 outside S. Coordinates follow `support`.
poly::HPolytope measure_polytope(const IndexSet& support, const InitialData& initial, const ProblemInstance& inst);

// Supports S ⊇ supp rho0 with L PSD on S ∪ I0, ascending by mask.
std::vector<IndexSet> candidate_supports(const InitialData& initial, const ProblemInstance& inst,
                                         Execution exec = Execution::Parallel, const Tolerances& tol = kTol);

// The potential attached to a solution measure: s - L rho on supp rho ∪ I0,
// `off` elsewhere.
Potential solution_potential(const Measure& rho, const InitialData& initial, const ProblemInstance& inst, double off);

struct PotentialRange {
  std::size_t index;
  double lo;
  double hi;
};

struct OptimizationResult {
  OptProblem problem = OptProblem::A;
  double optimum = 0.0;
  std::vector<SolutionRecord> solutions;
  std::size_t family_dim = 0;
  bool unique = false;
  std::vector<Vector> family_vertices;  // optimal measures spanning the family
  Matrix family_basis;                  // n x family_dim, directions of the largest optimal face
  std::vector<PotentialRange> free_potentials;
  std::vector<std::string> notes;
  std::size_t dropped_unverified = 0;
};

OptimizationResult optimize(OptProblem problem, const InitialData& initial, const ProblemInstance& inst,
                            const OptimizerConfig& cfg = {}, const Tolerances& tol = kTol);

// Objective of a solution pair as the problem defines it: action for A and D,
// maximal potential for B (scope as given), volume for C.
double objective_value(OptProblem problem, const Measure& rho, const Potential& phi, const ProblemInstance& inst,
                       BScope scope = BScope::Space);

}  // namespace cvp
