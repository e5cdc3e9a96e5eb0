#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvp/error.hpp"

namespace cvp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Sorted, duplicate-free list of point indices.
using IndexSet = std::vector<std::size_t>;

struct Tolerances {
  double support_epsilon = 1e-12;
  double el_exact = 1e-9;
  double el_iterative = 1e-6;
  double psd_relative = 1e-10;  // times the spectral norm of L
  double action_tie = 1e-9;
};

inline constexpr Tolerances kTol{};
inline constexpr std::size_t kExactSolverMaxN = 16;
inline constexpr std::size_t kSubsetEnumMaxN = 16;

class PointSpace {
 public:
  explicit PointSpace(std::vector<std::string> labels);
  static PointSpace indexed(std::size_t n, const std::string& prefix = "x");

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool operator==(const PointSpace&) const = default;

 private:
  std::vector<std::string> labels_;
};

class LagrangianMatrix {
 public:
  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double spectral_norm() const { return spectral_norm_; }
  double psd_tolerance(const Tolerances& tol = kTol) const {
    return tol.psd_relative * spectral_norm_;
  }

  bool operator==(const LagrangianMatrix& o) const { return entries_ == o.entries_; }

 private:
  friend LagrangianMatrix validate_lagrangian(const Matrix& entries);
  Matrix entries_;
  double spectral_norm_ = 0.0;
};

class Measure {
 public:
  Measure() = default;
  explicit Measure(Vector weights);
  static Measure zero(std::size_t n) { return Measure(Vector::Zero(static_cast<Eigen::Index>(n))); }
  // Sets entries in [-eps, 0) to exactly zero first.
  static Measure clamped(Vector weights, double eps = kTol.support_epsilon);

  const Vector& weights() const { return weights_; }
  std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
  double operator[](std::size_t i) const { return weights_(static_cast<Eigen::Index>(i)); }
  IndexSet support(double eps = kTol.support_epsilon) const;
  double total_mass() const { return weights_.sum(); }

 private:
  Vector weights_;
};

struct SignedMeasure {
  Vector weights;
};

class Potential {
 public:
  Potential() = default;
  explicit Potential(Vector values);
  static Potential constant(std::size_t n, double c) {
    return Potential(Vector::Constant(static_cast<Eigen::Index>(n), c));
  }

  const Vector& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }

  bool operator==(const Potential& o) const { return values_ == o.values_; }

 private:
  Vector values_;
};

struct InitialData {
  Measure rho0;
  IndexSet I0;

  // supp rho0 united with I0, the set every enclosing subset must contain.
  IndexSet anchor() const;
  static InitialData empty(std::size_t n) { return {Measure::zero(n), {}}; }
};

struct ProblemInstance {
  PointSpace space;
  LagrangianMatrix lagrangian;
  double s = 1.0;
  std::optional<Potential> potential;
  std::optional<InitialData> initial;

  std::size_t n() const { return space.size(); }
  const Matrix& L() const { return lagrangian.matrix(); }
  double psd_tolerance(const Tolerances& tol = kTol) const { return lagrangian.psd_tolerance(tol); }
};

// Checks dimensions, s > 0 and the initial set; the Lagrangian is already validated.
ProblemInstance make_instance(PointSpace space, LagrangianMatrix L, double s = 1.0,
                              std::optional<Potential> potential = std::nullopt,
                              std::optional<InitialData> initial = std::nullopt);

struct SolutionRecord {
  Measure rho;
  Potential phi;
  double action = 0.0;
  double el_sup_residual = 0.0;
  double psd_min_eigenvalue = 0.0;
  std::size_t degeneracy_dim = 0;
  bool certified_global = false;
  // Orthonormal directions (columns, full length n) along which rho moves
  // without leaving the minimizer set; empty when degeneracy_dim is 0.
  Matrix family_basis;
};

}  // namespace cvp
