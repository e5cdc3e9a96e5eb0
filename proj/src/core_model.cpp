#include "cvp/core_model.hpp"

#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "cvp/index_set.hpp"
#include "cvp/linalg.hpp"

namespace cvp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonpositiveDiagonal: return "NonpositiveDiagonal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::NegativePotential: return "NegativePotential";
    case ErrorCode::NegativeMeasure: return "NegativeMeasure";
    case ErrorCode::NonpositiveS: return "NonpositiveS";
    case ErrorCode::NonpositiveLambda: return "NonpositiveLambda";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::NuZero: return "NuZero";
    case ErrorCode::NuNotInK: return "NuNotInK";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::SingularSupportMatrix: return "SingularSupportMatrix";
    case ErrorCode::DoesNotEncloseInitialData: return "DoesNotEncloseInitialData";
    case ErrorCode::NoDependentSet: return "NoDependentSet";
    case ErrorCode::NoGerms: return "NoGerms";
    case ErrorCode::COutOfRange: return "COutOfRange";
    case ErrorCode::InvalidDiscretization: return "InvalidDiscretization";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

PointSpace::PointSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorCode::InvalidSpace, "point space needs at least one point");
  std::set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second)
      throw Error(ErrorCode::InvalidSpace, fmt::format("duplicate label '{}'", l));
}

PointSpace PointSpace::indexed(std::size_t n, const std::string& prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(fmt::format("{}{}", prefix, i));
  return PointSpace(std::move(labels));
}

std::optional<std::size_t> PointSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

Measure::Measure(Vector weights) : weights_(std::move(weights)) {
  for (Eigen::Index i = 0; i < weights_.size(); ++i)
    if (!(weights_(i) >= 0.0) || !std::isfinite(weights_(i)))
      throw Error(ErrorCode::NegativeMeasure,
                  fmt::format("measure weight {} at index {} is not a nonnegative number", weights_(i), i));
}

Measure Measure::clamped(Vector weights, double eps) {
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (weights(i) < 0.0 && weights(i) >= -eps) weights(i) = 0.0;
  return Measure(std::move(weights));
}

IndexSet Measure::support(double eps) const {
  IndexSet out;
  for (Eigen::Index i = 0; i < weights_.size(); ++i)
    if (weights_(i) > eps) out.push_back(static_cast<std::size_t>(i));
  return out;
}

Potential::Potential(Vector values) : values_(std::move(values)) {
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (!(values_(i) >= 0.0) || !std::isfinite(values_(i)))
      throw Error(ErrorCode::NegativePotential,
                  fmt::format("potential value {} at index {} is not a nonnegative number", values_(i), i));
}

IndexSet InitialData::anchor() const { return set_union(rho0.support(), I0); }

IndexSet normalize_index_set(IndexSet s, std::size_t n) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!s.empty() && s.back() >= n)
    throw Error(ErrorCode::DimensionMismatch, fmt::format("index {} out of range for {} points", s.back(), n));
  return s;
}

void require_size(std::size_t got, std::size_t n, const char* what) {
  if (got != n)
    throw Error(ErrorCode::DimensionMismatch, fmt::format("{} has length {}, expected {}", what, got, n));
}

ProblemInstance make_instance(PointSpace space, LagrangianMatrix L, double s,
                              std::optional<Potential> potential,
                              std::optional<InitialData> initial) {
  const std::size_t n = space.size();
  require_size(L.size(), n, "lagrangian");
  if (!(s > 0.0) || !std::isfinite(s))
    throw Error(ErrorCode::NonpositiveS, fmt::format("s must be positive, got {}", s));
  if (potential) require_size(potential->size(), n, "potential");
  if (initial) {
    require_size(initial->rho0.size(), n, "initial_measure");
    initial->I0 = normalize_index_set(initial->I0, n);
  }
  return ProblemInstance{std::move(space), std::move(L), s, std::move(potential), std::move(initial)};
}

LagrangianMatrix validate_lagrangian(const Matrix& entries) {
  if (entries.rows() != entries.cols())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("lagrangian is {}x{}, not square", entries.rows(), entries.cols()));
  if (entries.rows() == 0) throw Error(ErrorCode::InvalidSpace, "lagrangian is empty");
  const auto n = entries.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = entries(i, j);
      if (!std::isfinite(v))
        throw Error(ErrorCode::NegativeEntry, fmt::format("entry ({}, {}) is not finite", i, j));
      if (v < 0.0)
        throw Error(ErrorCode::NegativeEntry, fmt::format("entry ({}, {}) = {} is negative", i, j, v));
      if (j > i && v != entries(j, i))
        throw Error(ErrorCode::NotSymmetric,
                    fmt::format("entry ({}, {}) = {} differs from ({}, {}) = {}", i, j, v, j, i, entries(j, i)));
    }
    if (!(entries(i, i) > 0.0))
      throw Error(ErrorCode::NonpositiveDiagonal, fmt::format("diagonal entry ({}, {}) is not positive", i, i));
  }
  LagrangianMatrix L;
  L.entries_ = entries;
  L.spectral_norm_ = linalg::spectral_norm_symmetric(entries);
  return L;
}

double action_value(const Measure& rho, const Potential& phi, const ProblemInstance& inst) {
  const std::size_t n = inst.n();
  require_size(rho.size(), n, "measure");
  require_size(phi.size(), n, "potential");
  const Vector& r = rho.weights();
  return r.dot(inst.L() * r) + 2.0 * (phi.values().array() - inst.s).matrix().dot(r);
}

ElResiduals el_residuals(const Measure& rho, const Potential& phi, const ProblemInstance& inst) {
  const std::size_t n = inst.n();
  require_size(rho.size(), n, "measure");
  require_size(phi.size(), n, "potential");
  ElResiduals out;
  out.per_point = inst.L() * rho.weights() + phi.values() - Vector::Constant(static_cast<Eigen::Index>(n), inst.s);
  const IndexSet supp = rho.support();
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = out.per_point(static_cast<Eigen::Index>(i));
    sup = std::max(sup, std::max(0.0, -r));
  }
  for (auto i : supp) sup = std::max(sup, std::abs(out.per_point(static_cast<Eigen::Index>(i))));
  out.sup = sup;
  out.psd_min_eigenvalue = restricted_min_eigenvalue(inst, supp);
  return out;
}

Rescaled rescale(const Measure& rho, const Potential& phi, double s, double lambda) {
  if (!(lambda > 0.0))
    throw Error(ErrorCode::NonpositiveLambda, fmt::format("rescaling factor must be positive, got {}", lambda));
  return {Measure(lambda * rho.weights()), Potential(lambda * phi.values()), lambda * s};
}

ProblemInstance normalized(const ProblemInstance& inst) {
  ProblemInstance out = inst;
  if (inst.s == 1.0) return out;
  if (inst.potential) out.potential = Potential(inst.potential->values() / inst.s);
  if (inst.initial) out.initial->rho0 = Measure(inst.initial->rho0.weights() / inst.s);
  out.s = 1.0;
  return out;
}

double apriori_volume_bound(const ProblemInstance& inst) {
  // 2n / delta at s = 1; masses scale with s.
  const double delta = 0.5 * inst.L().diagonal().minCoeff();
  return inst.s * 2.0 * static_cast<double>(inst.n()) / delta;
}

double restricted_min_eigenvalue(const ProblemInstance& inst, const IndexSet& idx) {
  return linalg::min_eigenvalue(linalg::principal(inst.L(), idx));
}

}  // namespace cvp
