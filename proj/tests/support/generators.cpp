#include "generators.hpp"

#include "cvp/core_model.hpp"

namespace cvp::testing {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Matrix random_lagrangian(Rng& rng, std::size_t n, LagrangianKind kind) {
  const auto N = static_cast<Eigen::Index>(n);
  Matrix L(N, N);
  switch (kind) {
    case LagrangianKind::General:
      for (Eigen::Index i = 0; i < N; ++i) {
        L(i, i) = rng.uniform(0.5, 2.0);
        for (Eigen::Index j = 0; j < i; ++j) L(i, j) = L(j, i) = rng.coin(0.25) ? 0.0 : rng.uniform(0.0, 1.5);
      }
      break;
    case LagrangianKind::Definite: {
      Matrix B(N, N);
      for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j) B(i, j) = rng.coin(0.4) ? 0.0 : rng.uniform(0.0, 1.0);
      L = B * B.transpose();
      for (Eigen::Index i = 0; i < N; ++i) L(i, i) += rng.uniform(0.2, 1.0);
      // Force bitwise symmetry.
      L = (0.5 * (L + L.transpose())).eval();
      break;
    }
    case LagrangianKind::Grid: {
      static const std::vector<double> diag{1.5, 2.0, 2.5, 3.0};
      static const std::vector<double> off{0.0, 0.5, 1.0, 1.5, 2.0};
      for (Eigen::Index i = 0; i < N; ++i) {
        L(i, i) = rng.pick(diag);
        for (Eigen::Index j = 0; j < i; ++j) L(i, j) = L(j, i) = rng.pick(off);
      }
      break;
    }
    case LagrangianKind::Constant:
      L.setOnes();
      break;
  }
  return L;
}

Vector random_potential(Rng& rng, std::size_t n, double lo, double hi) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

Vector random_weights(Rng& rng, std::size_t n, double hi, double p_zero) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.coin(p_zero) ? 0.0 : rng.uniform(0.0, hi);
  return v;
}

IndexSet random_subset(Rng& rng, std::size_t n, double p) {
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i)
    if (rng.coin(p)) out.push_back(i);
  return out;
}

ProblemInstance random_instance(Rng& rng, std::size_t n, LagrangianKind kind, double s) {
  return make_instance(PointSpace::indexed(n), validate_lagrangian(random_lagrangian(rng, n, kind)), s,
                       Potential(s * random_potential(rng, n)));
}

namespace {

Matrix wedge_matrix() {
  Matrix L(3, 3);
  L << 1, 0.5, 0, 0.5, 1, 0.5, 0, 0.5, 1;
  return L;
}

}  // namespace

ProblemInstance wedge(std::optional<Vector> phi, bool with_initial) {
  std::optional<Potential> p;
  if (phi) p = Potential(*phi);
  std::optional<InitialData> init;
  if (with_initial) init = InitialData{Measure(vec({0, 0.5, 0})), {}};
  return make_instance(PointSpace({"p1", "p2", "p3"}), validate_lagrangian(wedge_matrix()), 1.0, p, init);
}

ProblemInstance wedge4() {
  Matrix L = Matrix::Zero(4, 4);
  L.topLeftCorner(3, 3) = wedge_matrix();
  L(3, 3) = 1.0;
  return make_instance(PointSpace({"p1", "p2", "p3", "p4"}), validate_lagrangian(L), 1.0, std::nullopt,
                       InitialData{Measure(vec({0, 0.5, 0, 0})), {}});
}

ProblemInstance lmat(std::optional<Vector> phi) {
  Matrix L(3, 3);
  L << 1, 1, 1, 1, 1, 2, 1, 2, 1;
  std::optional<Potential> p;
  if (phi) p = Potential(*phi);
  return make_instance(PointSpace({"a", "b", "c"}), validate_lagrangian(L), 1.0, p);
}

ProblemInstance constant_lagrangian(std::size_t n, std::optional<Vector> phi) {
  std::optional<Potential> p;
  if (phi) p = Potential(*phi);
  return make_instance(PointSpace::indexed(n), validate_lagrangian(Matrix::Ones(static_cast<Eigen::Index>(n),
                                                                                 static_cast<Eigen::Index>(n))),
                       1.0, p);
}

}  // namespace cvp::testing
