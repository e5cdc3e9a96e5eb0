#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvp/continuum.hpp"
#include "cvp/core_model.hpp"
#include "cvp/index_set.hpp"
#include "cvp/inner_solver.hpp"
#include "generators.hpp"

using namespace cvp;
using namespace cvp::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::NumericalFailure;
}

}  // namespace

TEST(CircleDiscretization, Points) {
  const CircleDiscretization d(8);
  EXPECT_EQ(d.point(0), 0.0);
  EXPECT_NEAR(d.point(2), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(d.quadrature_weight(), std::numbers::pi / 4, 1e-15);
  EXPECT_EQ(code_of([] { CircleDiscretization(2); }), ErrorCode::InvalidDiscretization);
  EXPECT_EQ(code_of([] { modified_heat_kernel_circle(CircleDiscretization(4)); }), ErrorCode::InvalidDiscretization);
}

TEST(CircleKernel, MatchesDirectSum) {
  for (double t : {0.0, 0.3, 1.0, 2.5, std::numbers::pi}) {
    double full = 1.0, mod = 1.0;
    for (int k = 1; k <= 27; ++k) {
      full += 2.0 * std::exp(-double(k * k)) * std::cos(k * t);
      if (k != 1) mod += 2.0 * std::exp(-double(k * k)) * std::cos(k * t);
    }
    EXPECT_NEAR(circle_kernel(t, 27, false), full / (2 * std::numbers::pi), 1e-16);
    EXPECT_NEAR(circle_kernel(t, 27, true), mod / (2 * std::numbers::pi), 1e-16);
  }
  // Periodic and even.
  EXPECT_NEAR(circle_kernel(0.7, 27, false), circle_kernel(-0.7, 27, false), 1e-17);
  EXPECT_NEAR(circle_kernel(0.7, 27, false), circle_kernel(0.7 + 2 * std::numbers::pi, 27, false), 1e-15);
}

TEST(HeatKernel, RowSumsAndSymmetry) {
  for (std::size_t n : {8u, 16u, 33u, 64u}) {
    const CircleDiscretization d(n);
    const auto L = heat_kernel_circle(d);
    const Matrix& M = L.matrix();
    EXPECT_EQ(M, M.transpose());
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      EXPECT_NEAR(M.row(i).sum() * d.quadrature_weight(), 1.0, 1e-13);
      // Circulant.
      EXPECT_EQ(M(i, (i + 1) % M.cols()), M(0, 1));
    }
    EXPECT_GT(M.minCoeff(), 0.0);
  }
}

TEST(HeatKernel, DefiniteAtSixtyFour) {
  // Positive analytically; the frequency-32 mode is about exp(-1024), so in
  // double precision only the tolerance separates it from zero.
  const CircleDiscretization d(64);
  const auto inst = circle_instance(d, false, 0.5);
  EXPECT_GE(restricted_min_eigenvalue(inst, full_set(64)), -inst.psd_tolerance());
  for (auto l : circle_spectrum(d, false)) EXPECT_GT(l, 0.0L);
}

TEST(CircleSpectrum, MatchesEigenvalues) {
  for (bool modified : {false, true}) {
    for (std::size_t n : {8u, 12u, 16u}) {
      const CircleDiscretization d(n);
      const auto L = modified ? modified_heat_kernel_circle(d) : heat_kernel_circle(d);
      Eigen::SelfAdjointEigenSolver<Matrix> es(L.matrix(), Eigen::EigenvaluesOnly);
      auto eig = circle_spectrum(d, modified);
      ASSERT_EQ(eig.size(), n);
      std::vector<double> a(eig.begin(), eig.end());
      std::sort(a.begin(), a.end());
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(es.eigenvalues()(static_cast<Eigen::Index>(i)), a[i], 1e-13);
    }
  }
}

TEST(CircleSpectrum, ModifiedHasTwoNullModes) {
  const CircleDiscretization d(16);
  const auto eig = circle_spectrum(d, true);
  std::size_t tiny = 0;
  for (auto l : eig) tiny += l < 1e-50L;
  EXPECT_EQ(tiny, 2u);
  EXPECT_LT(eig[1], 1e-90L);
  EXPECT_EQ(eig[1], eig[15]);
  // The unmodified kernel has no null modes.
  for (auto l : circle_spectrum(d, false)) EXPECT_GT(l, 1e-60L);
}

TEST(UniformReference, Examples) {
  const CircleDiscretization d(32);
  auto r = uniform_solution_reference(d, 0.0);
  EXPECT_NEAR(r.total_mass(), 2 * std::numbers::pi, 1e-12);
  r = uniform_solution_reference(d, 0.99);
  EXPECT_NEAR(r[0], 0.01 * d.quadrature_weight(), 1e-15);
  EXPECT_EQ(code_of([&] { uniform_solution_reference(d, 1.0); }), ErrorCode::COutOfRange);
  EXPECT_EQ(code_of([&] { uniform_solution_reference(d, -0.1); }), ErrorCode::COutOfRange);
}

TEST(UniformReference, SolvesEulerLagrange) {
  for (bool modified : {false, true})
    for (double C : {0.0, 0.3, 0.9}) {
      const CircleDiscretization d(24);
      const auto inst = circle_instance(d, modified, C);
      const auto r = uniform_solution_reference(d, C);
      EXPECT_LE(el_residuals(r, *inst.potential, inst).sup, 1e-10);
    }
}

TEST(IterativeCircle, MatchesUniformReference) {
  for (std::size_t n : {16u, 32u, 64u}) {
    const CircleDiscretization d(n);
    const auto inst = circle_instance(d, false, 0.5);
    const auto r = minimize_iterative(inst, *inst.potential);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.record.certified_global);
    const double err = (r.record.rho.weights() - uniform_solution_reference(d, 0.5).weights()).cwiseAbs().maxCoeff();
    EXPECT_LE(err, 1e-6) << "n = " << n;
  }
}

TEST(IterativeCircle, ExactAgreesAtEight) {
  const CircleDiscretization d(8);
  const auto inst = circle_instance(d, false, 0.25);
  const auto ex = minimize_exact(inst, *inst.potential);
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_LE((ex[0].rho.weights() - uniform_solution_reference(d, 0.25).weights()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ModifiedCircle, DegenerateFamilyHasEqualAction) {
  const std::size_t n = 16;
  const CircleDiscretization d(n);
  const auto inst = circle_instance(d, true, 0.0);
  const double w = d.quadrature_weight();
  Rng rng(51);
  double ref = 0.0;
  for (int k = 0; k < 32; ++k) {
    const double a = k ? rng.uniform(-0.5, 0.5) : 0.0, b = k ? rng.uniform(-0.5, 0.5) : 0.0;
    Vector rho(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      rho(static_cast<Eigen::Index>(i)) = (1.0 + a * std::cos(d.point(i)) + b * std::sin(d.point(i))) * w;
    const Measure m(rho);
    const double act = action_value(m, *inst.potential, inst);
    if (k == 0) ref = act;
    EXPECT_NEAR(act, ref, 1e-12);
    EXPECT_LE(el_residuals(m, *inst.potential, inst).sup, 1e-12);
  }
  EXPECT_NEAR(ref, -2 * std::numbers::pi, 1e-12);
}
