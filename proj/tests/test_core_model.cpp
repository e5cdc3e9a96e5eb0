#include <gtest/gtest.h>

#include "cvp/core_model.hpp"
#include "cvp/index_set.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cvp;
using namespace cvp::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::NumericalFailure;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ValidateLagrangian, AcceptsWedge) {
  const auto inst = wedge();
  EXPECT_EQ(inst.n(), 3u);
  EXPECT_NEAR(inst.lagrangian.spectral_norm(), 1.0 + std::sqrt(0.5), 1e-14);
}

TEST(ValidateLagrangian, AcceptsIdentityOfAnySize) {
  for (int n : {1, 2, 5, 16}) EXPECT_NO_THROW(validate_lagrangian(Matrix::Identity(n, n)));
}

TEST(ValidateLagrangian, NegativeEntryNamesPair) {
  Matrix L(2, 2);
  L << 1, -0.1, -0.1, 1;
  EXPECT_EQ(code_of([&] { validate_lagrangian(L); }), ErrorCode::NegativeEntry);
  EXPECT_NE(message_of([&] { validate_lagrangian(L); }).find("(0, 1)"), std::string::npos);
}

TEST(ValidateLagrangian, SymmetryIsBitwise) {
  Matrix L(2, 2);
  L << 1, 0.1, std::nextafter(0.1, 1.0), 1;
  EXPECT_EQ(code_of([&] { validate_lagrangian(L); }), ErrorCode::NotSymmetric);
}

TEST(ValidateLagrangian, DiagonalMustBePositive) {
  Matrix L(2, 2);
  L << 1, 0, 0, 0;
  EXPECT_EQ(code_of([&] { validate_lagrangian(L); }), ErrorCode::NonpositiveDiagonal);
  EXPECT_NE(message_of([&] { validate_lagrangian(L); }).find("(1, 1)"), std::string::npos);
}

TEST(ValidateLagrangian, RejectsNonSquareAndEmpty) {
  EXPECT_EQ(code_of([] { validate_lagrangian(Matrix::Ones(2, 3)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { validate_lagrangian(Matrix(0, 0)); }), ErrorCode::InvalidSpace);
  Matrix L = Matrix::Ones(2, 2);
  L(0, 1) = L(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { validate_lagrangian(L); }), ErrorCode::NegativeEntry);
}

TEST(MakeInstance, RejectsBadParts) {
  const auto L = validate_lagrangian(Matrix::Identity(2, 2));
  EXPECT_EQ(code_of([&] { make_instance(PointSpace::indexed(2), L, 0.0); }), ErrorCode::NonpositiveS);
  EXPECT_EQ(code_of([&] { make_instance(PointSpace::indexed(2), L, -1.0); }), ErrorCode::NonpositiveS);
  EXPECT_EQ(code_of([&] { make_instance(PointSpace::indexed(3), L); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { make_instance(PointSpace::indexed(2), L, 1.0, Potential(vec({1}))); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] {
              make_instance(PointSpace::indexed(2), L, 1.0, std::nullopt, InitialData{Measure::zero(2), {2}});
            }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { Potential(vec({1, -0.5})); }), ErrorCode::NegativePotential);
  EXPECT_EQ(code_of([] { Measure(vec({-1e-3, 1})); }), ErrorCode::NegativeMeasure);
  EXPECT_EQ(code_of([] { PointSpace({"a", "a"}); }), ErrorCode::InvalidSpace);
  EXPECT_EQ(code_of([] { PointSpace(std::vector<std::string>{}); }), ErrorCode::InvalidSpace);
}

TEST(MakeInstance, InitialSetIsNormalized) {
  const auto inst = make_instance(PointSpace::indexed(3), validate_lagrangian(Matrix::Identity(3, 3)), 1.0,
                                  std::nullopt, InitialData{Measure::zero(3), {2, 0, 2}});
  EXPECT_EQ(inst.initial->I0, (IndexSet{0, 2}));
}

TEST(MeasureType, SupportAndClamp) {
  const Measure m = Measure::clamped(vec({-1e-13, 0.5, 1e-13, 0}));
  EXPECT_EQ(m[0], 0.0);
  EXPECT_EQ(m.support(), (IndexSet{1}));
  EXPECT_DOUBLE_EQ(m.total_mass(), 0.5 + 1e-13);
  EXPECT_THROW(Measure::clamped(vec({-1e-6})), Error);
}

TEST(ActionValue, WedgeValues) {
  const auto w = wedge();
  EXPECT_NEAR(action_value(Measure(vec({0.25, 0.5, 0.75})), Potential(vec({0.5, 0, 0})), w), -11.0 / 8.0, 1e-15);
  const auto l = lmat();
  EXPECT_NEAR(action_value(Measure(vec({1, 0, 0})), Potential(vec({0, 0, 0})), l), -1.0, 1e-15);
}

TEST(ActionValue, ZeroMeasureGivesZero) {
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = rng.index(1, 8);
    const auto inst = random_instance(rng, n, LagrangianKind::General, rng.uniform(0.1, 3));
    EXPECT_EQ(action_value(Measure::zero(n), *inst.potential, inst), 0.0);
  }
}

TEST(ActionValue, DimensionMismatch) {
  const auto w = wedge();
  EXPECT_EQ(code_of([&] { action_value(Measure(vec({1, 0})), Potential(vec({0, 0, 0})), w); }),
            ErrorCode::DimensionMismatch);
}

TEST(ElResiduals, WedgeClosedForms) {
  const auto w = wedge();
  auto r = el_residuals(Measure(vec({0.5, 0.5, 0.5})), Potential(vec({0.25, 0, 0.25})), w);
  EXPECT_EQ(r.per_point, Vector::Zero(3));
  EXPECT_EQ(r.sup, 0.0);
  r = el_residuals(Measure(vec({0, 0.5, 0})), Potential(vec({0.75, 0.5, 0.75})), w);
  EXPECT_EQ(r.per_point, Vector::Zero(3));
  EXPECT_EQ(r.sup, 0.0);
  EXPECT_DOUBLE_EQ(r.psd_min_eigenvalue, 1.0);
}

TEST(ElResiduals, ZeroMeasureZeroPotential) {
  const auto w = wedge();
  const auto r = el_residuals(Measure::zero(3), Potential(vec({0, 0, 0})), w);
  EXPECT_EQ(r.per_point, Vector::Constant(3, -1.0));
  EXPECT_EQ(r.sup, 1.0);
  EXPECT_TRUE(std::isinf(r.psd_min_eigenvalue));
}

TEST(ElResiduals, SupportTermUsesAbsoluteValue) {
  const auto w = wedge();
  // On the support an excess also counts.
  const auto r = el_residuals(Measure(vec({0, 1, 0})), Potential(vec({2, 0.25, 2})), w);
  EXPECT_DOUBLE_EQ(r.sup, 0.25);
}

TEST(ElResiduals, RationalCrossCheck) {
  // The wedge closed forms are exact in rationals and in doubles.
  const QMat L = wedge_q();
  const Q q(1, 4), h(1, 2), t(3, 4);
  const std::vector<std::pair<QVec, QVec>> pts{
      {{q, h, t}, {h, 0, 0}}, {{t, h, q}, {0, 0, h}}, {{h, h, h}, {q, 0, q}}, {{0, h, 0}, {t, h, t}}};
  const auto w = wedge();
  for (const auto& [rho, phi] : pts) {
    for (const auto& r : exact_residuals(L, rho, phi)) EXPECT_EQ(r, Q(0));
    Vector rd(3), pd(3);
    for (int i = 0; i < 3; ++i) {
      rd(i) = boost::rational_cast<double>(rho[i]);
      pd(i) = boost::rational_cast<double>(phi[i]);
    }
    EXPECT_EQ(el_residuals(Measure(rd), Potential(pd), w).sup, 0.0);
    EXPECT_EQ(action_value(Measure(rd), Potential(pd), w), boost::rational_cast<double>(exact_action(L, rho, phi)));
  }
  EXPECT_EQ(exact_action(L, {h, h, h}, {q, 0, q}), Q(-5, 4));
  EXPECT_EQ(exact_action(L, {q, h, t}, {h, 0, 0}), Q(-11, 8));
}

TEST(Rescale, Examples) {
  const auto r = rescale(Measure(vec({1, 2})), Potential(vec({0.5, 0})), 2.0, 0.5);
  EXPECT_EQ(r.s, 1.0);
  EXPECT_EQ(r.rho.weights(), vec({0.5, 1}));
  EXPECT_EQ(r.phi.values(), vec({0.25, 0}));
  const auto id = rescale(Measure(vec({1, 2})), Potential(vec({0.5, 0})), 2.0, 1.0);
  EXPECT_EQ(id.rho.weights(), vec({1, 2}));
  EXPECT_EQ(id.s, 2.0);
  EXPECT_EQ(code_of([] { rescale(Measure(vec({1})), Potential(vec({0})), 1.0, 0.0); }), ErrorCode::NonpositiveLambda);
  EXPECT_EQ(code_of([] { rescale(Measure(vec({1})), Potential(vec({0})), 1.0, -2.0); }),
            ErrorCode::NonpositiveLambda);
}

TEST(Rescale, WedgeDSolutionTimesThree) {
  const auto w = wedge();
  const auto r = rescale(Measure(vec({0.5, 0.5, 0.5})), Potential(vec({0.25, 0, 0.25})), 1.0, 3.0);
  const auto w3 = make_instance(w.space, w.lagrangian, r.s);
  EXPECT_NEAR(action_value(r.rho, r.phi, w3), -45.0 / 4.0, 1e-13);
}

TEST(Normalized, DividesPotentialAndInitialData) {
  const auto inst = make_instance(PointSpace::indexed(2), validate_lagrangian(Matrix::Identity(2, 2)), 4.0,
                                  Potential(vec({2, 8})), InitialData{Measure(vec({1, 0})), {}});
  const auto u = normalized(inst);
  EXPECT_EQ(u.s, 1.0);
  EXPECT_EQ(u.potential->values(), vec({0.5, 2}));
  EXPECT_EQ(u.initial->rho0.weights(), vec({0.25, 0}));
}

TEST(AprioriBound, Examples) {
  EXPECT_DOUBLE_EQ(apriori_volume_bound(wedge()), 12.0);
  const auto one = make_instance(PointSpace::indexed(1), validate_lagrangian(Matrix::Constant(1, 1, 2.0)));
  EXPECT_DOUBLE_EQ(apriori_volume_bound(one), 2.0);
  EXPECT_DOUBLE_EQ(apriori_volume_bound(constant_lagrangian(4)), 16.0);
}

TEST(AprioriBound, ScalesWithS) {
  const auto w = wedge();
  EXPECT_DOUBLE_EQ(apriori_volume_bound(make_instance(w.space, w.lagrangian, 2.5)), 30.0);
}

TEST(IndexSets, Helpers) {
  EXPECT_EQ(mask_to_set(0b1011), (IndexSet{0, 1, 3}));
  EXPECT_EQ(set_to_mask({0, 1, 3}), 0b1011u);
  EXPECT_EQ(set_union({0, 2}, {1, 2}), (IndexSet{0, 1, 2}));
  EXPECT_EQ(set_intersection({0, 2, 3}, {2, 3, 4}), (IndexSet{2, 3}));
  EXPECT_EQ(set_difference({0, 2, 3}, {2}), (IndexSet{0, 3}));
  EXPECT_EQ(complement({1}, 3), (IndexSet{0, 2}));
  EXPECT_TRUE(is_subset({1}, {0, 1}));
  EXPECT_FALSE(is_subset({2}, {0, 1}));
  EXPECT_EQ(normalize_index_set({3, 1, 1}, 4), (IndexSet{1, 3}));
  EXPECT_THROW(normalize_index_set({4}, 4), Error);
}
