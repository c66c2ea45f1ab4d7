#include "heavytop/hamiltonians.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "heavytop/errors.hpp"
#include "heavytop/integrators.hpp"
#include "heavytop/maps.hpp"
#include "test_support.hpp"

namespace heavytop {
namespace {

using testing::Sampler;
using testing::kov_Gamma0;
using testing::kov_initial_point;
using testing::kov_params;
using testing::kov_Pi0;

const double kSqrt3 = std::sqrt(3.0);

TEST(TopParamsTest, PresetsExpand) {
  const TopParams lagrange = TopParams::lagrange(2.0, 1.0, 1.0, 1.0, 1.0);
  EXPECT_EQ(lagrange.inertia, Vec3(2, 2, 1));
  EXPECT_EQ(lagrange.c, Vec3::UnitZ());
  EXPECT_EQ(lagrange.kind(), PresetKind::Lagrange);

  const TopParams kov = TopParams::kovalevskaya(1.5, 1.0, 2.0, 0.5);
  EXPECT_EQ(kov.inertia, Vec3(3, 3, 1.5));
  EXPECT_EQ(kov.c, Vec3::UnitX());
  EXPECT_EQ(kov.mgl(), 1.0);
  EXPECT_EQ(kov.kind(), PresetKind::Kovalevskaya);

  EXPECT_EQ(TopParams::make(Vec3(1, 2, 3), 1, 1, 1, Vec3::UnitX()).kind(), PresetKind::General);
}

TEST(TopParamsTest, RejectsInvalid) {
  auto expect_invalid = [](auto&& f) {
    try {
      f();
      FAIL() << "expected InvalidArgument";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
  };
  expect_invalid([] { TopParams::make(Vec3(0, 1, 1), 1, 1, 1, Vec3::UnitX()); });
  expect_invalid([] { TopParams::make(Vec3(1, 1, 1), -1, 1, 1, Vec3::UnitX()); });
  expect_invalid([] { TopParams::make(Vec3(1, 1, 1), 1, 1, 1, Vec3(1, 1, 0)); });
}

TEST(HeavyTopHamiltonianTest, Examples) {
  EXPECT_EQ(h_heavytop({}, kov_params()), 0.0);
  EXPECT_DOUBLE_EQ(h_heavytop({kov_Pi0(), kov_Gamma0()}, kov_params()), 11.75);

  const TopParams lagrange = TopParams::lagrange(2.0, 1.5, 0.5, 2.0, 3.0);
  const double a = 1.7;
  EXPECT_DOUBLE_EQ(h_heavytop({Vec3(0, 0, a), Vec3::UnitZ()}, lagrange),
                   a * a / (2.0 * 1.5) + 0.5 * 2.0 * 3.0);
}

TEST(HeavyTopFieldTest, SleepingTopIsEquilibrium) {
  const TopParams lagrange = TopParams::lagrange(2.0, 1.0, 1.0, 1.0, 1.0);
  const SE3Dual f = heavytop_field({Vec3::UnitZ(), Vec3::UnitZ()}, lagrange);
  EXPECT_EQ(f.to_vector(), Vec6::Zero());
}

TEST(HeavyTopFieldTest, EulerEquationsWithoutGravity) {
  const TopParams free = TopParams::make(Vec3(1, 2, 3), 1.0, 0.0, 1.0, Vec3::UnitX());
  const SE3Dual f = heavytop_field({Vec3(1, 1, 1), Vec3::UnitZ()}, free);
  EXPECT_LT((f.Pi - Vec3(-1.0 / 6.0, 2.0 / 3.0, -0.5)).norm(), 1e-15);
}

// Hand evaluation at Pi = (2,3,4), Gamma = (1/2, 0, sqrt3/2) with
// Omega = (1, 3/2, 4): Pi x Omega = (6, -4, 0), Gamma x c = (0, sqrt3/2, 0),
// Gamma x Omega = (-3 sqrt3/4, sqrt3/2 - 2, 3/4).
TEST(HeavyTopFieldTest, KovalevskayaInitialCondition) {
  const SE3Dual f = heavytop_field({kov_Pi0(), kov_Gamma0()}, kov_params());
  EXPECT_LT((f.Pi - Vec3(6.0, -4.0 + kSqrt3 / 2.0, 0.0)).norm(), 1e-14);
  EXPECT_LT((f.Gamma - Vec3(-0.75 * kSqrt3, kSqrt3 / 2.0 - 2.0, 0.75)).norm(), 1e-14);
}

TEST(HeavyTopFieldTest, JacobianMatchesCentralDifferences) {
  Sampler s(41);
  for (int k = 0; k < 20; ++k) {
    const TopParams params = s.general_params();
    const std::function<Vec6(const Vec6&)> f = [&](const Vec6& y) {
      return heavytop_field(SE3Dual::from_vector(y), params).to_vector();
    };
    const SE3Dual x{s.vec3(2.0), s.unit_vec3()};
    const auto fd = testing::central_jacobian<6, 6>(f, x.to_vector());
    EXPECT_LT(testing::relative_error(heavytop_field_jacobian(x, params), fd), 1e-6);
  }
}

TEST(CollectiveHamiltonianTest, Examples) {
  Sampler s(42);
  EXPECT_EQ(collective_H({s.complex_pair(), {}}, kov_params()), 0.0);
  EXPECT_NEAR(collective_H(kov_initial_point(), kov_params()), 11.75, 1e-12);
  EXPECT_NEAR(collective_H_expanded(kov_initial_point(), kov_params()), 11.75, 1e-12);
}

TEST(CollectiveHamiltonianTest, ExpandedFormMatchesComposition) {
  Sampler s(43);
  for (int k = 0; k < 1000; ++k) {
    const TopParams params = s.general_params();
    const PhasePoint z = s.phase_point();
    const double composed = collective_H(z, params);
    EXPECT_LT(std::abs(collective_H_expanded(z, params) - composed),
              1e-13 * std::max(1.0, std::abs(composed)));
  }
}

TEST(CollectiveGradientTest, VanishingPsi) {
  Sampler s(44);
  const Vec8 g = collective_grad({s.complex_pair(), {}}, s.general_params());
  EXPECT_EQ(g.head<4>(), Vec4::Zero());
}

TEST(CollectiveGradientTest, MatchesCentralDifferences) {
  Sampler s(45);
  for (int k = 0; k < 100; ++k) {
    const TopParams params = s.general_params();
    const PhasePoint z = s.phase_point();
    const std::function<double(const Vec8&)> h = [&](const Vec8& y) {
      return collective_H_expanded(PhasePoint::from_real(y), params);
    };
    const Vec8 fd = testing::central_gradient<8>(h, z.to_real());
    EXPECT_LT(testing::relative_error(collective_grad(z, params), fd), 1e-6);
  }
}

// Values from a 40-digit central-difference evaluation of the expanded
// Hamiltonian at the Kovalevskaya initial point.
TEST(CollectiveGradientTest, RegressionAtInitialPoint) {
  Vec8 expected;
  expected << -0.19411428382689057, -2.061261175129397, 0.72444436971680122,
      0.034675177060507381, 23.799283849987069, 3.8949399291937302, 1.9768911592672371,
      -5.88720045674127;
  const Vec8 g = collective_grad(kov_initial_point(), kov_params());
  EXPECT_LT((g - expected).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(CollectiveGradientTest, HessianMatchesDifferencesOfGradient) {
  Sampler s(46);
  for (int k = 0; k < 50; ++k) {
    const TopParams params = s.general_params();
    const PhasePoint z = s.phase_point();
    const std::function<Vec8(const Vec8&)> g = [&](const Vec8& y) {
      return collective_grad(PhasePoint::from_real(y), params);
    };
    const Mat8 fd = testing::central_jacobian<8, 8>(g, z.to_real());
    EXPECT_LT(testing::relative_error(collective_hessian(z, params), fd), 1e-6);
  }
}

TEST(CanonicalFieldTest, VanishesAtZeroPsi) {
  Sampler s(47);
  const PhasePoint f = canonical_field({s.complex_pair(), {}}, s.general_params());
  EXPECT_EQ(f.to_real(), Vec8::Zero());
}

TEST(CanonicalFieldTest, SignPattern) {
  Sampler s(48);
  const TopParams params = s.general_params();
  const PhasePoint z = s.phase_point();
  const Vec8 g = collective_grad(z, params);
  const Vec8 f = canonical_field(z, params).to_real();
  EXPECT_EQ(f.head<4>(), g.tail<4>());
  EXPECT_EQ(f.tail<4>(), -g.head<4>());
}

// Infinitesimal form of the commuting-flows statement: dM X_H = X_h o M.
TEST(CanonicalFieldTest, PushforwardIsHeavyTopField) {
  Sampler s(49);
  for (int k = 0; k < 100; ++k) {
    const TopParams params = s.general_params();
    const PhasePoint z = s.phase_point();
    const Vec6 pushed = jacobian_M(z) * canonical_field(z, params).to_real();
    const Vec6 direct = heavytop_field(collective_M(z), params).to_vector();
    EXPECT_LT((pushed - direct).lpNorm<Eigen::Infinity>(), 1e-11);
  }
}

// chi' = 2 dH/d(conj psi) and psi' = -2 dH/d(conj chi), with the Wirtinger
// derivative 2 d/d(conj w) = d/d(Re w) + i d/d(Im w) taken by differences of
// the complex-coordinate Hamiltonian.
TEST(CanonicalFieldTest, ComplexFormConsistency) {
  Sampler s(50);
  const TopParams params = s.general_params();
  const PhasePoint z = s.phase_point();
  const double step = 1e-6;
  auto wirtinger = [&](ComplexPair PhasePoint::*slot, int which) {
    auto shifted = [&](Complex delta) {
      PhasePoint w = z;
      ((w.*slot).*(which == 0 ? &ComplexPair::c1 : &ComplexPair::c2)) += delta;
      return collective_H_expanded(w, params);
    };
    const double d_re = (shifted(step) - shifted(-step)) / (2 * step);
    const double d_im = (shifted(Complex(0, step)) - shifted(Complex(0, -step))) / (2 * step);
    return Complex(d_re, d_im);
  };
  const PhasePoint f = canonical_field(z, params);
  EXPECT_LT(std::abs(f.chi.c1 - wirtinger(&PhasePoint::psi, 0)), 1e-7);
  EXPECT_LT(std::abs(f.chi.c2 - wirtinger(&PhasePoint::psi, 1)), 1e-7);
  EXPECT_LT(std::abs(f.psi.c1 + wirtinger(&PhasePoint::chi, 0)), 1e-7);
  EXPECT_LT(std::abs(f.psi.c2 + wirtinger(&PhasePoint::chi, 1)), 1e-7);
}

TEST(CanonicalFieldTest, JacobianMatchesCentralDifferences) {
  Sampler s(51);
  for (int k = 0; k < 20; ++k) {
    const TopParams params = s.general_params();
    const PhasePoint z = s.phase_point();
    const std::function<Vec8(const Vec8&)> f = [&](const Vec8& y) {
      return canonical_field(PhasePoint::from_real(y), params).to_real();
    };
    const Mat8 fd = testing::central_jacobian<8, 8>(f, z.to_real());
    EXPECT_LT(testing::relative_error(canonical_field_jacobian(z, params), fd), 1e-5);
  }
}

TEST(LagrangeHamiltonianTest, MatchesGeneralForm) {
  Sampler s(52);
  EXPECT_EQ(lagrange_H({s.complex_pair(), {}}, s.lagrange_params()), 0.0);
  for (int k = 0; k < 1000; ++k) {
    const TopParams params = s.lagrange_params();
    const PhasePoint z = s.phase_point();
    EXPECT_LT(std::abs(lagrange_H(z, params) - collective_H(z, params)), 1e-12);
  }
}

TEST(LagrangeHamiltonianTest, UprightLift) {
  const TopParams params = TopParams::lagrange(2.0, 1.0, 1.0, 1.0, 1.0);
  const SE3Dual upright{Vec3::UnitZ(), Vec3::UnitZ()};
  EXPECT_NEAR(lagrange_H(lift(upright), params), h_heavytop(upright, params), 1e-15);
}

TEST(LagrangeHamiltonianTest, PresetMismatch) {
  try {
    lagrange_H(kov_initial_point(), kov_params());
    FAIL() << "expected PresetMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PresetMismatch);
  }
}

TEST(InvariantsTest, KovalevskayaInitialValues) {
  const SE3Invariants inv = invariants_se3({kov_Pi0(), kov_Gamma0()}, kov_params());
  EXPECT_DOUBLE_EQ(inv.h, 11.75);
  EXPECT_DOUBLE_EQ(inv.f1, 1.0);
  EXPECT_NEAR(inv.f2, 1.0 + 2.0 * kSqrt3, 1e-15);
  EXPECT_NEAR(inv.K, 193.0, 1e-12);
  EXPECT_EQ(inv.f3, 4.0);
  EXPECT_TRUE(inv.K_meaningful);
  EXPECT_FALSE(inv.f3_meaningful);

  const SE3Invariants spin = invariants_se3({Vec3(0, 0, 5), Vec3::UnitZ()}, kov_params());
  EXPECT_EQ(spin.K, 0.0);
  EXPECT_TRUE(
      invariants_se3({}, TopParams::lagrange(1, 1, 1, 1, 1)).f3_meaningful);
}

TEST(InvariantsTest, CasimirByIndependentDot) {
  Sampler s(53);
  for (int k = 0; k < 100; ++k) {
    const SE3Dual x{s.vec3(), s.vec3()};
    const double dot = x.Pi.x() * x.Gamma.x() + x.Pi.y() * x.Gamma.y() + x.Pi.z() * x.Gamma.z();
    EXPECT_NEAR(invariants_se3(x, s.general_params()).f2, dot, 1e-15 * std::max(1.0, std::abs(dot)) + 1e-15);
  }
}

TEST(InvariantsTest, PhaseInvariantsAtZeroPsiAndInitialPoint) {
  Sampler s(54);
  const PhaseInvariants zero = invariants_phase({s.complex_pair(), {}});
  EXPECT_EQ(zero.J1, 0.0);
  EXPECT_EQ(zero.J2, 0.0);
  EXPECT_EQ(zero.J3, 0.0);
  EXPECT_EQ(zero.F1, 0.0);
  EXPECT_EQ(zero.F2, 0.0);
  EXPECT_EQ(zero.F3, 0.0);

  const PhaseInvariants inv = invariants_phase(kov_initial_point());
  EXPECT_NEAR(inv.F1, 1.0, 1e-14);
  EXPECT_NEAR(inv.F2, 1.0 + 2.0 * kSqrt3, 1e-13);
  EXPECT_NEAR(inv.F3, 4.0, 1e-13);  // = Pi3
}

TEST(InvariantsTest, PullbackIdentities) {
  Sampler s(55);
  for (int k = 0; k < 1000; ++k) {
    const PhasePoint z = s.phase_point();
    const SE3Invariants se3 = invariants_se3(collective_M(z), kov_params());
    const PhaseInvariants phase = invariants_phase(z);
    EXPECT_LT(std::abs(phase.F1 - se3.f1), 1e-13);
    EXPECT_LT(std::abs(phase.F2 - se3.f2), 1e-13);
    EXPECT_LT(std::abs(phase.F3 - se3.f3), 1e-13);
  }
}

TEST(InvariantsTest, AnalyticGradientsMatchDifferences) {
  Sampler s(56);
  using Getter = double (*)(const PhaseInvariants&);
  const Getter getters[] = {[](const PhaseInvariants& i) { return i.F1; },
                            [](const PhaseInvariants& i) { return i.F2; },
                            [](const PhaseInvariants& i) { return i.F3; }};
  Vec8 (*grads[])(const PhasePoint&) = {grad_F1, grad_F2, grad_F3};
  for (int k = 0; k < 50; ++k) {
    const PhasePoint z = s.phase_point();
    for (int i = 0; i < 3; ++i) {
      const std::function<double(const Vec8&)> f = [&](const Vec8& y) {
        return getters[i](invariants_phase(PhasePoint::from_real(y)));
      };
      EXPECT_LT(testing::relative_error(grads[i](z), testing::central_gradient<8>(f, z.to_real())),
                1e-6);
    }
  }
}

TEST(InvolutionTest, LagrangeQuantitiesCommute) {
  Sampler s(57);
  for (int k = 0; k < 100; ++k) {
    const TopParams params = s.lagrange_params();
    const PhasePoint z = s.phase_point();
    const Vec8 grads[] = {collective_grad(z, params), grad_F1(z), grad_F2(z), grad_F3(z)};
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        EXPECT_LT(std::abs(canonical_bracket(grads[a], grads[b])), 1e-11)
            << "pair " << a << "," << b;
      }
    }
  }
}

// Along an RK4 (dt = 1e-4) reference trajectory the invariants are constant.
TEST(ConservationTest, ReferenceFlowConservesInvariants) {
  Sampler s(58);
  StepperConfig cfg;
  cfg.method = Method::RK4;
  cfg.dt = 1e-4;
  struct Case {
    TopParams params;
    bool check_f3;
    bool check_K;
  };
  const Case cases[] = {{s.general_params(), false, false},
                        {s.lagrange_params(), true, false},
                        {s.kovalevskaya_params(), false, true}};
  for (const Case& c : cases) {
    const SE3Dual x0{s.vec3(1.5), s.unit_vec3()};
    const auto traj = integrate(direct_system(c.params), x0.to_vector(), 10.0, cfg);
    const SE3Invariants first = invariants_se3(x0, c.params);
    double dh = 0, df1 = 0, df2 = 0, df3 = 0, dK = 0;
    for (const auto& y : traj.states) {
      const SE3Invariants inv = invariants_se3(SE3Dual::from_vector(y), c.params);
      dh = std::max(dh, std::abs(inv.h - first.h));
      df1 = std::max(df1, std::abs(inv.f1 - first.f1));
      df2 = std::max(df2, std::abs(inv.f2 - first.f2));
      df3 = std::max(df3, std::abs(inv.f3 - first.f3));
      dK = std::max(dK, std::abs(inv.K - first.K));
    }
    EXPECT_LT(dh, 1e-8);
    EXPECT_LT(df1, 1e-8);
    EXPECT_LT(df2, 1e-8);
    if (c.check_f3) EXPECT_LT(df3, 1e-8);
    if (c.check_K) EXPECT_LT(dK, 1e-8);
  }
}

}  // namespace
}  // namespace heavytop
