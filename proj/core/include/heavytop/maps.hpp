#pragma once

// The momentum map L: T*C^2 -> (su(2) x| C^2)*, the Hopf-type map
// varpi = (identity, hopf): (su(2) x| C^2)* -> se(3)*, and their composite
// M = varpi o L together with its derivative and a right inverse (lift).

#include <optional>

#include "heavytop/algebra.hpp"

namespace heavytop {

using Mat34 = Eigen::Matrix<double, 3, 4>;
using JacobianM = Eigen::Matrix<double, 6, 8>;

/// Representative selection for the lift of a heavy top state.
///
/// The fibre of M over (Pi, Gamma) carries the R-action chi -> chi + b psi and
/// the S^1 phase. FreeGauge picks b = 0 with the inverse-Hopf representative;
/// FixReChi1 picks b so that Re(chi1) equals the given value.
struct LiftGauge {
  enum class Mode { FreeGauge, FixReChi1 };
  enum class HopfBranch { Auto, UpperBranch, LowerBranch };

  Mode mode = Mode::FreeGauge;
  double re_chi1 = 0.0;
  HopfBranch hopf_branch = HopfBranch::Auto;

  static LiftGauge free(HopfBranch branch = HopfBranch::Auto) {
    return {Mode::FreeGauge, 0.0, branch};
  }
  static LiftGauge fix_re_chi1(double value, HopfBranch branch = HopfBranch::Auto) {
    return {Mode::FixReChi1, value, branch};
  }
};

SU2xC2Dual momentum_map_L(const PhasePoint& z);

/// (2 Re(conj(a1) a2), 2 Im(conj(a1) a2), |a1|^2 - |a2|^2).
Vec3 hopf(const ComplexPair& alpha);

SE3Dual varpi(const SU2xC2Dual& m);

/// M(z), evaluated from its real-coordinate polynomial form.
SE3Dual collective_M(const PhasePoint& z);

/// d(Pi, Gamma)/d(q, p); rows (Pi1..3, Gamma1..3), columns (q1..4, p1..4).
JacobianM jacobian_M(const PhasePoint& z);

/// The 3x4 matrix A(p) with Pi = A(p) q. A A^T = |p|^2/4 I and A p = 0.
Mat34 surjectivity_matrix(const Vec4& p);

/// Finds z with collective_M(z) == target. Throws Error(ZeroGamma) when
/// Gamma = 0 and Error(GaugeUnsolvable) when FixReChi1 is requested but the
/// lifted psi has Re(psi1) = 0.
PhasePoint lift(const SE3Dual& target, const LiftGauge& gauge = LiftGauge{});

/// Coefficient tensors of M: Pi_i = q^T B_i p / 2 and Gamma_j = p^T C_j p.
/// These fix the (constant) second derivatives of M.
const Eigen::Matrix4d& pi_coefficients(int i);
const Eigen::Matrix4d& gamma_coefficients(int j);

}  // namespace heavytop
