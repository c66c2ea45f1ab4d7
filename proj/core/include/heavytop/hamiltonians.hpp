#pragma once

#include <string>

#include "heavytop/algebra.hpp"

namespace heavytop {

using Mat8 = Eigen::Matrix<double, 8, 8>;

enum class PresetKind { General, Lagrange, Kovalevskaya };

const char* to_string(PresetKind kind);

/// Physical parameters of a heavy top with diagonal (principal-axes) inertia.
///
/// Invariants: I1, I2, I3 > 0; m, g, l >= 0; |c| = 1 to 1e-12. Use make() or
/// one of the preset factories to get a validated value.
struct TopParams {
  Vec3 inertia = Vec3::Ones();
  double m = 1.0;
  double g = 1.0;
  double l = 1.0;
  Vec3 c = Vec3::UnitZ();

  double mgl() const { return m * g * l; }

  static TopParams make(const Vec3& inertia, double m, double g, double l,
                        const Vec3& c);
  /// I2 = I1, c = (0, 0, 1).
  static TopParams lagrange(double I1, double I3, double m, double g, double l);
  /// I1 = I2 = 2 I3, c = (1, 0, 0).
  static TopParams kovalevskaya(double I3, double m, double g, double l);

  /// Which preset shape these parameters have (within 1e-12).
  PresetKind kind() const;
};

// Heavy top on se(3)*.

double h_heavytop(const SE3Dual& s, const TopParams& params);
SE3Dual heavytop_field(const SE3Dual& s, const TopParams& params);
/// d(heavytop_field)/d(Pi, Gamma).
Eigen::Matrix<double, 6, 6> heavytop_field_jacobian(const SE3Dual& s,
                                                    const TopParams& params);

// Collective system on T*C^2.

/// H = h o M.
double collective_H(const PhasePoint& z, const TopParams& params);
/// The same H written out in the chi, psi coordinates. Kept alongside
/// collective_H as an independent evaluation path.
double collective_H_expanded(const PhasePoint& z, const TopParams& params);
/// (dH/dq, dH/dp) via the chain rule through jacobian_M.
Vec8 collective_grad(const PhasePoint& z, const TopParams& params);
/// Second derivatives of H in (q, p).
Mat8 collective_hessian(const PhasePoint& z, const TopParams& params);
/// (q', p') = (dH/dp, -dH/dq), returned as a phase point.
PhasePoint canonical_field(const PhasePoint& z, const TopParams& params);
/// d(canonical_field)/d(q, p).
Mat8 canonical_field_jacobian(const PhasePoint& z, const TopParams& params);

/// Simplified Hamiltonian of the Lagrange top. Throws Error(PresetMismatch)
/// unless params.kind() == PresetKind::Lagrange.
double lagrange_H(const PhasePoint& z, const TopParams& params);

// Conserved quantities.

struct SE3Invariants {
  double h = 0.0;
  double f1 = 0.0;  ///< |Gamma|^2
  double f2 = 0.0;  ///< Pi . Gamma
  double f3 = 0.0;  ///< Pi3, conserved for the Lagrange top
  double K = 0.0;   ///< Kovalevskaya invariant
  bool f3_meaningful = false;
  bool K_meaningful = false;
};

SE3Invariants invariants_se3(const SE3Dual& s, const TopParams& params);

struct PhaseInvariants {
  double J1 = 0.0;
  double J2 = 0.0;
  double J3 = 0.0;
  double F1 = 0.0;
  double F2 = 0.0;
  double F3 = 0.0;
};

PhaseInvariants invariants_phase(const PhasePoint& z);

/// Canonical bracket sum_i dF/dq_i dG/dp_i - dF/dp_i dG/dq_i from gradients
/// stacked as (d/dq, d/dp).
double canonical_bracket(const Vec8& grad_f, const Vec8& grad_g);

/// Analytic (q, p) gradients of F1, F2, F3.
Vec8 grad_F1(const PhasePoint& z);
Vec8 grad_F2(const PhasePoint& z);
Vec8 grad_F3(const PhasePoint& z);

}  // namespace heavytop
