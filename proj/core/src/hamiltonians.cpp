#include "heavytop/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heavytop/errors.hpp"
#include "heavytop/maps.hpp"

namespace heavytop {

namespace {

constexpr double kShapeTol = 1e-12;

bool close(double a, double b) {
  return std::abs(a - b) <= kShapeTol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool close(const Vec3& a, const Vec3& b) {
  return (a - b).lpNorm<Eigen::Infinity>() <= kShapeTol;
}

Vec3 inverse_inertia(const TopParams& params) {
  return params.inertia.cwiseInverse();
}

}  // namespace

const char* to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::General: return "general";
    case PresetKind::Lagrange: return "lagrange";
    case PresetKind::Kovalevskaya: return "kovalevskaya";
  }
  return "unknown";
}

TopParams TopParams::make(const Vec3& inertia, double m, double g, double l,
                          const Vec3& c) {
  if (!inertia.allFinite() || (inertia.array() <= 0.0).any()) {
    throw Error(ErrorCode::InvalidArgument, "moments of inertia must be positive");
  }
  if (!(m >= 0.0) || !(g >= 0.0) || !(l >= 0.0) || !std::isfinite(m) ||
      !std::isfinite(g) || !std::isfinite(l)) {
    throw Error(ErrorCode::InvalidArgument, "m, g and l must be finite and non-negative");
  }
  if (!c.allFinite() || std::abs(c.norm() - 1.0) > kShapeTol) {
    std::ostringstream os;
    os << "center direction c must be a unit vector (|c| = " << c.norm() << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  return {inertia, m, g, l, c};
}

TopParams TopParams::lagrange(double I1, double I3, double m, double g, double l) {
  return make(Vec3(I1, I1, I3), m, g, l, Vec3::UnitZ());
}

TopParams TopParams::kovalevskaya(double I3, double m, double g, double l) {
  return make(Vec3(2.0 * I3, 2.0 * I3, I3), m, g, l, Vec3::UnitX());
}

PresetKind TopParams::kind() const {
  const bool symmetric = close(inertia.x(), inertia.y());
  if (symmetric && close(c, Vec3::UnitZ())) return PresetKind::Lagrange;
  if (symmetric && close(inertia.x(), 2.0 * inertia.z()) && close(c, Vec3::UnitX())) {
    return PresetKind::Kovalevskaya;
  }
  return PresetKind::General;
}

double h_heavytop(const SE3Dual& s, const TopParams& params) {
  return 0.5 * s.Pi.dot(s.Pi.cwiseProduct(inverse_inertia(params))) +
         params.mgl() * s.Gamma.dot(params.c);
}

SE3Dual heavytop_field(const SE3Dual& s, const TopParams& params) {
  const Vec3 omega = s.Pi.cwiseProduct(inverse_inertia(params));
  return {s.Pi.cross(omega) + params.mgl() * s.Gamma.cross(params.c),
          s.Gamma.cross(omega)};
}

Eigen::Matrix<double, 6, 6> heavytop_field_jacobian(const SE3Dual& s,
                                                    const TopParams& params) {
  const Vec3 inv = inverse_inertia(params);
  const Vec3 omega = s.Pi.cwiseProduct(inv);
  const Mat3 d = inv.asDiagonal();
  Eigen::Matrix<double, 6, 6> jac;
  jac.block<3, 3>(0, 0) = hat(s.Pi) * d - hat(omega);
  jac.block<3, 3>(0, 3) = -params.mgl() * hat(params.c);
  jac.block<3, 3>(3, 0) = hat(s.Gamma) * d;
  jac.block<3, 3>(3, 3) = -hat(omega);
  return jac;
}

double collective_H(const PhasePoint& z, const TopParams& params) {
  return h_heavytop(collective_M(z), params);
}

double collective_H_expanded(const PhasePoint& z, const TopParams& params) {
  const Complex chi1 = z.chi.c1, chi2 = z.chi.c2;
  const Complex psi1 = z.psi.c1, psi2 = z.psi.c2;
  const double a = (chi1 * std::conj(psi2) + chi2 * std::conj(psi1)).imag();
  const double b = (chi2 * std::conj(psi1) - chi1 * std::conj(psi2)).real();
  const double c = (chi2 * std::conj(psi2) - chi1 * std::conj(psi1)).imag();
  const Complex cross = std::conj(psi1) * psi2;
  const Vec3& I = params.inertia;
  return (a * a / I.x() + b * b / I.y() + c * c / I.z()) / 8.0 +
         params.mgl() * (2.0 * cross.real() * params.c.x() +
                         2.0 * cross.imag() * params.c.y() +
                         (std::norm(psi1) - std::norm(psi2)) * params.c.z());
}

Vec8 collective_grad(const PhasePoint& z, const TopParams& params) {
  const SE3Dual s = collective_M(z);
  Vec6 dh;
  dh << s.Pi.cwiseProduct(inverse_inertia(params)), params.mgl() * params.c;
  return jacobian_M(z).transpose() * dh;
}

Mat8 collective_hessian(const PhasePoint& z, const TopParams& params) {
  const SE3Dual s = collective_M(z);
  const JacobianM jac = jacobian_M(z);
  const Vec3 inv = inverse_inertia(params);

  Mat8 hess = Mat8::Zero();
  for (int i = 0; i < 3; ++i) {
    const auto row = jac.row(i);
    hess += inv[i] * row.transpose() * row;
    // Pi_i is bilinear in (q, p): its Hessian is the off-diagonal B_i / 2.
    const double w = s.Pi[i] * inv[i];
    hess.block<4, 4>(0, 4) += 0.5 * w * pi_coefficients(i);
    hess.block<4, 4>(4, 0) += 0.5 * w * pi_coefficients(i).transpose();
  }
  for (int j = 0; j < 3; ++j) {
    hess.block<4, 4>(4, 4) += 2.0 * params.mgl() * params.c[j] * gamma_coefficients(j);
  }
  return hess;
}

PhasePoint canonical_field(const PhasePoint& z, const TopParams& params) {
  const Vec8 grad = collective_grad(z, params);
  return PhasePoint::from_qp(grad.tail<4>(), -grad.head<4>());
}

Mat8 canonical_field_jacobian(const PhasePoint& z, const TopParams& params) {
  const Mat8 hess = collective_hessian(z, params);
  Mat8 jac;
  jac.topRows<4>() = hess.bottomRows<4>();
  jac.bottomRows<4>() = -hess.topRows<4>();
  return jac;
}

double lagrange_H(const PhasePoint& z, const TopParams& params) {
  if (params.kind() != PresetKind::Lagrange) {
    throw Error(ErrorCode::PresetMismatch,
                "lagrange_H requires I2 = I1 and c = (0, 0, 1)");
  }
  const Complex a = z.chi.c1 * std::conj(z.psi.c2);
  const Complex b = z.chi.c2 * std::conj(z.psi.c1);
  const double c =
      (z.chi.c2 * std::conj(z.psi.c2) - z.chi.c1 * std::conj(z.psi.c1)).imag();
  const double planar = std::norm(a) + std::norm(b) - 2.0 * (a * b).real();
  return (planar / params.inertia.x() + c * c / params.inertia.z()) / 8.0 +
         params.mgl() * (std::norm(z.psi.c1) - std::norm(z.psi.c2));
}

SE3Invariants invariants_se3(const SE3Dual& s, const TopParams& params) {
  SE3Invariants inv;
  inv.h = h_heavytop(s, params);
  inv.f1 = s.Gamma.squaredNorm();
  inv.f2 = s.Pi.dot(s.Gamma);
  inv.f3 = s.Pi.z();
  const Complex pi12(s.Pi.x(), s.Pi.y());
  const Complex gamma12(s.Gamma.x(), s.Gamma.y());
  inv.K = std::norm(pi12 * pi12 - 4.0 * params.mgl() * params.inertia.z() * gamma12);
  const PresetKind kind = params.kind();
  inv.f3_meaningful = kind == PresetKind::Lagrange;
  inv.K_meaningful = kind == PresetKind::Kovalevskaya;
  return inv;
}

PhaseInvariants invariants_phase(const PhasePoint& z) {
  const double psi_norm2 = z.psi.norm2();
  const Complex psi_chi =
      std::conj(z.psi.c1) * z.chi.c1 + std::conj(z.psi.c2) * z.chi.c2;
  PhaseInvariants inv;
  inv.J1 = 0.5 * psi_norm2;
  inv.J2 = -psi_chi.imag();
  inv.J3 = (z.chi.c2 * std::conj(z.psi.c2) - z.chi.c1 * std::conj(z.psi.c1)).imag();
  inv.F1 = psi_norm2 * psi_norm2;
  inv.F2 = 0.5 * psi_norm2 * inv.J2;
  inv.F3 = 0.5 * inv.J3;
  return inv;
}

double canonical_bracket(const Vec8& grad_f, const Vec8& grad_g) {
  return grad_f.head<4>().dot(grad_g.tail<4>()) -
         grad_f.tail<4>().dot(grad_g.head<4>());
}

Vec8 grad_F1(const PhasePoint& z) {
  const Vec4 p = z.p();
  Vec8 g;
  g << Vec4::Zero(), 4.0 * p.squaredNorm() * p;
  return g;
}

Vec8 grad_F2(const PhasePoint& z) {
  const Vec4 q = z.q();
  const Vec4 p = z.p();
  // w = Im(psi* chi) = p1 q2 - p2 q1 + p3 q4 - p4 q3, F2 = -|p|^2 w / 2.
  const double w = p[0] * q[1] - p[1] * q[0] + p[2] * q[3] - p[3] * q[2];
  const Vec4 dw_dq(-p[1], p[0], -p[3], p[2]);
  const Vec4 dw_dp(q[1], -q[0], q[3], -q[2]);
  const double half_norm2 = 0.5 * p.squaredNorm();
  Vec8 g;
  g << -half_norm2 * dw_dq, -half_norm2 * dw_dp - w * p;
  return g;
}

Vec8 grad_F3(const PhasePoint& z) {
  const Vec4 q = z.q();
  const Vec4 p = z.p();
  // F3 = (q1 p2 - q2 p1 - q3 p4 + q4 p3) / 2
  Vec8 g;
  g << 0.5 * p[1], -0.5 * p[0], -0.5 * p[3], 0.5 * p[2],
       -0.5 * q[1], 0.5 * q[0], 0.5 * q[3], -0.5 * q[2];
  return g;
}

}  // namespace heavytop
