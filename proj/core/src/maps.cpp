#include "heavytop/maps.hpp"

#include <array>
#include <cmath>

#include "heavytop/errors.hpp"

namespace heavytop {

namespace {

std::array<Eigen::Matrix4d, 3> make_pi_coefficients() {
  std::array<Eigen::Matrix4d, 3> b;
  for (auto& m : b) m.setZero();
  // Pi1 = (q1 p4 - q4 p1 - q2 p3 + q3 p2) / 2
  b[0](0, 3) = 1.0, b[0](3, 0) = -1.0, b[0](1, 2) = -1.0, b[0](2, 1) = 1.0;
  // Pi2 = (q3 p1 - q1 p3 - q2 p4 + q4 p2) / 2
  b[1](2, 0) = 1.0, b[1](0, 2) = -1.0, b[1](1, 3) = -1.0, b[1](3, 1) = 1.0;
  // Pi3 = (q1 p2 - q2 p1 - q3 p4 + q4 p3) / 2
  b[2](0, 1) = 1.0, b[2](1, 0) = -1.0, b[2](2, 3) = -1.0, b[2](3, 2) = 1.0;
  return b;
}

std::array<Eigen::Matrix4d, 3> make_gamma_coefficients() {
  std::array<Eigen::Matrix4d, 3> c;
  for (auto& m : c) m.setZero();
  // Gamma1 = 2 (p1 p3 + p2 p4)
  c[0](0, 2) = c[0](2, 0) = 1.0;
  c[0](1, 3) = c[0](3, 1) = 1.0;
  // Gamma2 = 2 (p1 p4 - p2 p3)
  c[1](0, 3) = c[1](3, 0) = 1.0;
  c[1](1, 2) = c[1](2, 1) = -1.0;
  // Gamma3 = p1^2 + p2^2 - p3^2 - p4^2
  c[2].diagonal() << 1.0, 1.0, -1.0, -1.0;
  return c;
}

const std::array<Eigen::Matrix4d, 3> kPiCoefficients = make_pi_coefficients();
const std::array<Eigen::Matrix4d, 3> kGammaCoefficients = make_gamma_coefficients();

}  // namespace

const Eigen::Matrix4d& pi_coefficients(int i) { return kPiCoefficients.at(i); }
const Eigen::Matrix4d& gamma_coefficients(int j) {
  return kGammaCoefficients.at(j);
}

SU2xC2Dual momentum_map_L(const PhasePoint& z) {
  Eigen::Vector2cd chi(z.chi.c1, z.chi.c2);
  Eigen::Vector2cd psi(z.psi.c1, z.psi.c2);
  const double im_psi_chi = psi.dot(chi).imag();  // dot() conjugates psi
  const Mat2c mu = 0.25 * (chi * psi.adjoint() - psi * chi.adjoint() -
                           Complex(0.0, im_psi_chi) * Mat2c::Identity());
  return {vec3_from_su2(mu), -z.psi};
}

Vec3 hopf(const ComplexPair& alpha) {
  const Complex cross = std::conj(alpha.c1) * alpha.c2;
  return {2.0 * cross.real(), 2.0 * cross.imag(),
          std::norm(alpha.c1) - std::norm(alpha.c2)};
}

SE3Dual varpi(const SU2xC2Dual& m) { return {m.mu, hopf(m.alpha)}; }

SE3Dual collective_M(const PhasePoint& z) {
  const double q1 = z.chi.c1.real(), q2 = z.chi.c1.imag();
  const double q3 = z.chi.c2.real(), q4 = z.chi.c2.imag();
  const double p1 = z.psi.c1.real(), p2 = z.psi.c1.imag();
  const double p3 = z.psi.c2.real(), p4 = z.psi.c2.imag();

  SE3Dual s;
  s.Pi << 0.5 * (q1 * p4 - q4 * p1 - q2 * p3 + q3 * p2),
          0.5 * (q3 * p1 - q1 * p3 - q2 * p4 + q4 * p2),
          0.5 * (q1 * p2 - q2 * p1 - q3 * p4 + q4 * p3);
  s.Gamma << 2.0 * (p1 * p3 + p2 * p4),
             2.0 * (p1 * p4 - p2 * p3),
             p1 * p1 + p2 * p2 - p3 * p3 - p4 * p4;
  return s;
}

JacobianM jacobian_M(const PhasePoint& z) {
  const Vec4 q = z.q();
  const Vec4 p = z.p();
  JacobianM jac = JacobianM::Zero();
  for (int i = 0; i < 3; ++i) {
    const Eigen::Matrix4d& b = kPiCoefficients[i];
    jac.block<1, 4>(i, 0) = 0.5 * (b * p).transpose();
    jac.block<1, 4>(i, 4) = 0.5 * (b.transpose() * q).transpose();
  }
  for (int j = 0; j < 3; ++j) {
    jac.block<1, 4>(3 + j, 4) = 2.0 * (kGammaCoefficients[j] * p).transpose();
  }
  return jac;
}

Mat34 surjectivity_matrix(const Vec4& p) {
  Mat34 a;
  a << p[3], -p[2], p[1], -p[0],
       -p[2], -p[3], p[0], p[1],
       p[1], -p[0], -p[3], p[2];
  return 0.5 * a;
}

PhasePoint lift(const SE3Dual& target, const LiftGauge& gauge) {
  const Vec3& gamma = target.Gamma;
  const double r = gamma.norm();
  if (!(r > 0.0)) {
    throw Error(ErrorCode::ZeroGamma, "cannot lift a state with Gamma = 0");
  }

  // Inverse Hopf: psi with hopf(psi) = Gamma and |psi|^2 = r.
  const double upper = 0.5 * (r + gamma.z());
  const double lower = 0.5 * (r - gamma.z());
  bool use_upper = true;
  switch (gauge.hopf_branch) {
    case LiftGauge::HopfBranch::Auto: use_upper = upper >= lower; break;
    case LiftGauge::HopfBranch::UpperBranch: use_upper = true; break;
    case LiftGauge::HopfBranch::LowerBranch: use_upper = false; break;
  }
  const Complex g12(gamma.x(), gamma.y());
  ComplexPair psi;
  if (use_upper) {
    if (!(upper > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "upper Hopf branch is singular at Gamma = (0, 0, -|Gamma|)");
    }
    psi.c1 = std::sqrt(upper);
    psi.c2 = g12 / (2.0 * psi.c1.real());
  } else {
    if (!(lower > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "lower Hopf branch is singular at Gamma = (0, 0, |Gamma|)");
    }
    psi.c2 = std::sqrt(lower);
    psi.c1 = std::conj(g12) / (2.0 * psi.c2.real());
  }

  // Pi = A q with A A^T = r/4 I and ker A = span{p}.
  const Vec4 p = psi.to_real();
  const double p_norm2 = p.squaredNorm();
  Vec4 q = (4.0 / p_norm2) * surjectivity_matrix(p).transpose() * target.Pi;

  if (gauge.mode == LiftGauge::Mode::FixReChi1) {
    if (std::abs(p[0]) <= 1e-300) {
      throw Error(ErrorCode::GaugeUnsolvable,
                  "Re(chi1) cannot be fixed: Re(psi1) = 0 on this branch");
    }
    q += ((gauge.re_chi1 - q[0]) / p[0]) * p;
    q[0] = gauge.re_chi1;
  }
  return PhasePoint::from_qp(q, p);
}

}  // namespace heavytop
