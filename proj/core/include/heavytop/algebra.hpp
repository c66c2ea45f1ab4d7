#pragma once

// Identifications R^3 <-> so(3) <-> su(2), the inner products on each, and the
// complex/real views of the collective phase space T*C^2 = T*R^4.

#include <complex>

#include <Eigen/Dense>

namespace heavytop {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;

/// A vector in C^2.
struct ComplexPair {
  Complex c1{};
  Complex c2{};

  double norm2() const { return std::norm(c1) + std::norm(c2); }

  /// (Re c1, Im c1, Re c2, Im c2).
  Vec4 to_real() const { return {c1.real(), c1.imag(), c2.real(), c2.imag()}; }
  static ComplexPair from_real(const Vec4& v) {
    return {Complex(v[0], v[1]), Complex(v[2], v[3])};
  }

  friend ComplexPair operator+(const ComplexPair& a, const ComplexPair& b) {
    return {a.c1 + b.c1, a.c2 + b.c2};
  }
  friend ComplexPair operator-(const ComplexPair& a) { return {-a.c1, -a.c2}; }
  friend ComplexPair operator*(Complex s, const ComplexPair& a) {
    return {s * a.c1, s * a.c2};
  }
  friend bool operator==(const ComplexPair&, const ComplexPair&) = default;
};

/// A point (chi, psi) of T*C^2. The real view is (q, p) with
/// q = (Re chi1, Im chi1, Re chi2, Im chi2) and p likewise from psi.
struct PhasePoint {
  ComplexPair chi;
  ComplexPair psi;

  Vec4 q() const { return chi.to_real(); }
  Vec4 p() const { return psi.to_real(); }

  /// Stacked (q, p).
  Vec8 to_real() const {
    Vec8 y;
    y << q(), p();
    return y;
  }
  static PhasePoint from_real(const Vec8& y) {
    return {ComplexPair::from_real(y.head<4>()),
            ComplexPair::from_real(y.tail<4>())};
  }
  static PhasePoint from_qp(const Vec4& q, const Vec4& p) {
    return {ComplexPair::from_real(q), ComplexPair::from_real(p)};
  }

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// A point (Pi, Gamma) of se(3)* = R^3 x R^3.
struct SE3Dual {
  Vec3 Pi = Vec3::Zero();
  Vec3 Gamma = Vec3::Zero();

  Vec6 to_vector() const {
    Vec6 v;
    v << Pi, Gamma;
    return v;
  }
  static SE3Dual from_vector(const Vec6& v) { return {v.head<3>(), v.tail<3>()}; }
};

/// A point (mu, alpha) of (su(2) x| C^2)*, mu stored through the R^3
/// identification.
struct SU2xC2Dual {
  Vec3 mu = Vec3::Zero();
  ComplexPair alpha;
};

/// so(3) element for v: hat(v) w = v x w.
Mat3 hat(const Vec3& v);
Vec3 unhat(const Mat3& m);

/// su(2) element sum v_j e_j = -(i/2) [[v3, v1 - i v2], [v1 + i v2, -v3]].
Mat2c su2_from_vec3(const Vec3& v);
Vec3 vec3_from_su2(const Mat2c& m);

/// <a, b>_su(2) = 2 tr(a* b).
double ip_su2(const Mat2c& a, const Mat2c& b);
/// <A, B>_so(3) = tr(A^T B) / 2.
double ip_so3(const Mat3& a, const Mat3& b);

/// <a, b>_C^2 = Re(a* b).
double c2_inner(const ComplexPair& a, const ComplexPair& b);

}  // namespace heavytop
