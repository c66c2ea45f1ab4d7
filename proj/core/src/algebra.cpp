#include "heavytop/algebra.hpp"

namespace heavytop {

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 unhat(const Mat3& m) { return {m(2, 1), m(0, 2), m(1, 0)}; }

Mat2c su2_from_vec3(const Vec3& v) {
  const Complex minus_half_i(0.0, -0.5);
  Mat2c m;
  m << Complex(v.z(), 0.0), Complex(v.x(), -v.y()),
       Complex(v.x(), v.y()), Complex(-v.z(), 0.0);
  return minus_half_i * m;
}

Vec3 vec3_from_su2(const Mat2c& m) {
  // m = -(i/2) S with S Hermitian, so S = 2i m.
  const Complex s11 = Complex(0.0, 2.0) * m(0, 0);
  const Complex s21 = Complex(0.0, 2.0) * m(1, 0);
  return {s21.real(), s21.imag(), s11.real()};
}

double ip_su2(const Mat2c& a, const Mat2c& b) {
  return 2.0 * (a.adjoint() * b).trace().real();
}

double ip_so3(const Mat3& a, const Mat3& b) {
  return 0.5 * (a.transpose() * b).trace();
}

double c2_inner(const ComplexPair& a, const ComplexPair& b) {
  return (std::conj(a.c1) * b.c1 + std::conj(a.c2) * b.c2).real();
}

}  // namespace heavytop
