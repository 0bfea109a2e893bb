#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <iosfwd>
#include <ostream>

namespace stgeo {

/// Quaternion q0 + q1*i + q2*j + q3*k with real coefficients.
/// Multiplication follows i^2 = j^2 = k^2 = ijk = -1; scalars act on
/// quaternionic vectors from the right throughout the library.
struct Quaternion {
  double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w) : q0(w) {}
  constexpr Quaternion(double w, double x, double y, double z)
      : q0(w), q1(x), q2(y), q3(z) {}

  static constexpr Quaternion unit_i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion unit_j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion unit_k() { return {0, 0, 0, 1}; }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.q0 + b.q0, a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.q0 - b.q0, a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3};
  }
  friend constexpr Quaternion operator-(const Quaternion& a) {
    return {-a.q0, -a.q1, -a.q2, -a.q3};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, double s) {
    return {a.q0 * s, a.q1 * s, a.q2 * s, a.q3 * s};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& a) { return a * s; }
  Quaternion& operator+=(const Quaternion& b) { return *this = *this + b; }
  Quaternion& operator-=(const Quaternion& b) { return *this = *this - b; }
  Quaternion& operator*=(const Quaternion& b) { return *this = *this * b; }

  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.q0 == b.q0 && a.q1 == b.q1 && a.q2 == b.q2 && a.q3 == b.q3;
  }
};

constexpr Quaternion conj(const Quaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }
constexpr double abs2(const Quaternion& q) {
  return q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
}
inline double abs(const Quaternion& q) { return std::sqrt(abs2(q)); }

/// Symplectic embedding H -> C^{2x2}:
///   q0+q1 i+q2 j+q3 k  |->  [[q0+q1 i, q2+q3 i], [-q2+q3 i, q0-q1 i]]
/// An algebra homomorphism with map(conj q) = map(q)^* and det(map q) = |q|^2.
inline std::array<std::complex<double>, 4> quat_to_complex_2x2(const Quaternion& q) {
  using C = std::complex<double>;
  return {C(q.q0, q.q1), C(q.q2, q.q3), C(-q.q2, q.q3), C(q.q0, -q.q1)};
}

/// Inverse of quat_to_complex_2x2 on structured blocks [[a,b],[c,d]];
/// *residual receives the distance to the exact structure (a = conj d, b = -conj c).
inline Quaternion quat_from_complex_2x2(const std::complex<double>& a,
                                        const std::complex<double>& b,
                                        const std::complex<double>& c,
                                        const std::complex<double>& d,
                                        double* residual = nullptr) {
  Quaternion q{0.5 * (a.real() + d.real()), 0.5 * (a.imag() - d.imag()),
               0.5 * (b.real() - c.real()), 0.5 * (b.imag() + c.imag())};
  if (residual) {
    auto blk = quat_to_complex_2x2(q);
    double r = 0.0;
    r = std::max(r, std::abs(blk[0] - a));
    r = std::max(r, std::abs(blk[1] - b));
    r = std::max(r, std::abs(blk[2] - c));
    r = std::max(r, std::abs(blk[3] - d));
    *residual = r;
  }
  return q;
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.q0 << "," << q.q1 << "," << q.q2 << "," << q.q3 << ")";
}

}  // namespace stgeo
