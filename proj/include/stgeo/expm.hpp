#pragma once

#include <cmath>
#include <stdexcept>

#include "stgeo/matrix.hpp"

namespace stgeo {

namespace detail {

/// Solve A X = B by Gaussian elimination with partial pivoting (commutative scalars).
template <typename T>
Matrix<T> solve(Matrix<T> a, Matrix<T> b) {
  static_assert(scalar_traits<T>::commutative, "solve needs a commutative field");
  const int n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve: shape mismatch");
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int i = c + 1; i < n; ++i)
      if (scalar_traits<T>::abs(a(i, c)) > scalar_traits<T>::abs(a(piv, c))) piv = i;
    if (scalar_traits<T>::abs(a(piv, c)) == 0.0) throw std::runtime_error("solve: singular matrix");
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(piv, j), b(c, j));
    }
    for (int i = c + 1; i < n; ++i) {
      T f = a(i, c) / a(c, c);
      for (int j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
      for (int j = 0; j < b.cols(); ++j) b(i, j) = b(i, j) - f * b(c, j);
    }
  }
  Matrix<T> x(n, b.cols());
  for (int i = n - 1; i >= 0; --i)
    for (int j = 0; j < b.cols(); ++j) {
      T s = b(i, j);
      for (int l = i + 1; l < n; ++l) s = s - a(i, l) * x(l, j);
      x(i, j) = s / a(i, i);
    }
  return x;
}

template <typename T>
Matrix<T> expm_pade13(const Matrix<T>& m) {
  static_assert(scalar_traits<T>::commutative);
  const int n = m.rows();
  if (n == 0) return m;
  // Pade(13) coefficients and theta_13 from the scaling-and-squaring method.
  static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
  const double theta13 = 5.371920351148152;
  int s = 0;
  const double nrm = m.one_norm();
  if (nrm > theta13) s = int(std::ceil(std::log2(nrm / theta13)));
  const Matrix<T> a = m * std::ldexp(1.0, -s);
  const Matrix<T> id = Matrix<T>::identity(n);
  const Matrix<T> a2 = a * a;
  const Matrix<T> a4 = a2 * a2;
  const Matrix<T> a6 = a2 * a4;
  Matrix<T> u = a * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] +
                     a2 * b[3] + id * b[1]);
  Matrix<T> v =
      a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];
  Matrix<T> r = solve(v - u, v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

}  // namespace detail

/// exp(M) for square matrices. Real/complex use scaling-and-squaring with a
/// fixed Pade(13) approximant; quaternionic input goes through the complex
/// embedding and is pulled back (the embedding is an exact algebra
/// homomorphism, so exp commutes with it).
inline Matrix<double> expm(const Matrix<double>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm: not square");
  return detail::expm_pade13(m);
}
inline Matrix<Complex> expm(const Matrix<Complex>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm: not square");
  return detail::expm_pade13(m);
}
inline Matrix<Quaternion> expm(const Matrix<Quaternion>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm: not square");
  double residual = 0.0;
  Matrix<Quaternion> r = pullback_quaternion(detail::expm_pade13(embed_quaternion(m)), &residual);
  if (residual > 1e-12) throw std::runtime_error("expm: quaternion structure lost in pullback");
  return r;
}

template <typename T>
Matrix<T> expm(const Matrix<T>& m, double t) {
  return expm(Matrix<T>(m * t));
}

}  // namespace stgeo
