#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stgeo/scalar.hpp"

namespace stgeo {

/// Dense row-major matrix over one of the three scalar algebras.
/// Sizes are tiny (n <= ~10); everything is O(n^3) naive and value-semantic.
/// Zero-sized dimensions are legal everywhere (0x0 blocks arise for k = n).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Matrix zero(int r, int c) { return Matrix(r, c); }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::from_real(1.0);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same_shape(x, y);
    Matrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x) {
    Matrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = -x.a_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int l = 0; l < x.cols_; ++l) {
        const T& xil = x(i, l);
        for (int j = 0; j < y.cols_; ++j) r(i, j) += xil * y(l, j);
      }
    return r;
  }
  // Real scaling only: real scalars commute with all three algebras, so there
  // is no side-of-multiplication ambiguity to police here.
  friend Matrix operator*(const Matrix& x, double s) {
    Matrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] * s;
    return r;
  }
  friend Matrix operator*(double s, const Matrix& x) { return x * s; }
  Matrix& operator+=(const Matrix& y) { return *this = *this + y; }
  Matrix& operator-=(const Matrix& y) { return *this = *this - y; }

  Matrix adjoint() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = scalar_traits<T>::conj((*this)(i, j));
    return r;
  }

  T trace() const {
    T t = scalar_traits<T>::from_real(0.0);
    for (int i = 0; i < std::min(rows_, cols_); ++i) t = t + (*this)(i, i);
    return t;
  }

  Matrix block(int i0, int j0, int r, int c) const {
    if (i0 < 0 || j0 < 0 || i0 + r > rows_ || j0 + c > cols_)
      throw std::invalid_argument("block out of range");
    Matrix b(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }
  void set_block(int i0, int j0, const Matrix& b) {
    if (i0 < 0 || j0 < 0 || i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_)
      throw std::invalid_argument("set_block out of range");
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const T& x : a_) s += scalar_traits<T>::abs2(x);
    return std::sqrt(s);
  }
  double max_abs() const {
    double m = 0.0;
    for (const T& x : a_) m = std::max(m, scalar_traits<T>::abs(x));
    return m;
  }
  double one_norm() const {  // max column sum of entry moduli
    double m = 0.0;
    for (int j = 0; j < cols_; ++j) {
      double s = 0.0;
      for (int i = 0; i < rows_; ++i) s += scalar_traits<T>::abs((*this)(i, j));
      m = std::max(m, s);
    }
    return m;
  }

 private:
  static void check_same_shape(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

template <typename T>
double max_abs_diff(const Matrix<T>& x, const Matrix<T>& y) {
  return (x - y).max_abs();
}

/// First k columns of the n x n identity (the Stiefel basepoint carrier).
template <typename T>
Matrix<T> stiefel_basepoint(int n, int k) {
  Matrix<T> m(n, k);
  for (int i = 0; i < k; ++i) m(i, i) = scalar_traits<T>::from_real(1.0);
  return m;
}

/// ||M* M - I_k||, the orthonormal-columns residual.
template <typename T>
double stiefel_residual(const Matrix<T>& m) {
  return (m.adjoint() * m - Matrix<T>::identity(m.cols())).max_abs();
}

template <typename T>
double skew_residual(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("skew_residual: not square");
  return (m.adjoint() + m).max_abs();
}

template <typename T>
void require_skew(const Matrix<T>& m, double tol = kTolSkew) {
  if (skew_residual(m) > tol) throw std::invalid_argument("matrix is not skew-adjoint");
}

template <typename T>
void require_unitary(const Matrix<T>& m, double tol = kTolGroup) {
  if (m.rows() != m.cols() || (m.adjoint() * m - Matrix<T>::identity(m.rows())).max_abs() > tol)
    throw std::invalid_argument("matrix is not unitary");
}

/// Entrywise complex embedding H^{m x n} -> C^{2m x 2n}.
inline Matrix<Complex> embed_quaternion(const Matrix<Quaternion>& m) {
  Matrix<Complex> e(2 * m.rows(), 2 * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      auto b = quat_to_complex_2x2(m(i, j));
      e(2 * i, 2 * j) = b[0];
      e(2 * i, 2 * j + 1) = b[1];
      e(2 * i + 1, 2 * j) = b[2];
      e(2 * i + 1, 2 * j + 1) = b[3];
    }
  return e;
}

/// Pull a structured C^{2m x 2n} matrix back to H^{m x n}; returns the max
/// deviation from the quaternionic structure alongside the result.
inline Matrix<Quaternion> pullback_quaternion(const Matrix<Complex>& e, double* residual = nullptr) {
  if (e.rows() % 2 || e.cols() % 2)
    throw std::invalid_argument("pullback_quaternion: odd dimensions");
  Matrix<Quaternion> m(e.rows() / 2, e.cols() / 2);
  double worst = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      double r = 0.0;
      m(i, j) = quat_from_complex_2x2(e(2 * i, 2 * j), e(2 * i, 2 * j + 1), e(2 * i + 1, 2 * j),
                                      e(2 * i + 1, 2 * j + 1), &r);
      worst = std::max(worst, r);
    }
  if (residual) *residual = worst;
  return m;
}

/// Determinant by Gaussian elimination (commutative scalars only).
template <typename T>
T determinant(Matrix<T> m) {
  static_assert(scalar_traits<T>::commutative, "determinant needs a commutative field");
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  const int n = m.rows();
  T det = scalar_traits<T>::from_real(1.0);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int i = c + 1; i < n; ++i)
      if (scalar_traits<T>::abs(m(i, c)) > scalar_traits<T>::abs(m(piv, c))) piv = i;
    if (scalar_traits<T>::abs(m(piv, c)) == 0.0) return scalar_traits<T>::from_real(0.0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    for (int i = c + 1; i < n; ++i) {
      T f = m(i, c) * (scalar_traits<T>::from_real(1.0) / m(c, c));
      for (int j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

}  // namespace stgeo
