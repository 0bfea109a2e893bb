#pragma once

#include "stgeo/geodesics.hpp"

namespace stgeo {

/// Tangent vector to St_k^n at X: an n x k matrix with X* Xdot + Xdot* X = 0.
template <typename T>
double tangency_residual(const Matrix<T>& x, const Matrix<T>& xdot) {
  return (x.adjoint() * xdot + xdot.adjoint() * x).max_abs();
}

/// Deterministic unitary completion: returns g in G_n whose first k columns
/// are X. Gram-Schmidt against the canonical basis (right-side coefficients,
/// so the quaternion case respects right scalar multiplication); determinant
/// fixed to 1 over R/C by adjusting the last appended column.
template <typename T>
Matrix<T> complete_to_group(const Matrix<T>& x, double tol = kTolGroup) {
  const int n = x.rows(), k = x.cols();
  if (stiefel_residual(x) > tol)
    throw std::invalid_argument("complete_to_group: columns not orthonormal");
  Matrix<T> g(n, n);
  g.set_block(0, 0, x);
  int have = k;
  for (int cand = 0; cand < n && have < n; ++cand) {
    Matrix<T> v(n, 1);
    v(cand, 0) = scalar_traits<T>::from_real(1.0);
    for (int c = 0; c < have; ++c) {
      const Matrix<T> u = g.block(0, c, n, 1);
      v = v - u * (u.adjoint() * v);
    }
    const double nv = v.frobenius_norm();
    if (nv < 1e-6) continue;
    g.set_block(0, have, v * (1.0 / nv));
    ++have;
  }
  if (have < n) throw std::runtime_error("complete_to_group: completion failed");
  if (k < n) {
    if constexpr (scalar_traits<T>::algebra == Algebra::Real) {
      if (determinant(g) < 0.0)
        for (int i = 0; i < n; ++i) g(i, n - 1) = -g(i, n - 1);
    } else if constexpr (scalar_traits<T>::algebra == Algebra::Complex) {
      const Complex det = determinant(g);
      const Complex fix = std::conj(det) / std::abs(det);
      for (int i = 0; i < n; ++i) g(i, n - 1) = g(i, n - 1) * fix;
    }
  }
  return g;
}

/// Lift of a tangent vector to the unique reduced-horizontal W = [[A,B],[-B*,0]]
/// with g W I_nk = Xdot, read off from g* Xdot.
template <typename T>
Matrix<T> lift_tangent(const Matrix<T>& x, const Matrix<T>& xdot, const Matrix<T>& g,
                       double tol = kTolGroup) {
  const int n = x.rows(), k = x.cols();
  if (g.rows() != n || g.cols() != n) throw std::invalid_argument("lift_tangent: bad g shape");
  if ((g.block(0, 0, n, k) - x).max_abs() > tol)
    throw std::invalid_argument("lift_tangent: g does not sit above X");
  if (tangency_residual(x, xdot) > kTolSkew)
    throw std::invalid_argument("lift_tangent: Xdot is not tangent at X");
  const Matrix<T> m = g.adjoint() * xdot;
  const Matrix<T> a = m.block(0, 0, k, k);
  const Matrix<T> lower = m.block(k, 0, n - k, k);
  Matrix<T> w(n, n);
  w.set_block(0, 0, a);
  w.set_block(0, k, -lower.adjoint());
  w.set_block(k, 0, lower);
  return w;
}

enum class MetricTag { ReducedTrace, OrthogonalTrace, QuasiGeodesicTrace, Ambient };

inline const char* metric_name(MetricTag m) {
  switch (m) {
    case MetricTag::ReducedTrace: return "reduced";
    case MetricTag::OrthogonalTrace: return "orthogonal";
    case MetricTag::QuasiGeodesicTrace: return "quasigeodesic";
    case MetricTag::Ambient: return "ambient";
  }
  return "?";
}

/// Squared length of a tangent vector under one of the four metrics. Each
/// metric is computed through its own lift:
///   reduced        |W|^2 with W the reduced lift,
///   quasi-geodesic |U1|^2 + |U2|^2 with (U1, U2) = (Psi_B, -A),
///   orthogonal     |U1|^2 + |U2|^2 with (U1, U2) = ([[A/2,B],[-B*,0]], -A/2),
///   ambient        Tr(Xdot* Xdot), evaluated on the ambient matrix directly.
template <typename T>
double stiefel_norm_sq(const Matrix<T>& x, const Matrix<T>& xdot, const Matrix<T>& g,
                       MetricTag metric) {
  if (metric == MetricTag::Ambient) {
    if (tangency_residual(x, xdot) > kTolSkew)
      throw std::invalid_argument("stiefel_norm_sq: Xdot is not tangent at X");
    const double fn = xdot.frobenius_norm();
    return fn * fn;
  }
  const int n = x.rows(), k = x.cols();
  const Matrix<T> w = lift_tangent(x, xdot, g);
  const Matrix<T> a = w.block(0, 0, k, k);
  const Matrix<T> b = w.block(0, k, k, n - k);
  switch (metric) {
    case MetricTag::ReducedTrace:
      return trace_form(w, w);
    case MetricTag::QuasiGeodesicTrace: {
      const Matrix<T> u1 = assemble_offdiag(b);
      const Matrix<T> u2 = -a;
      double v = trace_form(u1, u1);
      if (k > 0) v += trace_form(u2, u2);
      return v;
    }
    case MetricTag::OrthogonalTrace: {
      const Matrix<T> ah = a * 0.5;
      Matrix<T> u1(n, n);
      u1.set_block(0, 0, ah);
      u1.set_block(0, k, b);
      u1.set_block(k, 0, -b.adjoint());
      return trace_form(u1, u1) + trace_form(ah, ah);
    }
    default: break;
  }
  throw std::logic_error("unreachable");
}

/// Bilinear form of one of the four metrics on a pair of tangent vectors at
/// the same point; stiefel_norm_sq(x, v, g, m) = stiefel_inner(x, v, v, g, m).
template <typename T>
double stiefel_inner(const Matrix<T>& x, const Matrix<T>& xdot1, const Matrix<T>& xdot2,
                     const Matrix<T>& g, MetricTag metric) {
  if (metric == MetricTag::Ambient) {
    if (tangency_residual(x, xdot1) > kTolSkew || tangency_residual(x, xdot2) > kTolSkew)
      throw std::invalid_argument("stiefel_inner: arguments are not tangent at X");
    return scalar_traits<T>::re((xdot1.adjoint() * xdot2).trace());
  }
  const int n = x.rows(), k = x.cols();
  const Matrix<T> w1 = lift_tangent(x, xdot1, g);
  const Matrix<T> w2 = lift_tangent(x, xdot2, g);
  const Matrix<T> a1 = w1.block(0, 0, k, k), a2 = w2.block(0, 0, k, k);
  const Matrix<T> b1 = w1.block(0, k, k, n - k), b2 = w2.block(0, k, k, n - k);
  switch (metric) {
    case MetricTag::ReducedTrace:
      return trace_form(w1, w2);
    case MetricTag::QuasiGeodesicTrace:
      return trace_form(assemble_offdiag(b1), assemble_offdiag(b2)) +
             trace_form(Matrix<T>(-a1), Matrix<T>(-a2));
    case MetricTag::OrthogonalTrace: {
      auto half = [&](const Matrix<T>& a, const Matrix<T>& b) {
        Matrix<T> u(n, n);
        u.set_block(0, 0, a * 0.5);
        u.set_block(0, k, b);
        u.set_block(k, 0, -b.adjoint());
        return u;
      };
      return trace_form(half(a1, b1), half(a2, b2)) +
             trace_form(Matrix<T>(a1 * 0.5), Matrix<T>(a2 * 0.5));
    }
    default: break;
  }
  throw std::logic_error("unreachable");
}

/// Both sides of the ambient/trace-form relation
/// (U1,U2)_p = <U1, D U2 + U2 D> with D = diag(I_k, 0); U1, U2 in reduced p.
template <typename T>
std::pair<double, double> ambient_vs_trace_relation(const Matrix<T>& u1, const Matrix<T>& u2,
                                                    int k) {
  const int n = u1.rows();
  require_skew(u1);
  require_skew(u2);
  if (u2.rows() != n) throw std::invalid_argument("ambient_vs_trace_relation: shape mismatch");
  const Matrix<T> a1 = u1.block(0, 0, k, k), a2 = u2.block(0, 0, k, k);
  const Matrix<T> b1 = u1.block(0, k, k, n - k), b2 = u2.block(0, k, k, n - k);
  const double lhs = scalar_traits<T>::re((a1.adjoint() * a2).trace()) +
                     scalar_traits<T>::re((b1 * b2.adjoint()).trace());
  Matrix<T> d(n, n);
  for (int i = 0; i < k; ++i) d(i, i) = scalar_traits<T>::from_real(1.0);
  const double rhs = trace_form(u1, Matrix<T>(d * u2 + u2 * d));
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Covariant derivative of a horizontal field along a lifted curve:
//   D Y/dt = projection of g(t) (dW/dt + 1/2 [U(t), W(t)]_p).

template <typename T>
struct CovariantDerivative {
  AlgPair<T> frame;  // the p-component of Wdot + 1/2 [U, W]_p
  double norm = 0.0; // its trace-form length (= |DY/dt| in the homogeneous metric)
};

template <typename T, typename WFn>
CovariantDerivative<T> covariant_derivative(const LiftedCurve<T>& lift, WFn&& w, double t,
                                            double h = 1e-5) {
  const AlgPair<T> wt = w(t);
  const AlgPair<T> wdot = (w(t + h) - w(t - h)) * (1.0 / (2.0 * h));
  const AlgPair<T> u = lift.control(t);
  const AlgPair<T> br_p = decompose(bracket(u, wt), lift.dist).p;
  CovariantDerivative<T> out;
  out.frame = decompose(wdot + br_p * 0.5, lift.dist).p;
  out.norm = trace_norm(out.frame);
  return out;
}

/// Geodesic curvature |D/dt (dm/dt)| of the projected curve; the caller must
/// hand in a unit-speed lift (generator blocks pre-scaled by 1/|P_p|).
template <typename T>
double geodesic_curvature(const LiftedCurve<T>& lift, double t, double h = 1e-5) {
  return covariant_derivative(lift, lift.control, t, h).norm;
}

template <typename T>
double control_speed(const LiftedCurve<T>& lift, double t) {
  return trace_norm(lift.control(t));
}

}  // namespace stgeo
