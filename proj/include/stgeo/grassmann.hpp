#pragma once

#include "stgeo/metrics.hpp"

namespace stgeo {

/// k-plane represented by its orthogonal reflection R (R* = R, R^2 = I,
/// Re Tr R = 2k - n); the projector is (R + I)/2. The reflection is primary:
/// its invariants are numerically self-correcting, and the group acts on it
/// by conjugation.
template <typename T>
double reflection_residual(const Matrix<T>& r) {
  const double sym = (r.adjoint() - r).max_abs();
  const double invol = (r * r - Matrix<T>::identity(r.rows())).max_abs();
  return std::max(sym, invol);
}

template <typename T>
void require_reflection(const Matrix<T>& r, double tol = kTolGroup) {
  if (r.rows() != r.cols() || reflection_residual(r) > tol)
    throw std::invalid_argument("not a reflection matrix");
}

template <typename T>
int reflection_plane_dim(const Matrix<T>& r) {
  const double tr = scalar_traits<T>::re(r.trace());
  return int(std::lround((r.rows() + tr) / 2.0));
}

template <typename T>
Matrix<T> reflection_to_projector(const Matrix<T>& r) {
  return (r + Matrix<T>::identity(r.rows())) * 0.5;
}

/// D = diag(I_k, -I_{n-k}), the basepoint reflection fixed by the isotropy
/// group; also the involution sigma(g) = D g D.
template <typename T>
Matrix<T> basepoint_reflection(int n, int k) {
  Matrix<T> d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = scalar_traits<T>::from_real(i < k ? 1.0 : -1.0);
  return d;
}

/// Bundle projection St -> Gr: Pi(q) = q q*, R = 2 Pi - I. Constant on fibers
/// q -> q h, h in G_k; the connected groups see the unoriented plane only.
template <typename T>
Matrix<T> project_stiefel(const Matrix<T>& q, double tol = kTolGroup) {
  if (stiefel_residual(q) > tol)
    throw std::invalid_argument("project_stiefel: columns not orthonormal");
  return q * q.adjoint() * 2.0 - Matrix<T>::identity(q.rows());
}

/// Group action (O, R) -> O R O*.
template <typename T>
Matrix<T> grassmann_act(const Matrix<T>& o, const Matrix<T>& r) {
  require_unitary(o);
  require_reflection(r);
  return o * r * o.adjoint();
}

/// Riemannian geodesic on the Grassmannian:
///   R(t) = g0 exp(t Psi_B) D exp(-t Psi_B) g0*.
template <typename T>
Matrix<T> grassmann_geodesic(const Matrix<T>& g0, const Matrix<T>& b, double t) {
  const int n = g0.rows(), k = b.rows();
  const Matrix<T> e = expm(assemble_offdiag(b), t);
  return g0 * e * basepoint_reflection<T>(n, k) * e.adjoint() * g0.adjoint();
}

/// Constant-geodesic-curvature curve (projection of a sub-Riemannian geodesic):
///   R(t) = g0 exp(t M) D exp(-t M) g0*, M = [[A,B],[-B*,C]].
template <typename T>
Matrix<T> constant_curvature_curve(const Matrix<T>& g0, const Matrix<T>& a, const Matrix<T>& b,
                                   const Matrix<T>& c, double t) {
  const int n = g0.rows(), k = a.rows();
  const Matrix<T> e = expm(assemble_gn(a, b, c), t);
  return g0 * e * basepoint_reflection<T>(n, k) * e.adjoint() * g0.adjoint();
}

/// Anticommutator residual ||R0 P + P R0||; zero exactly on Grassmann tangent
/// directions P = g0 Psi_B g0*.
template <typename T>
double grassmann_tangency_residual(const Matrix<T>& r0, const Matrix<T>& p) {
  return (r0 * p + p * r0).max_abs();
}

/// sigma_*(X) = D X D on the Lie algebra; an involutive trace-form isometry.
template <typename T>
Matrix<T> sigma_star(const Matrix<T>& x, int k) {
  const Matrix<T> d = basepoint_reflection<T>(x.rows(), k);
  return d * x * d;
}

/// The geodesic symmetry F_g(h) = g sigma(g^{-1} h) of the symmetric pair.
template <typename T>
Matrix<T> geodesic_symmetry(const Matrix<T>& g, const Matrix<T>& h, int k) {
  const Matrix<T> d = basepoint_reflection<T>(g.rows(), k);
  return g * d * (g.adjoint() * h) * d;
}

struct SymmetryReport {
  double sigma_isometry_residual = 0.0;   // trace form preserved by sigma_* on a basis
  double sigma_involution_residual = 0.0; // sigma_*^2 = id on the same basis
  double symmetry_map_residual = 0.0;     // F_g(g e^{t(Pp+Pk)} e^{-tPk}) vs g e^{t(-Pp+Pk)} e^{-tPk}
  double geodesic_reversal_residual = 0.0;    // F_g(g e^{tPp}) vs g e^{-tPp}
  double projected_reversal_residual = 0.0;   // S_p(gamma(t)) vs gamma(-t) downstairs
  bool ok = false;
};

/// Certifies the symmetric-pair structure behind the Grassmann metric: the
/// involution is a trace-form isometry, the symmetry map F_g flips the
/// horizontal generator, and the projected geodesics reverse under S_p.
/// Pp must anticommute with D (off-diagonal blocks), Pk commute (diagonal).
template <typename T>
SymmetryReport geodesic_symmetry_check(const Matrix<T>& g0, const Matrix<T>& pp,
                                       const Matrix<T>& pk, int k, double t) {
  const int n = g0.rows();
  SymmetryReport rep;
  const auto basis = algebra_basis<T>(n);
  for (size_t i = 0; i < basis.size(); ++i) {
    rep.sigma_involution_residual =
        std::max(rep.sigma_involution_residual,
                 max_abs_diff(sigma_star(sigma_star(basis[i], k), k), basis[i]));
    for (size_t j = i; j < basis.size(); ++j)
      rep.sigma_isometry_residual = std::max(
          rep.sigma_isometry_residual,
          std::abs(trace_form(sigma_star(basis[i], k), sigma_star(basis[j], k)) -
                   trace_form(basis[i], basis[j])));
  }

  const Matrix<T> g_fwd = g0 * expm(pp + pk, t) * expm(pk, -t);
  const Matrix<T> g_flip = g0 * expm(pk - pp, t) * expm(pk, -t);
  rep.symmetry_map_residual = max_abs_diff(geodesic_symmetry(g0, g_fwd, k), g_flip);

  rep.geodesic_reversal_residual = max_abs_diff(
      geodesic_symmetry(g0, Matrix<T>(g0 * expm(pp, t)), k), Matrix<T>(g0 * expm(pp, -t)));

  const Matrix<T> d = basepoint_reflection<T>(n, k);
  const Matrix<T> fg = geodesic_symmetry(g0, Matrix<T>(g0 * expm(pp, t)), k);
  const Matrix<T> back = g0 * expm(pp, -t);
  rep.projected_reversal_residual =
      max_abs_diff(Matrix<T>(fg * d * fg.adjoint()), Matrix<T>(back * d * back.adjoint()));

  rep.ok = rep.sigma_isometry_residual < 1e-13 && rep.sigma_involution_residual < 1e-13 &&
           rep.symmetry_map_residual < 1e-10 && rep.geodesic_reversal_residual < 1e-10 &&
           rep.projected_reversal_residual < 1e-10;
  return rep;
}

}  // namespace stgeo
