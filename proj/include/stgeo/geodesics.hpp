#pragma once

#include <functional>
#include <vector>

#include "stgeo/lie.hpp"

namespace stgeo {

// ---------------------------------------------------------------------------
// Group-pair helpers (second slot may be 0x0)

template <typename T>
AlgPair<T> pair_mul(const AlgPair<T>& g, const AlgPair<T>& h) {
  return {g.gn * h.gn, g.gk.rows() ? g.gk * h.gk : Matrix<T>(0, 0)};
}
template <typename T>
AlgPair<T> pair_adjoint(const AlgPair<T>& g) {
  return {g.gn.adjoint(), g.gk.adjoint()};
}
template <typename T>
AlgPair<T> pair_expm(const AlgPair<T>& x, double t) {
  return {expm(x.gn, t), x.gk.rows() ? expm(x.gk, t) : Matrix<T>(0, 0)};
}
template <typename T>
AlgPair<T> pair_conjugate(const AlgPair<T>& g, const AlgPair<T>& x) {  // g x g*
  return {g.gn * x.gn * g.gn.adjoint(), g.gk.rows() ? g.gk * x.gk * g.gk.adjoint() : Matrix<T>(0, 0)};
}
template <typename T>
AlgPair<T> pair_identity(int n, int k) {
  return {Matrix<T>::identity(n), k > 0 ? Matrix<T>::identity(k) : Matrix<T>(0, 0)};
}

// ---------------------------------------------------------------------------
// Master sub-Riemannian geodesic:
//   g(t) = g0 exp(t(Pp + Pperp)) exp(-t Pperp)
// valid whenever p_perp is a Lie subalgebra (true for all three distributions).

template <typename T>
AlgPair<T> sr_geodesic(const AlgPair<T>& g0, const AlgPair<T>& pp, const AlgPair<T>& pperp,
                       double t, const Distribution& d, bool check_membership = true) {
  if (check_membership) {
    if (p_membership_residual(pp, d) > kTolSkew)
      throw std::invalid_argument("sr_geodesic: Pp is not in p");
    if (pperp_membership_residual(pperp, d) > kTolSkew)
      throw std::invalid_argument("sr_geodesic: Pperp is not in p_perp");
  }
  return pair_mul(g0, pair_mul(pair_expm(pp + pperp, t), pair_expm(pperp, -t)));
}

/// Extremal control U(t) = exp(t Pperp) Pp exp(-t Pperp); stays in p and has
/// constant norm.
template <typename T>
AlgPair<T> extremal_control(const AlgPair<T>& pp, const AlgPair<T>& pperp, double t) {
  return pair_conjugate(pair_expm(pperp, t), pp);
}

// ---------------------------------------------------------------------------
// Closed-form Stiefel curve families (points are n x k with orthonormal columns)

/// Reduced-metric Riemannian geodesic: m(t) = g0 e^{t Omega} I_nk.
template <typename T>
Matrix<T> stiefel_geodesic_reduced(const Matrix<T>& g0, const Matrix<T>& a, const Matrix<T>& b,
                                   double t) {
  const int n = g0.rows(), k = a.rows();
  const Matrix<T> omega = assemble_gn(a, b, Matrix<T>(n - k, n - k));
  return g0 * expm(omega, t).block(0, 0, n, k);
}

/// Orthogonal-metric geodesic: m(t) = r e^{t Omega} I_nk e^{tA} s*.
template <typename T>
Matrix<T> stiefel_geodesic_orthogonal(const Matrix<T>& r, const Matrix<T>& s, const Matrix<T>& a,
                                      const Matrix<T>& b, double t) {
  const int n = r.rows(), k = a.rows();
  const Matrix<T> omega = assemble_gn(a, b, Matrix<T>(n - k, n - k));
  return r * expm(omega, t).block(0, 0, n, k) * expm(a, t) * s.adjoint();
}

/// Projection of the quasi-geodesic-distribution sub-Riemannian geodesic,
/// r exp(t[[E,B],[-B*,F]]) diag(e^{-tE} e^{-tA}, e^{-tF}) I_nk s*.
template <typename T>
Matrix<T> sr_qg_projection(const Matrix<T>& r, const Matrix<T>& s, const Matrix<T>& a,
                           const Matrix<T>& b, const Matrix<T>& e, const Matrix<T>& f, double t) {
  const int n = r.rows(), k = a.rows();
  const Matrix<T> phi = assemble_gn(e, b, f);
  const Matrix<T> right = expm(e, -t) * expm(a, -t);
  return r * (expm(phi, t).block(0, 0, n, k) * right) * s.adjoint();
}

/// Quasi-geodesic curve: gamma(t) = r exp(t Psi) I_nk e^{-tA} s*.
template <typename T>
Matrix<T> quasi_geodesic(const Matrix<T>& r, const Matrix<T>& s, const Matrix<T>& b,
                         const Matrix<T>& a, double t) {
  const int n = r.rows(), k = a.rows();
  require_skew(a);
  const Matrix<T> psi = assemble_offdiag(b);
  return r * expm(psi, t).block(0, 0, n, k) * expm(a, -t) * s.adjoint();
}

/// Ambient-metric geodesic family:
/// X(t) = g0 e^{t(P+Q)} I_nk e^{-tA/2}, P+Q = [[A,B0],[-B0*,C]], Q = diag(A/2, C).
template <typename T>
Matrix<T> ambient_geodesic(const Matrix<T>& g0, const Matrix<T>& a, const Matrix<T>& b0,
                           const Matrix<T>& c, double t) {
  const int n = g0.rows(), k = a.rows();
  const Matrix<T> pq = assemble_gn(a, b0, c);
  return g0 * expm(pq, t).block(0, 0, n, k) * expm(a, -0.5 * t);
}

// ---------------------------------------------------------------------------
// Finite-difference helpers (central stencils; h = 1e-6 for first derivatives,
// 1e-4 for second, per the roundoff/truncation balance at double precision)

inline constexpr double kFdFirst = 1e-6;
inline constexpr double kFdSecond = 1e-4;

template <typename F>
auto fd_velocity(F&& f, double t, double h = kFdFirst) {
  return (f(t + h) - f(t - h)) * (1.0 / (2.0 * h));
}

/// ||Xdd + X Xd* Xd|| at t from a three-point stencil: the residual of the
/// ambient-metric Euler-Lagrange equation.
template <typename F>
double euler_lagrange_residual(F&& curve, double t, double h = kFdSecond) {
  const auto xm = curve(t - h);
  const auto x0 = curve(t);
  const auto xp = curve(t + h);
  const auto xd = (xp - xm) * (1.0 / (2.0 * h));
  const auto xdd = (xp - x0 * 2.0 + xm) * (1.0 / (h * h));
  return (xdd + x0 * (xd.adjoint() * xd)).frobenius_norm();
}

/// exp(M) - I to full relative precision for small-norm M (power series; the
/// naive expm(M) - I loses the leading digits to cancellation).
template <typename T>
Matrix<T> expm_minus_identity(const Matrix<T>& m) {
  if (m.one_norm() > 0.1) throw std::invalid_argument("expm_minus_identity: norm too large");
  Matrix<T> sum = m;
  Matrix<T> term = m;
  for (int j = 2; j <= 16; ++j) {
    term = term * m * (1.0 / j);
    sum += term;
  }
  return sum;
}

/// The Euler-Lagrange residual of an ambient-family geodesic, on the same
/// h-stencil but with the common unitary factors pulled out symbolically:
///   X(t + d) = g0 e^{tM} (I + E_d) I_nk (I + G_{-d}) e^{-tA/2},
/// so the three e^0 terms cancel exactly and the stencil carries no
/// catastrophic cancellation. Identical quantity, accurate to ~1e-11 instead
/// of the ~eps/h^2 floor of naively differenced samples.
template <typename T>
double ambient_el_stencil_residual(const Matrix<T>& a, const Matrix<T>& b0, const Matrix<T>& c,
                                   double h = kFdSecond) {
  const int k = a.rows(), n = k + c.rows();
  const Matrix<T> m = assemble_gn(a, b0, c);
  const Matrix<T> ink = stiefel_basepoint<T>(n, k);
  const Matrix<T> ep = expm_minus_identity(Matrix<T>(m * h));
  const Matrix<T> em = expm_minus_identity(Matrix<T>(m * -h));
  const Matrix<T> gp = expm_minus_identity(Matrix<T>(a * (0.5 * h)));
  const Matrix<T> gm = expm_minus_identity(Matrix<T>(a * (-0.5 * h)));

  // second difference: (I+E+)(I_nk)(I+G-) - 2 I_nk + (I+E-)(I_nk)(I+G+)
  const Matrix<T> sdd = ep * ink + em * ink + ink * gm + ink * gp + ep * ink * gm +
                        em * ink * gp;
  // first difference: (I+E+)(I_nk)(I+G-) - (I+E-)(I_nk)(I+G+)
  const Matrix<T> d1 =
      ep * ink - em * ink + ink * gm - ink * gp + ep * ink * gm - em * ink * gp;

  // residual = || sdd/h^2 + I_nk (d1/2h)*(d1/2h) ||, common unitary factors
  // dropped (Frobenius norm is invariant under them, and the generator is
  // conjugation-stationary along the curve)
  const Matrix<T> xdd = sdd * (1.0 / (h * h));
  const Matrix<T> xd = d1 * (1.0 / (2.0 * h));
  return (xdd + ink * (xd.adjoint() * xd)).frobenius_norm();
}

/// k = 1 sphere residual ||mdd + |b|^2 m|| on the same cancellation-free
/// stencil: g0 e^{t Omega} [ (E+ + E-)/h^2 + |b|^2 I ] e1 with Omega the
/// off-diagonal generator of the great-circle geodesic.
template <typename T>
double sphere_ode_stencil_residual(const Matrix<T>& b, double h = kFdSecond) {
  const int n = 1 + b.cols();
  const Matrix<T> omega = assemble_offdiag(b);
  const double b2 = b.frobenius_norm() * b.frobenius_norm();
  const Matrix<T> ep = expm_minus_identity(Matrix<T>(omega * h));
  const Matrix<T> em = expm_minus_identity(Matrix<T>(omega * -h));
  Matrix<T> op = (ep + em) * (1.0 / (h * h)) + Matrix<T>::identity(n) * b2;
  return op.block(0, 0, n, 1).frobenius_norm();
}

// ---------------------------------------------------------------------------
// Right-invariant-frame ODE integration (fixed-step RK4, no re-unitarization:
// constraint drift is a measurement, not something to hide)

template <typename M, typename F>
M rk4_integrate(M y, F&& f, double t0, double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("rk4_integrate: steps must be >= 1");
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    const M k1 = f(t, y);
    const M k2 = f(t + 0.5 * h, y + k1 * (0.5 * h));
    const M k3 = f(t + 0.5 * h, y + k2 * (0.5 * h));
    const M k4 = f(t + h, y + k3 * h);
    y = y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    t = t0 + (i + 1) * h;
  }
  return y;
}

/// The nonautonomous ODE satisfied by the G_n-level horizontal lift of a
/// quasi-geodesic-distribution projection:
///   dg/dt = g(t) [[-At, e^{t At} e^{t Et} Bt e^{-t F}], [-(...)*, 0]]
/// with At, Et in g_k, F in g_{n-k}. Integrated by RK4 from g0; matches the
/// closed form qg_lift_closed_form to O(steps^-4).
template <typename T>
Matrix<T> horizontal_lift_control(const Matrix<T>& at, const Matrix<T>& et, const Matrix<T>& bt,
                                  const Matrix<T>& f, double t) {
  const int k = at.rows(), nk = f.rows();
  const Matrix<T> upper = expm(at, t) * expm(et, t) * bt * expm(f, -t);
  Matrix<T> u(k + nk, k + nk);
  u.set_block(0, 0, -at);
  u.set_block(0, k, upper);
  u.set_block(k, 0, -upper.adjoint());
  return u;
}

template <typename T>
Matrix<T> horizontal_lift_ode(const Matrix<T>& g0, const Matrix<T>& at, const Matrix<T>& et,
                              const Matrix<T>& bt, const Matrix<T>& f, double t_end, int steps) {
  return rk4_integrate(
      g0,
      [&](double t, const Matrix<T>& g) { return g * horizontal_lift_control(at, et, bt, f, t); },
      0.0, t_end, steps);
}

/// Closed form the ODE above must reproduce: g(t) = g0 e^{t Phi} Delta(t) with
/// Phi = [[Et, Bt], [-Bt*, F]], Delta = diag(e^{-t Et} e^{-t At}, e^{-t F}).
template <typename T>
Matrix<T> qg_lift_closed_form(const Matrix<T>& g0, const Matrix<T>& at, const Matrix<T>& et,
                              const Matrix<T>& bt, const Matrix<T>& f, double t) {
  const Matrix<T> phi = assemble_gn(et, bt, f);
  const Matrix<T> delta = assemble_diag(Matrix<T>(expm(et, -t) * expm(at, -t)), expm(f, -t));
  return g0 * expm(phi, t) * delta;
}

/// Fiber correction of the horizontal-lift proposition: given a curve's
/// control U(t) = c(t)^{-1} c'(t), integrates h' = -Q(t) h with Q the
/// k-component, so that c(t) h(t) is horizontal. Samples h at the given times
/// (ts must be increasing, starting at 0).
template <typename T, typename UFn>
std::vector<Matrix<T>> fiber_correction(const Matrix<T>& h0, UFn&& control,
                                        const Distribution& d, const std::vector<double>& ts,
                                        int steps_per_unit = 2000) {
  std::vector<Matrix<T>> out;
  Matrix<T> h = h0;
  double t_prev = 0.0;
  for (double t : ts) {
    if (t > t_prev) {
      const int steps = std::max(1, int(steps_per_unit * (t - t_prev)));
      h = rk4_integrate(
          h,
          [&](double tau, const Matrix<T>& hh) {
            const AlgPair<T> u(control(tau));
            return Matrix<T>(-(decompose(u, d).k.gn * hh));
          },
          t_prev, t, steps);
      t_prev = t;
    }
    out.push_back(h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Horizontal lifts of the curve families, for covariant-derivative work.
// `group` is the horizontal curve, `control` its left-logarithmic derivative;
// the distribution tells which p-projection the geodesic curvature uses.

template <typename T>
struct LiftedCurve {
  Distribution dist;
  std::function<AlgPair<T>(double)> group;
  std::function<AlgPair<T>(double)> control;
};

template <typename T>
LiftedCurve<T> lift_sr(const AlgPair<T>& g0, const AlgPair<T>& pp, const AlgPair<T>& pperp,
                       const Distribution& d) {
  return {d, [=](double t) { return sr_geodesic(g0, pp, pperp, t, d, false); },
          [=](double t) { return extremal_control(pp, pperp, t); }};
}

/// Reduced-distribution sub-Riemannian curve on G_n from blocks (A, B, D).
template <typename T>
LiftedCurve<T> lift_reduced_sr(const Matrix<T>& g0, const Matrix<T>& a, const Matrix<T>& b,
                               const Matrix<T>& dblk) {
  const int n = g0.rows(), k = a.rows();
  const Distribution d(DistKind::Reduced, n, k);
  const AlgPair<T> pp(assemble_gn(a, b, Matrix<T>(n - k, n - k)));
  const AlgPair<T> pk(assemble_diag(Matrix<T>(k, k), dblk));
  return lift_sr(AlgPair<T>(g0), pp, pk, d);
}

/// Orthogonal-distribution sub-Riemannian curve on G_n x G_k from (A,B) in p
/// and (C, D) in k.
template <typename T>
LiftedCurve<T> lift_orthogonal_sr(const Matrix<T>& r, const Matrix<T>& s, const Matrix<T>& a,
                                  const Matrix<T>& b, const Matrix<T>& c, const Matrix<T>& dblk) {
  const int n = r.rows(), k = a.rows();
  const Distribution d(DistKind::Orthogonal, n, k);
  const AlgPair<T> pp(assemble_gn(a, b, Matrix<T>(n - k, n - k)), -a);
  const AlgPair<T> pk(assemble_diag(c, dblk), c);
  return lift_sr(AlgPair<T>{r, s}, pp, pk, d);
}

/// Quasi-geodesic-distribution sub-Riemannian curve on G_n x G_k, P_p = (Psi_B, A),
/// P_perp = (diag(E,F), 0).
template <typename T>
LiftedCurve<T> lift_qg_sr(const Matrix<T>& r, const Matrix<T>& s, const Matrix<T>& a,
                          const Matrix<T>& b, const Matrix<T>& e, const Matrix<T>& f) {
  const int n = r.rows(), k = a.rows();
  const Distribution d(DistKind::QuasiGeodesic, n, k);
  const AlgPair<T> pp(assemble_offdiag(b), a);
  const AlgPair<T> pperp(assemble_diag(e, f), Matrix<T>(k, k));
  return lift_sr(AlgPair<T>{r, s}, pp, pperp, d);
}

/// G_n-level horizontal lift of the quasi-geodesic-distribution projection
/// (the nonautonomous ODE above); the split is Reduced, where p_perp = k and
/// the covariant-derivative formula applies. Used for curvature.
template <typename T>
LiftedCurve<T> lift_qg_gn(const Matrix<T>& r, const Matrix<T>& s, const Matrix<T>& a,
                          const Matrix<T>& b, const Matrix<T>& e, const Matrix<T>& f) {
  const int n = r.rows(), k = a.rows();
  const Distribution d(DistKind::Reduced, n, k);
  const Matrix<T> at = s * a * s.adjoint();
  const Matrix<T> et = s * e * s.adjoint();
  const Matrix<T> bt = s * b;
  const Matrix<T> g0 = r * embed_gk(s, n).adjoint();
  return {d, [=](double t) { return AlgPair<T>(qg_lift_closed_form(g0, at, et, bt, f, t)); },
          [=](double t) { return AlgPair<T>(horizontal_lift_control(at, et, bt, f, t)); }};
}

/// Ambient-metric extremal lift: P = [[A/2,B0],[-B0*,0]], Q = diag(A/2, C);
/// horizontal with respect to the reduced distribution.
template <typename T>
LiftedCurve<T> lift_ambient(const Matrix<T>& g0, const Matrix<T>& a, const Matrix<T>& b0,
                            const Matrix<T>& c) {
  const int n = g0.rows(), k = a.rows();
  const Distribution d(DistKind::Reduced, n, k);
  Matrix<T> p(n, n);
  p.set_block(0, 0, a * 0.5);
  p.set_block(0, k, b0);
  p.set_block(k, 0, -b0.adjoint());
  const Matrix<T> q = assemble_diag(Matrix<T>(a * 0.5), c);
  return {d,
          [=](double t) {
            return AlgPair<T>(Matrix<T>(g0 * expm(p + q, t) * expm(q, -t)));
          },
          [=](double t) {
            const Matrix<T> eq = expm(q, t);
            return AlgPair<T>(Matrix<T>(eq * p * eq.adjoint()));
          }};
}

/// Grassmann sub-Riemannian lift for R(t) = g0 e^{tM} D e^{-tM} g0*,
/// M = [[A,B],[-B*,C]]: group g0 e^{tM} e^{-tPk}, sigma split.
template <typename T>
LiftedCurve<T> lift_grassmann(const Matrix<T>& g0, const Matrix<T>& a, const Matrix<T>& b,
                              const Matrix<T>& c) {
  const int n = g0.rows(), k = a.rows();
  const Distribution d(DistKind::GrassmannSigma, n, k);
  const Matrix<T> m = assemble_gn(a, b, c);
  const Matrix<T> pk = assemble_diag(a, c);
  const Matrix<T> pp = m - pk;
  return {d,
          [=](double t) { return AlgPair<T>(Matrix<T>(g0 * expm(m, t) * expm(pk, -t))); },
          [=](double t) {
            const Matrix<T> ek = expm(pk, t);
            return AlgPair<T>(Matrix<T>(ek * pp * ek.adjoint()));
          }};
}

}  // namespace stgeo
