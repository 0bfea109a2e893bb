#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stgeo/geodesics.hpp"
#include "stgeo/metrics.hpp"

using namespace stgeo;

namespace {

template <typename T>
struct Blocks {
  Matrix<T> a, b, e, f, d, c;
  Matrix<T> r, s;
};

template <typename T>
Blocks<T> random_blocks(Rng& rng, int n, int k) {
  Blocks<T> bl;
  bl.a = random_skew<T>(rng, k);
  bl.b = rng.matrix_normal<T>(k, n - k);
  bl.e = random_skew<T>(rng, k);
  bl.f = random_skew<T>(rng, n - k);
  bl.d = random_skew<T>(rng, n - k);
  bl.c = random_skew<T>(rng, k);
  bl.r = random_group<T>(rng, n);
  bl.s = random_group<T>(rng, k);
  return bl;
}

template <typename T>
double fd_control_k_residual(const LiftedCurve<T>& lift, double t) {
  // numeric control via central differences, then its k-component
  const AlgPair<T> g = lift.group(t);
  const AlgPair<T> gdot = fd_velocity(lift.group, t);
  const AlgPair<T> u{g.gn.adjoint() * gdot.gn,
                     g.gk.rows() ? Matrix<T>(g.gk.adjoint() * gdot.gk) : Matrix<T>(0, 0)};
  return decompose(u, lift.dist).k.max_abs();
}

}  // namespace

TEST_CASE("sr_geodesic basics") {
  Rng rng = Rng::stream(31, "sr-basic");
  const Distribution d(DistKind::Reduced, 4, 2);
  const AlgPair<double> g0(random_group<double>(rng, 4));
  const Matrix<double> a = random_skew<double>(rng, 2);
  const Matrix<double> b = rng.matrix_normal<double>(2, 2);
  const AlgPair<double> pp(assemble_gn(a, b, Matrix<double>(2, 2)));
  const AlgPair<double> pk(assemble_diag(Matrix<double>(2, 2), random_skew<double>(rng, 2)));

  // t = 0 -> g0
  CHECK((sr_geodesic(g0, pp, pk, 0.0, d) - g0).max_abs() < 1e-15);
  // Pperp = 0 -> g0 exp(t Pp)
  const AlgPair<double> zero(Matrix<double>(4, 4));
  CHECK((sr_geodesic(g0, pp, zero, 0.7, d) -
         AlgPair<double>(Matrix<double>(g0.gn * expm(pp.gn, 0.7))))
            .max_abs() < 1e-12);
  // membership violations rejected
  CHECK_THROWS_AS(sr_geodesic(g0, pk, pk, 0.5, d), std::invalid_argument);
  CHECK_THROWS_AS(sr_geodesic(g0, pp, pp, 0.5, d), std::invalid_argument);
}

TEST_CASE("reduced(3,1) with B=(1,0): first column is (cos t, -sin t, 0)") {
  Matrix<double> b(1, 2);
  b(0, 0) = 1.0;
  const Matrix<double> g0 = Matrix<double>::identity(3);
  for (double t : {0.0, 0.4, 1.3, 3.0}) {
    const Matrix<double> m = stiefel_geodesic_reduced(g0, Matrix<double>(1, 1), b, t);
    CHECK(m(0, 0) == doctest::Approx(std::cos(t)).epsilon(1e-13));
    CHECK(m(1, 0) == doctest::Approx(-std::sin(t)).epsilon(1e-13));
    CHECK(std::abs(m(2, 0)) < 1e-15);
  }
}

TEST_CASE("extremal_control") {
  Rng rng = Rng::stream(31, "control");
  const Distribution d(DistKind::QuasiGeodesic, 4, 2);
  const auto bl = random_blocks<double>(rng, 4, 2);
  const AlgPair<double> pp(assemble_offdiag(bl.b), bl.a);
  const AlgPair<double> pperp(assemble_diag(bl.e, bl.f), Matrix<double>(2, 2));

  // t = 0 -> Pp; Pperp = 0 -> Pp for all t
  CHECK((extremal_control(pp, pperp, 0.0) - pp).max_abs() < 1e-15);
  const AlgPair<double> zero{Matrix<double>(4, 4), Matrix<double>(2, 2)};
  CHECK((extremal_control(pp, zero, 1.7) - pp).max_abs() < 1e-15);

  // d/dt U at 0 equals [Pperp, Pp] (central difference, h = 1e-5)
  const double h = 1e-5;
  const AlgPair<double> du =
      (extremal_control(pp, pperp, h) - extremal_control(pp, pperp, -h)) * (1.0 / (2.0 * h));
  CHECK((du - bracket(pperp, pp)).max_abs() < 1e-7);

  // ||U(t)|| constant in t
  const double n0 = trace_norm(extremal_control(pp, pperp, 0.0));
  for (double t : {0.3, 1.1, 2.9})
    CHECK(std::abs(trace_norm(extremal_control(pp, pperp, t)) - n0) < 1e-12);
}

TEST_CASE("horizontality: exact control stays in p, fd-velocity matches") {
  Rng rng = Rng::stream(31, "horiz");
  auto run = [&](auto tag, DistKind kind, int n, int k) {
    using T = decltype(tag);
    const Distribution d(kind, n, k);
    const auto bl = random_blocks<T>(rng, n, k);
    LiftedCurve<T> lift = [&] {
      switch (kind) {
        case DistKind::Reduced: return lift_reduced_sr(bl.r, bl.a, bl.b, bl.d);
        case DistKind::Orthogonal: return lift_orthogonal_sr(bl.r, bl.s, bl.a, bl.b, bl.c, bl.d);
        default: return lift_qg_sr(bl.r, bl.s, bl.a, bl.b, bl.e, bl.f);
      }
    }();
    for (double t : {0.0, 0.5, 1.5}) {
      // exact route: k-component of the extremal control
      CHECK(decompose(lift.control(t), d).k.max_abs() < 1e-10);
      // numeric route: finite-difference velocity
      CHECK(fd_control_k_residual(lift, t) < 1e-5);
      // velocity matches g * U
      const AlgPair<T> gdot = fd_velocity(lift.group, t);
      const AlgPair<T> gu = pair_mul(lift.group(t), AlgPair<T>{lift.control(t).gn,
                                                               lift.control(t).gk});
      CHECK((gdot - gu).max_abs() < 1e-5);
      // constant speed
      CHECK(std::abs(control_speed(lift, t) - control_speed(lift, 0.0)) < 1e-12);
    }
  };
  run(double{}, DistKind::Reduced, 4, 2);
  run(double{}, DistKind::Orthogonal, 4, 2);
  run(double{}, DistKind::QuasiGeodesic, 4, 2);
  run(Complex{}, DistKind::QuasiGeodesic, 3, 1);
  run(Quaternion{}, DistKind::Reduced, 3, 1);
  run(Quaternion{}, DistKind::Orthogonal, 2, 1);
}

TEST_CASE("conservation: U(t) stays trace-form orthogonal to p_perp") {
  Rng rng = Rng::stream(31, "conserve");
  auto run = [&](auto tag, DistKind kind, int n, int k) {
    using T = decltype(tag);
    const Distribution d(kind, n, k);
    const auto pb = p_basis<T>(d);
    const auto qb = pperp_basis<T>(d);
    AlgPair<T> pp = pb.front() * 0.0, pq = pp;
    for (const auto& e : pb) pp = pp + e * rng.normal();
    if (!qb.empty()) {
      pq = qb.front() * 0.0;
      for (const auto& e : qb) pq = pq + e * rng.normal();
    }
    for (double t : {0.25, 1.0, 2.5}) {
      const AlgPair<T> u = extremal_control(pp, pq, t);
      for (const auto& q : qb) CHECK(std::abs(trace_form(u, q)) < 1e-10);
    }
  };
  run(double{}, DistKind::Reduced, 5, 2);
  run(Complex{}, DistKind::QuasiGeodesic, 4, 2);
  run(Complex{}, DistKind::Orthogonal, 3, 1);
  run(Quaternion{}, DistKind::QuasiGeodesic, 3, 1);
}

TEST_CASE("orthogonal geodesic: A=0 reduction, t=0 value, constant orthogonal speed") {
  Rng rng = Rng::stream(31, "orthgeo");
  const int n = 4, k = 2;
  const auto bl = random_blocks<double>(rng, n, k);

  // A = 0 -> r exp(t Psi) I s*
  const Matrix<double> m0 =
      stiefel_geodesic_orthogonal(bl.r, bl.s, Matrix<double>(k, k), bl.b, 0.8);
  const Matrix<double> want =
      bl.r * expm(assemble_offdiag(bl.b), 0.8).block(0, 0, n, k) * bl.s.adjoint();
  CHECK(max_abs_diff(m0, want) < 1e-13);

  // t = 0 -> r I s*
  CHECK(max_abs_diff(stiefel_geodesic_orthogonal(bl.r, bl.s, bl.a, bl.b, 0.0),
                     Matrix<double>(bl.r.block(0, 0, n, k) * bl.s.adjoint())) < 1e-14);

  // constant speed under the orthogonal metric: sample the product-level control
  const LiftedCurve<double> lift =
      lift_orthogonal_sr(bl.r, bl.s, bl.a, bl.b, Matrix<double>(k, k), Matrix<double>(n - k, n - k));
  std::vector<double> speeds;
  for (int i = 0; i <= 10; ++i) speeds.push_back(control_speed(lift, 0.3 * i));
  double mean = 0.0, var = 0.0;
  for (double v : speeds) mean += v / speeds.size();
  for (double v : speeds) var += (v - mean) * (v - mean) / speeds.size();
  CHECK(var < 1e-16);

  // manifold constraint along the way
  for (double t : {0.5, 2.0})
    CHECK(stiefel_residual(stiefel_geodesic_orthogonal(bl.r, bl.s, bl.a, bl.b, t)) < 1e-10);
}

TEST_CASE("sr_qg_projection degenerations and master-formula composition") {
  Rng rng = Rng::stream(31, "qgproj");
  const int n = 4, k = 2;
  const auto bl = random_blocks<double>(rng, n, k);
  const Matrix<double> zk(k, k), znk(n - k, n - k);

  // E=F=0, A=0 -> reduced geodesic with A=0
  CHECK(max_abs_diff(sr_qg_projection(bl.r, bl.s, zk, bl.b, zk, znk, 0.9),
                     Matrix<double>(stiefel_geodesic_reduced(bl.r, zk, bl.b, 0.9) * bl.s.adjoint())) <
        1e-12);

  // E=-A, F=0 -> r e^{t OmegaTilde} I s*, OmegaTilde = [[-A,B],[-B*,0]]
  const Matrix<double> omega_t = assemble_gn(Matrix<double>(-bl.a), bl.b, znk);
  for (double t : {0.4, 1.6}) {
    CHECK(max_abs_diff(sr_qg_projection(bl.r, bl.s, bl.a, bl.b, Matrix<double>(-bl.a), znk, t),
                       Matrix<double>(bl.r * expm(omega_t, t).block(0, 0, n, k) * bl.s.adjoint())) <
          1e-10);
  }

  // random (A,B,E,F): equals the projected master formula on the QG distribution
  const Distribution d(DistKind::QuasiGeodesic, n, k);
  const AlgPair<double> pp(assemble_offdiag(bl.b), bl.a);
  const AlgPair<double> pperp(assemble_diag(bl.e, bl.f), zk);
  const AlgPair<double> g0{bl.r, bl.s};
  for (double t : {0.3, 1.2, 2.7}) {
    const AlgPair<double> g = sr_geodesic(g0, pp, pperp, t, d);
    const Matrix<double> proj = g.gn.block(0, 0, n, k) * g.gk.adjoint();
    CHECK(max_abs_diff(proj, sr_qg_projection(bl.r, bl.s, bl.a, bl.b, bl.e, bl.f, t)) < 1e-10);
  }
}

TEST_CASE("orthogonal-distribution projection equals the master-formula projection") {
  Rng rng = Rng::stream(31, "orth-master");
  auto run = [&](auto tag, int n, int k) {
    using T = decltype(tag);
    const auto bl = random_blocks<T>(rng, n, k);
    const Distribution d(DistKind::Orthogonal, n, k);
    const Matrix<T> znk(n - k, n - k);
    const AlgPair<T> pp(assemble_gn(bl.a, bl.b, znk), -bl.a);
    const AlgPair<T> pk(assemble_diag(bl.c, bl.d), bl.c);
    const AlgPair<T> g0{bl.r, bl.s};
    // closed projection: r exp(t[[A+C,B],[-B*,D]]) I_nk e^{t(A-C)} s*
    const Matrix<T> m = assemble_gn(Matrix<T>(bl.a + bl.c), bl.b, bl.d);
    for (double t : {0.4, 1.3, 2.6}) {
      const AlgPair<T> g = sr_geodesic(g0, pp, pk, t, d);
      const Matrix<T> via_master = g.gn.block(0, 0, n, k) * g.gk.adjoint();
      const Matrix<T> closed = bl.r * expm(m, t).block(0, 0, n, k) *
                               expm(Matrix<T>(bl.a - bl.c), t) * bl.s.adjoint();
      CHECK(max_abs_diff(via_master, closed) < 1e-11);
    }
  };
  run(double{}, 4, 2);
  run(Complex{}, 4, 2);
  run(Quaternion{}, 3, 1);
}

TEST_CASE("quasi-geodesic forms and coincidences") {
  Rng rng = Rng::stream(31, "quasi");
  const int n = 5, k = 2;
  const auto bl = random_blocks<double>(rng, n, k);
  const Matrix<double> zk(k, k), znk(n - k, n - k);

  // A=0, B=0 -> constant
  const Matrix<double> base = bl.r.block(0, 0, n, k) * bl.s.adjoint();
  CHECK(max_abs_diff(quasi_geodesic(bl.r, bl.s, Matrix<double>(k, n - k), zk, 2.0), base) < 1e-14);

  // B=0 -> fiber motion m exp(tY), Y = -s A s*
  const Matrix<double> y = bl.s * bl.a * bl.s.adjoint() * -1.0;
  for (double t : {0.7, 1.9})
    CHECK(max_abs_diff(quasi_geodesic(bl.r, bl.s, Matrix<double>(k, n - k), bl.a, t),
                       Matrix<double>(base * expm(y, t))) < 1e-12);

  // primary form equals exp(tX) m exp(tY), X = r Psi r*
  const Matrix<double> x = bl.r * assemble_offdiag(bl.b) * bl.r.adjoint();
  for (double t : {0.5, 1.4}) {
    const Matrix<double> alt = expm(x, t) * base * expm(y, t);
    CHECK(max_abs_diff(quasi_geodesic(bl.r, bl.s, bl.b, bl.a, t), alt) < 1e-10);
  }

  // coincides with sr_qg_projection at E=F=0 (no sign absorbed)
  for (double t : {0.6, 2.2})
    CHECK(max_abs_diff(quasi_geodesic(bl.r, bl.s, bl.b, bl.a, t),
                       sr_qg_projection(bl.r, bl.s, bl.a, bl.b, zk, znk, t)) < 1e-12);
}

TEST_CASE("quasi-geodesic-distribution geodesics are reduced geodesics at a moved basepoint") {
  Rng rng = Rng::stream(31, "identity52");
  auto run = [&](auto tag, int n, int k) {
    using T = decltype(tag);
    const auto bl = random_blocks<T>(rng, n, k);
    const Matrix<T> omega_t = assemble_gn(Matrix<T>(-bl.a), bl.b, Matrix<T>(n - k, n - k));
    const Matrix<T> se = embed_gk(bl.s, n);
    const Matrix<T> g = bl.r * se.adjoint();
    const Matrix<T> omega = se * omega_t * se.adjoint();
    for (double t : {0.5, 1.8}) {
      const Matrix<T> lhs = bl.r * expm(omega_t, t).block(0, 0, n, k) * bl.s.adjoint();
      const Matrix<T> rhs = g * expm(omega, t).block(0, 0, n, k);
      CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
  };
  run(double{}, 4, 2);
  run(Complex{}, 4, 2);
  run(Quaternion{}, 3, 1);
}

TEST_CASE("ambient geodesics and the Euler-Lagrange residual") {
  Rng rng = Rng::stream(31, "ambient");
  const int n = 3, k = 2;
  auto bl = random_blocks<double>(rng, n, k);
  // keep the generator modest: the h^2 stencil's truncation term scales like
  // the fourth power of the generator norm
  bl.a = bl.a * 0.6;
  bl.b = bl.b * 0.6;
  const Matrix<double> zk(k, k), znk(n - k, n - k);

  // A=0, C=0 -> reduced-metric geodesic with A=0
  for (double t : {0.5, 1.3})
    CHECK(max_abs_diff(ambient_geodesic(bl.r, zk, bl.b, znk, t),
                       stiefel_geodesic_reduced(bl.r, zk, bl.b, t)) < 1e-13);

  // t=0 -> g0 I
  CHECK(max_abs_diff(ambient_geodesic(bl.r, bl.a, bl.b, bl.d, 0.0), bl.r.block(0, 0, n, k)) <
        1e-14);

  // Euler-Lagrange residual: ambient geodesic with C=0 satisfies it (the
  // h=1e-4 stencil floor is ~4*eps/h^2 ~ 4e-8, so 1e-7 is the honest bound)
  auto curve = [&](double t) { return ambient_geodesic(bl.r, bl.a, bl.b, znk, t); };
  for (double t : {0.2, 0.9, 1.7}) CHECK(euler_lagrange_residual(curve, t) < 1e-7);

  // constant curve -> 0
  auto constant = [&](double) { return bl.r.block(0, 0, n, k); };
  CHECK(euler_lagrange_residual(constant, 0.5) == 0.0);

  // a reduced-metric geodesic with |A| = 1 fails the ambient EL equation
  Matrix<double> a_unit = bl.a * (1.0 / trace_norm(bl.a));
  auto red = [&](double t) { return stiefel_geodesic_reduced(bl.r, a_unit, bl.b, t); };
  CHECK(euler_lagrange_residual(red, 0.8) > 1e-3);
}

TEST_CASE("sphere case k=1: mdd + |b|^2 m = 0") {
  Rng rng = Rng::stream(31, "sphere");
  auto run = [&](auto tag, int n) {
    using T = decltype(tag);
    const Matrix<T> g0 = random_group<T>(rng, n);
    const Matrix<T> b = rng.matrix_normal<T>(1, n - 1);
    const double b2 = b.frobenius_norm() * b.frobenius_norm();
    auto curve = [&](double t) {
      return stiefel_geodesic_reduced(g0, Matrix<T>(1, 1), b, t);
    };
    for (double t : {0.3, 1.1}) {
      const double h = kFdSecond;
      const Matrix<T> mdd =
          (curve(t + h) - curve(t) * 2.0 + curve(t - h)) * (1.0 / (h * h));
      CHECK((mdd + curve(t) * b2).max_abs() < 1e-7);
    }
  };
  run(double{}, 3);
  run(Complex{}, 3);
  run(Quaternion{}, 3);
}

TEST_CASE("horizontal lift ODE: fixed point, closed-form agreement, RK4 order") {
  Rng rng = Rng::stream(31, "ode");
  const int n = 4, k = 2;

  // all-zero data: g stays at g0
  const Matrix<double> g0 = random_group<double>(rng, n);
  const Matrix<double> zk(k, k), znk(n - k, n - k), zb(k, n - k);
  CHECK(max_abs_diff(horizontal_lift_ode(g0, zk, zk, zb, znk, 1.0, 50), g0) < 1e-14);
  CHECK_THROWS_AS(horizontal_lift_ode(g0, zk, zk, zb, znk, 1.0, 0), std::invalid_argument);

  const auto bl = random_blocks<double>(rng, n, k);
  const Matrix<double> at = bl.s * bl.a * bl.s.adjoint();
  const Matrix<double> et = bl.s * bl.e * bl.s.adjoint();
  const Matrix<double> bt = bl.s * bl.b;

  // steps = 1000 matches the closed form at t = 1 to 1e-9
  const Matrix<double> want = qg_lift_closed_form(g0, at, et, bt, bl.f, 1.0);
  CHECK(max_abs_diff(horizontal_lift_ode(g0, at, et, bt, bl.f, 1.0, 1000), want) < 1e-9);

  // error scales as O(steps^-4): each doubling divides the error by ~16
  double prev = 0.0;
  for (int steps : {200, 400, 800}) {
    const double err = max_abs_diff(horizontal_lift_ode(g0, at, et, bt, bl.f, 1.0, steps), want);
    if (prev > 0.0) {
      const double ratio = prev / err;
      CHECK(ratio > 8.0);
      CHECK(ratio < 32.0);
    }
    prev = err;
  }

  // with Et = -At, F = 0 the Delta factor collapses to I and the closed form
  // is the reduced geodesic generated by [[Et, Bt], [-Bt*, 0]]
  const Matrix<double> m_closed =
      qg_lift_closed_form(g0, at, Matrix<double>(-at), bt, znk, 0.9).block(0, 0, n, k);
  CHECK(max_abs_diff(m_closed, stiefel_geodesic_reduced(g0, Matrix<double>(-at), bt, 0.9)) <
        1e-11);
}

TEST_CASE("reduced geodesic matches the ODE oracle projection") {
  Rng rng = Rng::stream(31, "ode-vs-reduced");
  const int n = 4, k = 2;
  const Matrix<double> g0 = random_group<double>(rng, n);
  const Matrix<double> a = random_skew<double>(rng, k);
  const Matrix<double> b = rng.matrix_normal<double>(k, n - k);
  // At = -A, Et = A reproduces Omega = [[A,B],[-B*,0]] in the closed form
  const Matrix<double> g1 =
      horizontal_lift_ode(g0, Matrix<double>(-a), a, b, Matrix<double>(n - k, n - k), 1.0, 2000);
  CHECK(max_abs_diff(g1.block(0, 0, n, k), stiefel_geodesic_reduced(g0, a, b, 1.0)) < 1e-8);
}

TEST_CASE("two horizontal lifts of one curve differ by a constant fiber element") {
  Rng rng = Rng::stream(31, "fiber");
  const int n = 4, k = 2;
  const Distribution d(DistKind::Reduced, n, k);
  const Matrix<double> g0 = random_group<double>(rng, n);
  const Matrix<double> x = random_skew<double>(rng, n);
  const Matrix<double> y = random_skew<double>(rng, n);

  // a deliberately non-horizontal curve c(t) = g0 e^{tX} e^{tY} with control
  // U(t) = e^{-tY} X e^{tY} + Y
  auto curve = [&](double t) { return Matrix<double>(g0 * expm(x, t) * expm(y, t)); };
  auto control = [&](double t) {
    const Matrix<double> ey = expm(y, t);
    return Matrix<double>(ey.adjoint() * x * ey + y);
  };

  // fiber element h in K = diag(I_k, H)
  const Matrix<double> h0 =
      embed_gk(Matrix<double>::identity(k), n) * 0.0 +
      assemble_diag(Matrix<double>::identity(k), random_group<double>(rng, n - k));

  const std::vector<double> ts{0.0, 0.4, 0.8, 1.2};
  const auto corr1 = fiber_correction(Matrix<double>::identity(n), control, d, ts);
  const auto corr2 = fiber_correction(h0, control, d, ts);

  const Matrix<double> delta0 = corr1[0].adjoint() * corr2[0];
  for (size_t i = 0; i < ts.size(); ++i) {
    const Matrix<double> lift1 = curve(ts[i]) * corr1[i];
    const Matrix<double> lift2 = curve(ts[i]) * corr2[i];
    // both project to the same Stiefel curve
    CHECK(max_abs_diff(lift1.block(0, 0, n, k), curve(ts[i]).block(0, 0, n, k)) < 1e-9);
    CHECK(max_abs_diff(lift2.block(0, 0, n, k), curve(ts[i]).block(0, 0, n, k)) < 1e-9);
    // they differ by a constant element of K
    CHECK(max_abs_diff(Matrix<double>(lift1.adjoint() * lift2),
                       Matrix<double>(corr1[i].adjoint() * corr2[i])) < 1e-12);
    CHECK(max_abs_diff(Matrix<double>(corr1[i].adjoint() * corr2[i]), delta0) < 1e-10);
  }

  // and the corrected curves are horizontal: k-part of the control vanishes
  for (double t : {0.2, 0.6, 1.0}) {
    const double h = 1e-6;
    const auto cp = fiber_correction(Matrix<double>::identity(n), control, d, {t + h});
    const auto cm = fiber_correction(Matrix<double>::identity(n), control, d, {t - h});
    const Matrix<double> gp = curve(t + h) * cp[0];
    const Matrix<double> gm = curve(t - h) * cm[0];
    const auto c0 = fiber_correction(Matrix<double>::identity(n), control, d, {t});
    const Matrix<double> gmid = curve(t) * c0[0];
    const Matrix<double> u = gmid.adjoint() * ((gp - gm) * (1.0 / (2.0 * h)));
    CHECK(decompose(AlgPair<double>(u), d).k.max_abs() < 1e-5);
  }
}
