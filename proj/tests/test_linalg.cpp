#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stgeo/expm.hpp"
#include "stgeo/lie.hpp"
#include "stgeo/rng.hpp"

using namespace stgeo;

namespace {

// Independent truncated-series oracle: scale until the norm is small, sum 30
// Taylor terms, square back. Shares no code with the Pade path.
template <typename T>
Matrix<T> expm_taylor(Matrix<T> m) {
  int s = 0;
  double nrm = m.one_norm();
  while (nrm > 0.25) {
    nrm *= 0.5;
    ++s;
  }
  m = m * std::ldexp(1.0, -s);
  Matrix<T> sum = Matrix<T>::identity(m.rows()) + m;
  Matrix<T> term = m;
  for (int j = 2; j <= 30; ++j) {
    term = term * m * (1.0 / j);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

template <typename T>
void check_group_membership(int n, int trials, const char* label) {
  Rng rng = Rng::stream(11, label);
  for (int trial = 0; trial < trials; ++trial) {
    const Matrix<T> m = random_skew<T>(rng, n);
    const Matrix<T> e = expm(m);
    CHECK((e.adjoint() * e - Matrix<T>::identity(n)).frobenius_norm() <= 1e-10);
  }
}

}  // namespace

TEST_CASE("adjoint basics") {
  CHECK(max_abs_diff(Matrix<double>::identity(4).adjoint(), Matrix<double>::identity(4)) == 0.0);

  Matrix<Quaternion> qi(1, 1);
  qi(0, 0) = Quaternion::unit_i();
  CHECK(abs(qi.adjoint()(0, 0) + Quaternion::unit_i()) == 0.0);

  Rng rng = Rng::stream(11, "adjoint");
  const Matrix<Complex> m = rng.matrix_normal<Complex>(3, 2);
  CHECK(max_abs_diff(m.adjoint().adjoint(), m) == 0.0);
  const Matrix<Complex> p = rng.matrix_normal<Complex>(2, 4);
  CHECK(max_abs_diff(Matrix<Complex>((m * p).adjoint()), Matrix<Complex>(p.adjoint() * m.adjoint())) <
        1e-14);
}

TEST_CASE("trace form on so(3) generators, by hand") {
  Matrix<double> a(3, 3);  // A_{12} = E_12 - E_21
  a(0, 1) = 1.0;
  a(1, 0) = -1.0;
  // A^2 = diag(-1,-1,0), so -Tr(A^2)/2 = 1
  CHECK(trace_form(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(trace_form(a, Matrix<double>(3, 3)) == 0.0);
}

TEST_CASE("trace form rejects bad input") {
  Matrix<double> a(3, 3), b(2, 2);
  CHECK_THROWS_AS((void)trace_form(a, b), std::invalid_argument);
  Matrix<double> notskew = Matrix<double>::identity(3);
  CHECK_THROWS_AS((void)trace_form(notskew, notskew), std::invalid_argument);
}

TEST_CASE("trace form Ad-invariance identity on random skew triples") {
  Rng rng = Rng::stream(11, "adinv");
  auto run = [&](auto tag) {
    using T = decltype(tag);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix<T> a = random_skew<T>(rng, 4);
      const Matrix<T> b = random_skew<T>(rng, 4);
      const Matrix<T> c = random_skew<T>(rng, 4);
      CHECK(std::abs(trace_form(a, bracket(b, c)) - trace_form(b, bracket(c, a))) < 1e-12);
    }
  };
  run(double{});
  run(Complex{});
  run(Quaternion{});
}

TEST_CASE("sp(n) trace form is real-valued") {
  Rng rng = Rng::stream(11, "spreal");
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix<Quaternion> a = random_skew<Quaternion>(rng, 3);
    const Matrix<Quaternion> b = random_skew<Quaternion>(rng, 3);
    const Matrix<Quaternion> ab = a * b;
    const Quaternion t = (ab + ab.adjoint()).trace();
    CHECK(std::abs(t.q1) + std::abs(t.q2) + std::abs(t.q3) < 1e-13);
    // and equals the -1/2 Re Tr(AB) normalization
    CHECK(trace_form(a, b) ==
          doctest::Approx(-0.5 * (a * b).trace().q0).epsilon(1e-13));
  }
}

TEST_CASE("expm basics") {
  CHECK(max_abs_diff(expm(Matrix<double>(3, 3)), Matrix<double>::identity(3)) == 0.0);

  // 2x2 rotation closed form
  Matrix<double> j(2, 2);
  j(0, 1) = 1.0;
  j(1, 0) = -1.0;
  for (double t : {0.1, 1.0, -2.5, 7.0}) {
    const Matrix<double> e = expm(j, t);
    CHECK(e(0, 0) == doctest::Approx(std::cos(t)).epsilon(1e-14));
    CHECK(e(0, 1) == doctest::Approx(std::sin(t)).epsilon(1e-14));
    CHECK(e(1, 0) == doctest::Approx(-std::sin(t)).epsilon(1e-14));
    CHECK(e(1, 1) == doctest::Approx(std::cos(t)).epsilon(1e-14));
  }

  // 0x0 and empty-block edge cases stay well-formed
  CHECK(expm(Matrix<double>(0, 0)).rows() == 0);
}

TEST_CASE("expm agrees with the 30-term Taylor oracle") {
  Rng rng = Rng::stream(11, "taylor");
  auto run = [&](auto tag, int n) {
    using T = decltype(tag);
    for (int trial = 0; trial < 25; ++trial) {
      Matrix<T> m = rng.matrix_normal<T>(n, n);
      const double nrm = m.one_norm();
      if (nrm > 1.0) m = m * (1.0 / nrm);
      CHECK(max_abs_diff(expm(m), expm_taylor(m)) < 1e-12);
    }
  };
  run(double{}, 4);
  run(Complex{}, 4);
  run(Quaternion{}, 3);
}

TEST_CASE("expm lands in the group for skew input") {
  check_group_membership<double>(3, 200, "grp-r3");
  check_group_membership<double>(4, 200, "grp-r4");
  check_group_membership<double>(5, 200, "grp-r5");
  check_group_membership<Complex>(3, 200, "grp-c3");
  check_group_membership<Complex>(4, 200, "grp-c4");
  check_group_membership<Complex>(5, 200, "grp-c5");
  check_group_membership<Quaternion>(2, 200, "grp-q2");
  check_group_membership<Quaternion>(3, 100, "grp-q3");
}

TEST_CASE("expm of su(n) input has unit determinant") {
  Rng rng = Rng::stream(11, "sudet");
  for (int n : {3, 4, 5}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix<Complex> m = random_skew<Complex>(rng, n);
      CHECK(std::abs(std::abs(determinant(expm(m))) - 1.0) <= 1e-9);
      CHECK(std::abs(determinant(expm(m)) - Complex(1.0)) <= 1e-9);
    }
  }
}

TEST_CASE("expm commutes with adjoints and unitary conjugation") {
  Rng rng = Rng::stream(11, "exp-id");
  auto run = [&](auto tag, int n) {
    using T = decltype(tag);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix<T> m = random_skew<T>(rng, n);
      // exp(M)* = exp(M*)
      CHECK(max_abs_diff(expm(m).adjoint(), expm(Matrix<T>(m.adjoint()))) < 1e-12);
      // exp(g M g*) = g exp(M) g*
      const Matrix<T> g = random_group<T>(rng, n);
      CHECK(max_abs_diff(expm(Matrix<T>(g * m * g.adjoint())),
                         Matrix<T>(g * expm(m) * g.adjoint())) < 1e-11);
    }
  };
  run(double{}, 4);
  run(Complex{}, 4);
  run(Quaternion{}, 3);
}

TEST_CASE("one-parameter subgroup property") {
  Rng rng = Rng::stream(11, "oneparam");
  auto run = [&](auto tag, int n) {
    using T = decltype(tag);
    for (int trial = 0; trial < 25; ++trial) {
      const Matrix<T> m = random_skew<T>(rng, n);
      const double s = rng.uniform(-2.0, 2.0), t = rng.uniform(-2.0, 2.0);
      CHECK(max_abs_diff(expm(m, s + t), Matrix<T>(expm(m, s) * expm(m, t))) < 1e-10);
    }
  };
  run(double{}, 4);
  run(Complex{}, 4);
  run(Quaternion{}, 3);
}

TEST_CASE("quaternion expm equals the quaternion-arithmetic Taylor series") {
  Rng rng = Rng::stream(11, "quat-exp");
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix<Quaternion> m = random_skew<Quaternion>(rng, 3);
    CHECK(max_abs_diff(expm(m), expm_taylor(m)) < 1e-12);
  }
}

TEST_CASE("assemble_gn") {
  // zero blocks -> zero matrix
  CHECK(assemble_gn(Matrix<double>(2, 2), Matrix<double>(2, 1), Matrix<double>(1, 1)).max_abs() ==
        0.0);

  // k=1, n=3, B=(1,0) direct placement
  Matrix<double> b(1, 2);
  b(0, 0) = 1.0;
  Matrix<double> m = assemble_gn(Matrix<double>(1, 1), b, Matrix<double>(2, 2));
  Matrix<double> want(3, 3);
  want(0, 1) = 1.0;
  want(1, 0) = -1.0;
  CHECK(max_abs_diff(m, want) == 0.0);

  // assemble-then-split round trip on a seeded corpus
  Rng rng = Rng::stream(11, "assemble");
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix<Complex> a = random_skew<Complex>(rng, 2);
    const Matrix<Complex> bb = rng.matrix_normal<Complex>(2, 3);
    const Matrix<Complex> d = random_skew<Complex>(rng, 3);
    const Matrix<Complex> g = assemble_gn(a, bb, d);
    CHECK(max_abs_diff(g.block(0, 0, 2, 2), a) == 0.0);
    CHECK(max_abs_diff(g.block(0, 2, 2, 3), bb) == 0.0);
    CHECK(max_abs_diff(g.block(2, 2, 3, 3), d) == 0.0);
    CHECK(max_abs_diff(g.block(2, 0, 3, 2), Matrix<Complex>(-bb.adjoint())) == 0.0);
  }

  // non-skew blocks rejected
  CHECK_THROWS_AS(assemble_gn(Matrix<double>::identity(2), Matrix<double>(2, 1),
                              Matrix<double>(1, 1)),
                  std::invalid_argument);
  // su gauge: canceling traces pass, uncanceled fail
  Matrix<Complex> ia(1, 1), id(1, 1);
  ia(0, 0) = Complex(0, 1);
  id(0, 0) = Complex(0, -1);
  CHECK_NOTHROW(assemble_gn(ia, Matrix<Complex>(1, 1), id));
  CHECK_THROWS_AS(assemble_gn(ia, Matrix<Complex>(1, 1), Matrix<Complex>(1, 1)),
                  std::invalid_argument);
}

TEST_CASE("frobenius norm over H uses the quaternion modulus") {
  Matrix<Quaternion> m(1, 2);
  m(0, 0) = {1, 1, 1, 1};
  m(0, 1) = {0, 3, 0, 4};
  CHECK(m.frobenius_norm() == doctest::Approx(std::sqrt(4.0 + 25.0)).epsilon(1e-15));
}
