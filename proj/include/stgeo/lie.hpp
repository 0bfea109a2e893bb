#pragma once

#include <string>
#include <vector>

#include "stgeo/expm.hpp"
#include "stgeo/matrix.hpp"
#include "stgeo/numeric.hpp"
#include "stgeo/rng.hpp"

namespace stgeo {

// The three horizontal distributions on G_n (reduced) and G_n x G_k
// (orthogonal, quasi-geodesic). GrassmannSigma is the symmetric-pair split of
// g_n into off-diagonal (p) and block-diagonal (k) parts; it is not a Stiefel
// distribution but reuses the same projection machinery.
enum class DistKind { Reduced, Orthogonal, QuasiGeodesic, GrassmannSigma };

inline const char* dist_name(DistKind d) {
  switch (d) {
    case DistKind::Reduced: return "reduced";
    case DistKind::Orthogonal: return "orthogonal";
    case DistKind::QuasiGeodesic: return "quasigeodesic";
    case DistKind::GrassmannSigma: return "grassmann";
  }
  return "?";
}

inline DistKind dist_from_name(const std::string& s) {
  if (s == "reduced") return DistKind::Reduced;
  if (s == "orthogonal") return DistKind::Orthogonal;
  if (s == "quasigeodesic") return DistKind::QuasiGeodesic;
  if (s == "grassmann") return DistKind::GrassmannSigma;
  throw std::invalid_argument("unknown distribution: " + s);
}

struct Distribution {
  DistKind kind = DistKind::Reduced;
  int n = 0, k = 0;

  Distribution() = default;
  Distribution(DistKind d, int n_, int k_) : kind(d), n(n_), k(k_) {
    if (k < 1 || k > n) throw std::invalid_argument("distribution requires 1 <= k <= n");
  }
  // Carrier is g_n alone for Reduced/GrassmannSigma, g_n x g_k otherwise.
  bool product_carrier() const {
    return kind == DistKind::Orthogonal || kind == DistKind::QuasiGeodesic;
  }
};

/// Element of g_n x g_k (or of g_n alone, with an empty 0x0 second slot).
/// All arithmetic is componentwise; trace forms add across slots.
template <typename T>
struct AlgPair {
  Matrix<T> gn, gk;

  AlgPair() = default;
  explicit AlgPair(Matrix<T> first) : gn(std::move(first)), gk(0, 0) {}
  AlgPair(Matrix<T> first, Matrix<T> second) : gn(std::move(first)), gk(std::move(second)) {}

  friend AlgPair operator+(const AlgPair& x, const AlgPair& y) {
    return {x.gn + y.gn, x.gk + y.gk};
  }
  friend AlgPair operator-(const AlgPair& x, const AlgPair& y) {
    return {x.gn - y.gn, x.gk - y.gk};
  }
  friend AlgPair operator-(const AlgPair& x) { return {-x.gn, -x.gk}; }
  friend AlgPair operator*(const AlgPair& x, double s) { return {x.gn * s, x.gk * s}; }
  double max_abs() const { return std::max(gn.max_abs(), gk.max_abs()); }
};

template <typename T>
Matrix<T> bracket(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
    throw std::invalid_argument("bracket: shape mismatch");
  return x * y - y * x;
}

template <typename T>
AlgPair<T> bracket(const AlgPair<T>& x, const AlgPair<T>& y) {
  return {bracket(x.gn, y.gn), bracket(x.gk, y.gk)};
}

/// Ad-invariant trace form, positive definite on skew-adjoint matrices:
/// -1/2 Tr(XY) on so/su (real for skew-Hermitian arguments), and
/// -1/4 Tr(XY + (XY)*) on sp, whose trace is real by construction.
template <typename T>
double trace_form(const Matrix<T>& x, const Matrix<T>& y, double skew_tol = kTolSkew) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
    throw std::invalid_argument("trace_form: dimension mismatch");
  if (skew_tol > 0) {
    if (skew_residual(x) > skew_tol || skew_residual(y) > skew_tol)
      throw std::invalid_argument("trace_form: arguments must be skew-adjoint");
  }
  const T t = (x * y).trace();
  if constexpr (scalar_traits<T>::algebra == Algebra::Quaternion) {
    return -0.25 * (scalar_traits<T>::re(t) + scalar_traits<T>::re(scalar_traits<T>::conj(t)));
  } else {
    return -0.5 * scalar_traits<T>::re(t);
  }
}

template <typename T>
double trace_form(const AlgPair<T>& x, const AlgPair<T>& y, double skew_tol = kTolSkew) {
  double s = 0.0;
  if (x.gn.rows() > 0) s += trace_form(x.gn, y.gn, skew_tol);
  if (x.gk.rows() > 0) s += trace_form(x.gk, y.gk, skew_tol);
  return s;
}

template <typename T>
double trace_norm(const Matrix<T>& x) {
  return std::sqrt(std::max(0.0, trace_form(x, x)));
}
template <typename T>
double trace_norm(const AlgPair<T>& x) {
  return std::sqrt(std::max(0.0, trace_form(x, x)));
}

// ---------------------------------------------------------------------------
// Random elements

/// Random skew-adjoint n x n matrix; traceless over C (su gauge).
template <typename T>
Matrix<T> random_skew(Rng& rng, int n) {
  Matrix<T> r = rng.matrix_normal<T>(n, n);
  Matrix<T> m = (r - r.adjoint()) * 0.5;
  if constexpr (scalar_traits<T>::algebra == Algebra::Complex) {
    if (n > 0) {
      const Complex mean = m.trace() * (1.0 / n);
      for (int i = 0; i < n; ++i) m(i, i) -= mean;
    }
  }
  return m;
}

template <typename T>
Matrix<T> random_group(Rng& rng, int n) {
  return expm(random_skew<T>(rng, n));
}

// ---------------------------------------------------------------------------
// Block assembly

/// [[A, B], [-B*, D]] in g_n; A is k x k, B is k x (n-k), D is (n-k) x (n-k).
/// Over C the su gauge demands Tr(A) + Tr(D) = 0.
template <typename T>
Matrix<T> assemble_gn(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& d) {
  const int k = a.rows(), nk = d.rows();
  if (a.cols() != k || d.cols() != nk || b.rows() != k || b.cols() != nk)
    throw std::invalid_argument("assemble_gn: inconsistent block shapes");
  if (k > 0) require_skew(a);
  if (nk > 0) require_skew(d);
  if constexpr (scalar_traits<T>::algebra == Algebra::Complex) {
    if (std::abs(a.trace() + d.trace()) > 1e-12)
      throw std::invalid_argument("assemble_gn: su(n) gauge requires Tr(A)+Tr(D) = 0");
  }
  Matrix<T> m(k + nk, k + nk);
  m.set_block(0, 0, a);
  m.set_block(0, k, b);
  m.set_block(k, 0, -b.adjoint());
  m.set_block(k, k, d);
  return m;
}

/// [[0, B], [-B*, 0]]
template <typename T>
Matrix<T> assemble_offdiag(const Matrix<T>& b) {
  const int k = b.rows(), nk = b.cols();
  Matrix<T> m(k + nk, k + nk);
  m.set_block(0, k, b);
  m.set_block(k, 0, -b.adjoint());
  return m;
}

/// diag(E, F)
template <typename T>
Matrix<T> assemble_diag(const Matrix<T>& e, const Matrix<T>& f) {
  if (e.rows() != e.cols() || f.rows() != f.cols())
    throw std::invalid_argument("assemble_diag: blocks must be square");
  Matrix<T> m(e.rows() + f.rows(), e.rows() + f.rows());
  m.set_block(0, 0, e);
  m.set_block(e.rows(), e.rows(), f);
  return m;
}

/// G_k -> G_n embedding s |-> diag(S, I_{n-k}); the single code path used
/// everywhere an s acts inside G_n.
template <typename T>
Matrix<T> embed_gk(const Matrix<T>& s, int n) {
  if (s.rows() != s.cols() || s.rows() > n) throw std::invalid_argument("embed_gk: bad shape");
  Matrix<T> m = Matrix<T>::identity(n);
  m.set_block(0, 0, s);
  return m;
}

// ---------------------------------------------------------------------------
// Bases

/// Real basis of g_n = so(n)/su(n)/sp(n), fixed ordering: real antisymmetric
/// generators A_{ij} = E_ij - E_ji (i<j) first, then per imaginary unit the
/// scaled symmetric off-diagonal generators u(E_ij + E_ji) (i<j) and the
/// diagonal ones (traceless differences for su, u E_jj for sp).
template <typename T>
std::vector<Matrix<T>> algebra_basis(int n) {
  std::vector<Matrix<T>> basis;
  auto unit_at = [&](int i, int j, T v) {
    Matrix<T> m(n, n);
    m(i, j) = v;
    return m;
  };
  const T one = scalar_traits<T>::from_real(1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) basis.push_back(unit_at(i, j, one) - unit_at(j, i, one));
  if constexpr (scalar_traits<T>::algebra == Algebra::Complex) {
    const Complex iu(0.0, 1.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) basis.push_back(unit_at(i, j, iu) + unit_at(j, i, iu));
    for (int j = 0; j + 1 < n; ++j) basis.push_back(unit_at(j, j, iu) - unit_at(j + 1, j + 1, iu));
  } else if constexpr (scalar_traits<T>::algebra == Algebra::Quaternion) {
    const Quaternion units[3] = {Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()};
    for (const Quaternion& u : units)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) basis.push_back(unit_at(i, j, u) + unit_at(j, i, u));
    for (const Quaternion& u : units)
      for (int j = 0; j < n; ++j) basis.push_back(unit_at(j, j, u));
  }
  return basis;
}

template <typename T>
int algebra_dim(int n) {
  switch (scalar_traits<T>::algebra) {
    case Algebra::Real: return n * (n - 1) / 2;
    case Algebra::Complex: return n * n - 1;
    case Algebra::Quaternion: return n * (2 * n + 1);
  }
  return 0;
}

namespace detail {

template <typename T>
std::vector<Matrix<T>> b_block_units(int k, int nk) {
  std::vector<Matrix<T>> out;
  double re[4] = {0, 0, 0, 0};
  for (int u = 0; u < scalar_traits<T>::real_dim; ++u) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < nk; ++j) {
        Matrix<T> b(k, nk);
        re[u] = 1.0;
        b(i, j) = scalar_traits<T>::from_reals(re);
        re[u] = 0.0;
        out.push_back(b);
      }
  }
  return out;
}

template <typename T>
Matrix<T> embed_topleft(const Matrix<T>& a, int n) {
  Matrix<T> m(n, n);
  m.set_block(0, 0, a);
  return m;
}
template <typename T>
Matrix<T> embed_bottomright(const Matrix<T>& d, int n) {
  Matrix<T> m(n, n);
  m.set_block(n - d.rows(), n - d.rows(), d);
  return m;
}

// Trace-canceling center direction i*diag((n-k) I_k, -k I_{n-k}) needed over C
// so that p + p_perp is all of su(n) (resp. su(n) x su(k)); absent over R/H.
inline Matrix<Complex> su_center_diag(int n, int k) {
  Matrix<Complex> m(n, n);
  for (int i = 0; i < k; ++i) m(i, i) = Complex(0.0, double(n - k));
  for (int i = k; i < n; ++i) m(i, i) = Complex(0.0, -double(k));
  return m;
}

}  // namespace detail

/// Basis of the horizontal space p for the distribution.
template <typename T>
std::vector<AlgPair<T>> p_basis(const Distribution& d) {
  const int n = d.n, k = d.k, nk = n - k;
  std::vector<AlgPair<T>> out;
  const auto gk_basis = algebra_basis<T>(k);
  const auto b_units = detail::b_block_units<T>(k, nk);
  switch (d.kind) {
    case DistKind::Reduced:
      for (const auto& a : gk_basis)
        out.push_back(AlgPair<T>(detail::embed_topleft(a, n)));
      for (const auto& b : b_units) out.push_back(AlgPair<T>(assemble_offdiag(b)));
      break;
    case DistKind::Orthogonal:
      for (const auto& a : gk_basis)
        out.push_back(AlgPair<T>(detail::embed_topleft(a, n), -a));
      for (const auto& b : b_units)
        out.push_back(AlgPair<T>(assemble_offdiag(b), Matrix<T>(k, k)));
      break;
    case DistKind::QuasiGeodesic:
      for (const auto& b : b_units)
        out.push_back(AlgPair<T>(assemble_offdiag(b), Matrix<T>(k, k)));
      for (const auto& a : gk_basis) out.push_back(AlgPair<T>(Matrix<T>(n, n), a));
      break;
    case DistKind::GrassmannSigma:
      for (const auto& b : b_units) out.push_back(AlgPair<T>(assemble_offdiag(b)));
      break;
  }
  return out;
}

/// Basis of the isotropy algebra k.
template <typename T>
std::vector<AlgPair<T>> k_basis(const Distribution& d) {
  const int n = d.n, k = d.k;
  std::vector<AlgPair<T>> out;
  const auto gk_b = algebra_basis<T>(k);
  const auto gnk_b = algebra_basis<T>(n - k);
  switch (d.kind) {
    case DistKind::Reduced:
      for (const auto& dd : gnk_b) out.push_back(AlgPair<T>(detail::embed_bottomright(dd, n)));
      break;
    case DistKind::Orthogonal:
    case DistKind::QuasiGeodesic:
      for (const auto& c : gk_b)
        out.push_back(AlgPair<T>(detail::embed_topleft(c, n), c));
      for (const auto& dd : gnk_b)
        out.push_back(AlgPair<T>(detail::embed_bottomright(dd, n), Matrix<T>(k, k)));
      break;
    case DistKind::GrassmannSigma:
      for (const auto& c : gk_b) out.push_back(AlgPair<T>(detail::embed_topleft(c, n)));
      for (const auto& dd : gnk_b) out.push_back(AlgPair<T>(detail::embed_bottomright(dd, n)));
      // The sigma-split isotropy algebra s(u(k)+u(n-k)) keeps one center
      // direction inside su(n); the Stiefel isotropy algebras do not.
      if constexpr (scalar_traits<T>::algebra == Algebra::Complex) {
        if (k < n && k > 0) out.push_back(AlgPair<T>(detail::su_center_diag(n, k)));
      }
      break;
  }
  return out;
}

/// Basis of the trace-form orthogonal complement of p. For Reduced and
/// Orthogonal this is k (p = k^perp); for QuasiGeodesic it is the space of
/// block-diagonal pairs ([[E,0],[0,F]], 0). Over C one trace-canceling center
/// generator completes each basis (the su trace constraint removes one
/// dimension from the block sets, and nondegeneracy demands it back).
template <typename T>
std::vector<AlgPair<T>> pperp_basis(const Distribution& d) {
  const int n = d.n, k = d.k;
  std::vector<AlgPair<T>> out;
  switch (d.kind) {
    case DistKind::Reduced:
    case DistKind::Orthogonal:
    case DistKind::GrassmannSigma:
      out = k_basis<T>(d);
      break;
    case DistKind::QuasiGeodesic: {
      for (const auto& e : algebra_basis<T>(k))
        out.push_back(AlgPair<T>(detail::embed_topleft(e, n), Matrix<T>(k, k)));
      for (const auto& f : algebra_basis<T>(n - k))
        out.push_back(AlgPair<T>(detail::embed_bottomright(f, n), Matrix<T>(k, k)));
      break;
    }
  }
  if constexpr (scalar_traits<T>::algebra == Algebra::Complex) {
    if (k < n && d.kind != DistKind::GrassmannSigma) {
      Matrix<Complex> z = detail::su_center_diag(n, k);
      if (d.product_carrier())
        out.push_back(AlgPair<T>(z, Matrix<T>(k, k)));
      else
        out.push_back(AlgPair<T>(z));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition X = p_part + k_part by block shape; orthogonal under the
// trace form for Reduced/Orthogonal, oblique for QuasiGeodesic.

template <typename T>
struct PkSplit {
  AlgPair<T> p, k;
};

template <typename T>
PkSplit<T> decompose(const AlgPair<T>& x, const Distribution& d) {
  const int n = d.n, k = d.k, nk = n - k;
  auto expect = [&](bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(std::string("decompose: ") + msg);
  };
  expect(x.gn.rows() == n && x.gn.cols() == n, "g_n slot has wrong shape");
  if (d.product_carrier())
    expect(x.gk.rows() == k && x.gk.cols() == k, "g_k slot has wrong shape");
  else
    expect(x.gk.rows() == 0 && x.gk.cols() == 0, "unexpected g_k slot for this distribution");

  const Matrix<T> m11 = x.gn.block(0, 0, k, k);
  const Matrix<T> m12 = x.gn.block(0, k, k, nk);
  const Matrix<T> m22 = x.gn.block(k, k, nk, nk);
  PkSplit<T> s;
  switch (d.kind) {
    case DistKind::Reduced: {
      Matrix<T> p(n, n);
      p.set_block(0, 0, m11);
      p.set_block(0, k, m12);
      p.set_block(k, 0, x.gn.block(k, 0, nk, k));
      s.p = AlgPair<T>(p);
      Matrix<T> kk(n, n);
      kk.set_block(k, k, m22);
      s.k = AlgPair<T>(kk);
      break;
    }
    case DistKind::GrassmannSigma: {
      Matrix<T> p(n, n);
      p.set_block(0, k, m12);
      p.set_block(k, 0, x.gn.block(k, 0, nk, k));
      s.p = AlgPair<T>(p);
      s.k = AlgPair<T>(x.gn - p);
      break;
    }
    case DistKind::Orthogonal: {
      // p = ([[A,B],[-B*,0]], -A), k = ([[C,0],[0,D]], C) with
      // A = (M11 - N)/2, C = (M11 + N)/2, D = M22, B = M12.
      const Matrix<T> a = (m11 - x.gk) * 0.5;
      const Matrix<T> c = (m11 + x.gk) * 0.5;
      Matrix<T> pg(n, n);
      pg.set_block(0, 0, a);
      pg.set_block(0, k, m12);
      pg.set_block(k, 0, x.gn.block(k, 0, nk, k));
      s.p = AlgPair<T>(pg, -a);
      Matrix<T> kg(n, n);
      kg.set_block(0, 0, c);
      kg.set_block(k, k, m22);
      s.k = AlgPair<T>(kg, c);
      break;
    }
    case DistKind::QuasiGeodesic: {
      // (M, N) = ((offdiag M), N - M11) + (diag(M11, M22), M11)
      Matrix<T> pg(n, n);
      pg.set_block(0, k, m12);
      pg.set_block(k, 0, x.gn.block(k, 0, nk, k));
      s.p = AlgPair<T>(pg, x.gk - m11);
      Matrix<T> kg(n, n);
      kg.set_block(0, 0, m11);
      kg.set_block(k, k, m22);
      s.k = AlgPair<T>(kg, m11);
      break;
    }
  }
  return s;
}

template <typename T>
AlgPair<T> p_project(const AlgPair<T>& x, const Distribution& d) {
  return decompose(x, d).p;
}

/// Residual of p-membership (block-shape test per the distribution).
template <typename T>
double p_membership_residual(const AlgPair<T>& x, const Distribution& d) {
  return (x - decompose(x, d).p).max_abs();
}

/// Residual of p_perp-membership (block-shape test; over C the diagonal
/// scalar/center components are legal p_perp directions).
template <typename T>
double pperp_membership_residual(const AlgPair<T>& x, const Distribution& d) {
  const int n = d.n, k = d.k, nk = n - k;
  const Matrix<T> m12 = x.gn.block(0, k, k, nk);
  double r = m12.max_abs();
  auto scalar_dev = [](const Matrix<T>& m) {  // distance from span{I}
    if (m.rows() == 0) return 0.0;
    Matrix<T> s = m;
    const T mean = m.trace() * (1.0 / m.rows());
    for (int i = 0; i < m.rows(); ++i) s(i, i) = s(i, i) - mean;
    return s.max_abs();
  };
  switch (d.kind) {
    case DistKind::GrassmannSigma:
      break;  // the sigma complement is every block-diagonal element
    case DistKind::Reduced: {
      const Matrix<T> m11 = x.gn.block(0, 0, k, k);
      if constexpr (scalar_traits<T>::algebra == Algebra::Complex)
        r = std::max(r, scalar_dev(m11));
      else
        r = std::max(r, m11.max_abs());
      break;
    }
    case DistKind::Orthogonal: {
      const Matrix<T> diff = x.gn.block(0, 0, k, k) - x.gk;
      if constexpr (scalar_traits<T>::algebra == Algebra::Complex)
        r = std::max(r, scalar_dev(diff));
      else
        r = std::max(r, diff.max_abs());
      break;
    }
    case DistKind::QuasiGeodesic:
      r = std::max(r, x.gk.max_abs());
      break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Group actions on Stiefel points

/// pi(g) = g I_nk (reduced) or r I_nk s* (full action); columns orthonormal.
template <typename T>
Matrix<T> stiefel_project(const Matrix<T>& g, int k) {
  require_unitary(g);
  return g.block(0, 0, g.rows(), k);
}
template <typename T>
Matrix<T> stiefel_project(const Matrix<T>& r, const Matrix<T>& s, int k) {
  require_unitary(r);
  require_unitary(s);
  return r.block(0, 0, r.rows(), k) * s.adjoint();
}

// ---------------------------------------------------------------------------
// Structure verification (eq-(3)-style relations on basis level)

struct StructureReport {
  bool ok = false;
  double max_pk_residual = 0.0;       // [p, k] escaping p
  double max_k_span_residual = 0.0;   // distance of k-basis vectors from span [p, p]
  int spanning_rank = 0;              // rank of p + [p, p]
  int dim_g = 0;
  std::string detail;
};

template <typename T>
std::vector<double> vectorize(const AlgPair<T>& x) {
  std::vector<double> v;
  v.reserve(size_t(scalar_traits<T>::real_dim) * (x.gn.rows() * x.gn.cols() + x.gk.rows() * x.gk.cols()));
  double buf[4];
  for (int i = 0; i < x.gn.rows(); ++i)
    for (int j = 0; j < x.gn.cols(); ++j) {
      scalar_traits<T>::to_reals(x.gn(i, j), buf);
      v.insert(v.end(), buf, buf + scalar_traits<T>::real_dim);
    }
  for (int i = 0; i < x.gk.rows(); ++i)
    for (int j = 0; j < x.gk.cols(); ++j) {
      scalar_traits<T>::to_reals(x.gk(i, j), buf);
      v.insert(v.end(), buf, buf + scalar_traits<T>::real_dim);
    }
  return v;
}

/// Checks (i) [p,k] within p, (ii) k within span [p,p], (iii) p + [p,p] = g.
/// Failure is reported, not thrown.
template <typename T>
StructureReport verify_structure(const Distribution& d, double sv_tol = 1e-9) {
  StructureReport rep;
  const auto pb = p_basis<T>(d);
  const auto kb = k_basis<T>(d);
  rep.dim_g = algebra_dim<T>(d.n) + (d.product_carrier() ? algebra_dim<T>(d.k) : 0);

  for (const auto& p : pb)
    for (const auto& kk : kb) {
      const AlgPair<T> br = bracket(p, kk);
      rep.max_pk_residual =
          std::max(rep.max_pk_residual, (br - decompose(br, d).p).max_abs());
    }

  std::vector<std::vector<double>> comm_vecs;
  for (size_t i = 0; i < pb.size(); ++i)
    for (size_t j = i + 1; j < pb.size(); ++j)
      comm_vecs.push_back(vectorize(bracket(pb[i], pb[j])));

  std::vector<std::vector<double>> comm_basis;
  span_rank(comm_vecs, sv_tol, &comm_basis);
  for (const auto& kk : kb) {
    const std::vector<double> v = vectorize(kk);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    const double res = residual_to_basis(comm_basis, v) / (norm > 0 ? norm : 1.0);
    rep.max_k_span_residual = std::max(rep.max_k_span_residual, res);
  }

  std::vector<std::vector<double>> spanning = comm_vecs;
  for (const auto& p : pb) spanning.push_back(vectorize(p));
  rep.spanning_rank = span_rank(spanning, sv_tol);

  rep.ok = rep.max_pk_residual < 1e-10 && rep.max_k_span_residual < 1e-10 &&
           rep.spanning_rank == rep.dim_g;
  return rep;
}

}  // namespace stgeo
