#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace stgeo {

/// Eigendecomposition of a small dense symmetric real matrix by the cyclic
/// Jacobi method. Used for rank and span computations on Gram matrices.
struct SymEig {
  std::vector<double> values;               // ascending
  std::vector<std::vector<double>> vectors; // vectors[i] is the eigenvector of values[i]
};

inline SymEig jacobi_symmetric_eig(std::vector<std::vector<double>> a) {
  const int n = int(a.size());
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-300) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const double apj = a[p][j], aqj = a[q][j];
          a[p][j] = c * apj - s * aqj;
          a[q][j] = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v[i][p], viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
  }
  SymEig e;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a[order[j]][order[j]] < a[order[i]][order[i]]) std::swap(order[i], order[j]);
  e.values.resize(n);
  e.vectors.assign(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    e.values[i] = a[order[i]][order[i]];
    for (int r = 0; r < n; ++r) e.vectors[i][r] = v[r][order[i]];
  }
  return e;
}

/// Rank of the column span of `vecs` (each a real vector of equal length):
/// eigenvalues of the Gram matrix V V^T above (tol * max)^2 count.
/// Returns the rank and, optionally, an orthonormal basis of the span.
inline int span_rank(const std::vector<std::vector<double>>& vecs, double sv_tol = 1e-9,
                     std::vector<std::vector<double>>* basis = nullptr) {
  if (vecs.empty()) return 0;
  const int d = int(vecs[0].size());
  std::vector<std::vector<double>> g(d, std::vector<double>(d, 0.0));
  for (const auto& vec : vecs) {
    if (int(vec.size()) != d) throw std::invalid_argument("span_rank: ragged input");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g[i][j] += vec[i] * vec[j];
  }
  SymEig e = jacobi_symmetric_eig(std::move(g));
  const double lam_max = e.values.empty() ? 0.0 : e.values.back();
  // The Gram route squares singular values, so the eigensolver's relative
  // noise floor (~ d*eps) dominates sv_tol^2; exact zeros come out around
  // 1e-15 * lam_max and must not count toward the rank.
  const double noise = 256.0 * d * 2.220446049250313e-16;
  const double cut = lam_max * std::max(sv_tol * sv_tol, noise);
  int rank = 0;
  if (basis) basis->clear();
  for (int i = int(e.values.size()) - 1; i >= 0; --i) {
    if (e.values[i] > cut && lam_max > 0.0 && rank < int(vecs.size())) {
      ++rank;
      if (basis) basis->push_back(e.vectors[i]);
    }
  }
  return rank;
}

/// Euclidean distance from `target` to the span of an orthonormal basis.
inline double residual_to_basis(const std::vector<std::vector<double>>& orthonormal_basis,
                                std::vector<double> r) {
  for (const auto& q : orthonormal_basis) {
    double dot = 0.0;
    for (size_t i = 0; i < r.size(); ++i) dot += q[i] * r[i];
    for (size_t i = 0; i < r.size(); ++i) r[i] -= dot * q[i];
  }
  double s = 0.0;
  for (double x : r) s += x * x;
  return std::sqrt(s);
}

/// Euclidean distance from `target` to the span of `vecs`.
inline double span_residual(const std::vector<std::vector<double>>& vecs,
                            const std::vector<double>& target, double sv_tol = 1e-9) {
  std::vector<std::vector<double>> basis;
  span_rank(vecs, sv_tol, &basis);
  return residual_to_basis(basis, target);
}

}  // namespace stgeo
