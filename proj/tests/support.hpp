#pragma once

// Random instance generators and reference implementations used as oracles.
// The oracles deliberately avoid the library's own code paths: plain loops,
// partial-pivot elimination, Pascal's triangle.

#include <cmath>
#include <random>
#include <vector>

#include "ssqp/kkt.hpp"
#include "ssqp/rng.hpp"

namespace testing {

using ssqp::Mat;
using ssqp::Rng;
using ssqp::Vec;

inline Vec random_vec(int n, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> z(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * z(rng);
  return v;
}

inline Mat random_mat(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  Mat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = z(rng);
  return a;
}

/// Symmetric positive definite with eigenvalues in [lo, hi].
inline Mat random_spd(int n, Rng& rng, double lo = 1.0, double hi = 3.0) {
  Eigen::HouseholderQR<Mat> qr(random_mat(n, n, rng));
  Mat Q = qr.householderQ();
  std::uniform_real_distribution<double> u(lo, hi);
  Vec lam(n);
  for (int i = 0; i < n; ++i) lam[i] = u(rng);
  Mat H = Q * lam.asDiagonal() * Q.transpose();
  return 0.5 * (H + H.transpose());
}

/// Gaussian elimination with partial pivoting on a copy of A.
inline Vec dense_solve(Mat A, Vec b) {
  const int n = static_cast<int>(A.rows());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
    A.row(col).swap(A.row(piv));
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < n; ++r) {
      const double f = A(r, col) / A(col, col);
      for (int c = col; c < n; ++c) A(r, c) -= f * A(col, c);
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A(r, c) * x[c];
    x[r] = s / A(r, r);
  }
  return x;
}

struct KktOracle {
  Vec d;
  Vec y;
};

inline KktOracle kkt_oracle(const Mat& H, const Mat& J, const Vec& g, const Vec& c) {
  const int n = static_cast<int>(H.rows());
  const int m = static_cast<int>(J.rows());
  Mat K = Mat::Zero(n + m, n + m);
  Vec rhs(n + m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) K(i, j) = H(i, j);
    rhs[i] = -g[i];
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      K(n + i, j) = J(i, j);
      K(j, n + i) = J(i, j);
    }
    rhs[n + i] = -c[i];
  }
  Vec sol = dense_solve(K, rhs);
  return {sol.head(n), sol.tail(m)};
}

/// Row-space component of d: Jᵀw with (JJᵀ)w = Jd.
inline Vec row_space_projection(const Mat& J, const Vec& d) {
  Mat JJt = J * J.transpose();
  Vec w = dense_solve(JJt, J * d);
  return J.transpose() * w;
}

/// Σ_{j=0}^{top} C(k, j) from Pascal's triangle in long double.
inline long double binomial_prefix_sum(int k, int top) {
  std::vector<long double> row(1, 1.0L);
  for (int r = 1; r <= k; ++r) {
    std::vector<long double> next(static_cast<std::size_t>(r) + 1, 1.0L);
    for (int j = 1; j < r; ++j) next[j] = row[j - 1] + row[j];
    row.swap(next);
  }
  long double s = 0.0L;
  for (int j = 0; j <= top && j <= k; ++j) s += row[j];
  return s;
}

inline double ell_oracle(int s, double delta_hat) {
  const double L = -std::log(delta_hat);
  return s + L + std::sqrt(L * L + 2.0 * s * L);
}

/// Two-sided sample mean and standard error.
struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return m;
}

}  // namespace testing
