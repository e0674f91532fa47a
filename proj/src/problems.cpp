#include "ssqp/problems.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "ssqp/error.hpp"
#include "ssqp/rng.hpp"

namespace ssqp {

namespace {

constexpr std::uint64_t kQuadraticStream = 0x71756164;  // "quad"
constexpr std::uint64_t kLicqStream = 0x6c696371;       // "licq"

Mat gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Mat out(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) out(i, j) = normal(rng);
  return out;
}

Vec gaussian_vector(int n, Rng& rng) { return gaussian_matrix(n, 1, rng).col(0); }

Mat random_orthogonal(int n, Rng& rng) {
  Eigen::HouseholderQR<Mat> qr(gaussian_matrix(n, n, rng));
  return qr.householderQ() * Mat::Identity(n, n);
}

/// Eigenvalues spread over [lo, hi] with both endpoints attained.
Vec spread_spectrum(int n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Vec lambda(n);
  for (int i = 0; i < n; ++i) lambda(i) = unif(rng);
  lambda(0) = hi;
  if (n > 1) lambda(1) = lo;
  return lambda;
}

void check_dims(int n, int m) {
  if (n < 1 || m < 1 || m >= n) {
    throw Error(ErrorCode::kInvalidDimension,
                "need 1 <= m < n, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
}

}  // namespace

Problem make_quadratic(int n, int m, std::uint64_t seed, const QuadraticOptions& options) {
  check_dims(n, m);
  if (options.components < 1 || !(options.eig_min > 0.0) || options.eig_max < options.eig_min) {
    throw Error(ErrorCode::kInvalidArgument, "bad quadratic options");
  }
  Rng rng = make_rng(seed, kQuadraticStream);

  const Mat U = random_orthogonal(n, rng);
  const Vec lambda = spread_spectrum(n, options.eig_min, options.eig_max, rng);
  Mat Q = U * lambda.asDiagonal() * U.transpose();
  Q = 0.5 * (Q + Q.transpose());
  Mat A = gaussian_matrix(m, n, rng);
  Vec q = gaussian_vector(n, rng);
  Vec b = gaussian_vector(m, rng);
  if (options.homogeneous) {
    q.setZero();
    b.setZero();
  }
  Vec x0 = 2.0 * gaussian_vector(n, rng);

  // Component offsets e_i with Σ e_i = 0 so that mean(∇f_i) = ∇f.
  const int N = options.components;
  Mat offsets = gaussian_matrix(n, N, rng);
  offsets.colwise() -= offsets.rowwise().mean();

  auto data = std::make_shared<const std::tuple<Mat, Vec, Mat, Vec, Mat>>(Q, q, A, b, offsets);

  Problem p;
  p.name = "quadratic";
  p.n = n;
  p.m = m;
  p.f = [data](const Vec& x) {
    const auto& [Q, q, A, b, E] = *data;
    return 0.5 * x.dot(Q * x) + q.dot(x);
  };
  p.grad_f = [data](const Vec& x) -> Vec {
    const auto& [Q, q, A, b, E] = *data;
    return Q * x + q;
  };
  p.c = [data](const Vec& x) -> Vec {
    const auto& [Q, q, A, b, E] = *data;
    return A * x - b;
  };
  p.jac_c = [data](const Vec&) -> Mat { return std::get<2>(*data); };
  p.hess_f = [data](const Vec&) -> Mat { return std::get<0>(*data); };
  p.L = lambda.maxCoeff();
  p.Gamma = 0.0;
  p.f_low = -0.5 * q.dot(Q.llt().solve(q));
  p.x0 = x0;
  p.num_components = N;
  p.component_grad = [data](int i, const Vec& x) -> Vec {
    const auto& [Q, q, A, b, E] = *data;
    return Q * x + q + E.col(i);
  };

  // Qx + Aᵀy = -q, Ax = b.
  const KktSolution sol = KktFactorization(Q, A).solve(q, -b);
  p.solution = KktPoint{sol.d, sol.y};
  return p;
}

Problem make_rosenbrock_sphere() {
  Problem p;
  p.name = "rosenbrock_sphere";
  p.n = 2;
  p.m = 1;
  p.f = [](const Vec& x) {
    const double a = 1.0 - x(0);
    const double b = x(1) - x(0) * x(0);
    return a * a + 100.0 * b * b;
  };
  p.grad_f = [](const Vec& x) -> Vec {
    const double b = x(1) - x(0) * x(0);
    Vec g(2);
    g << -2.0 * (1.0 - x(0)) - 400.0 * x(0) * b, 200.0 * b;
    return g;
  };
  p.c = [](const Vec& x) -> Vec { return Vec::Constant(1, x.squaredNorm() - 1.0); };
  p.jac_c = [](const Vec& x) -> Mat { return 2.0 * x.transpose(); };
  p.hess_f = [](const Vec& x) -> Mat {
    Mat H(2, 2);
    H << 2.0 - 400.0 * x(1) + 1200.0 * x(0) * x(0), -400.0 * x(0), -400.0 * x(0), 200.0;
    return H;
  };
  // On [-1.5, 1.5]²: |H11| ≤ 2 + 600 + 2700, |H12| ≤ 600, H22 = 200, so the
  // max row sum 3902 bounds ‖∇²f‖₂. ∇c = 2x is 2-Lipschitz.
  p.L = 3902.0;
  p.Gamma = 2.0;
  p.f_low = 0.0;
  p.x0 = Vec(2);
  p.x0 << -1.0, 1.0;
  p.box = Box{Vec::Constant(2, -1.5), Vec::Constant(2, 1.5)};
  return p;
}

// Amplitudes of the sine terms in f and c.
constexpr double kLicqRho = 0.3;
constexpr double kLicqEta = 0.2;

Problem make_random_licq(int n, int m, std::uint64_t seed) {
  check_dims(n, m);
  Rng rng = make_rng(seed, kLicqStream);

  const Mat U = random_orthogonal(n, rng);
  const Vec lambda = spread_spectrum(n, 1.0, 2.0, rng);
  Mat Q = U * lambda.asDiagonal() * U.transpose();
  Q = 0.5 * (Q + Q.transpose());
  const Vec q = gaussian_vector(n, rng);

  // σ(A) ⊂ [1, 2] keeps A + η·(diagonal perturbation) full rank everywhere.
  const Mat Um = random_orthogonal(m, rng);
  const Mat Vn = random_orthogonal(n, rng);
  const Vec sv = spread_spectrum(m, 1.0, 2.0, rng);
  const Mat A = Um * sv.asDiagonal() * Vn.leftCols(m).transpose();
  const Vec b = gaussian_vector(m, rng);
  const Vec x0 = 1.5 * gaussian_vector(n, rng);

  auto data = std::make_shared<const std::tuple<Mat, Vec, Mat, Vec>>(Q, q, A, b);

  Problem p;
  p.name = "random_licq";
  p.n = n;
  p.m = m;
  p.f = [data](const Vec& x) {
    const auto& [Q, q, A, b] = *data;
    return 0.5 * x.dot(Q * x) + q.dot(x) + kLicqRho * x.array().sin().sum();
  };
  p.grad_f = [data](const Vec& x) -> Vec {
    const auto& [Q, q, A, b] = *data;
    return Q * x + q + kLicqRho * x.array().cos().matrix();
  };
  p.hess_f = [data](const Vec& x) -> Mat {
    const auto& Q = std::get<0>(*data);
    Mat H = Q;
    H.diagonal() -= kLicqRho * x.array().sin().matrix();
    return H;
  };
  p.c = [data, m](const Vec& x) -> Vec {
    const auto& [Q, q, A, b] = *data;
    return A * x - b + kLicqEta * x.head(m).array().sin().matrix();
  };
  p.jac_c = [data, m](const Vec& x) -> Mat {
    Mat J = std::get<2>(*data);
    for (int i = 0; i < m; ++i) J(i, i) += kLicqEta * std::cos(x(i));
    return J;
  };
  p.L = lambda.maxCoeff() + kLicqRho;
  p.Gamma = m * kLicqEta;
  p.f_low = -q.squaredNorm() / (2.0 * lambda.minCoeff()) - n * kLicqRho;
  p.x0 = x0;
  return p;
}

Problem make_problem(const std::string& name, int n, int m, std::uint64_t seed) {
  if (name == "quadratic") return make_quadratic(n, m, seed);
  if (name == "rosenbrock_sphere") return make_rosenbrock_sphere();
  if (name == "random_licq") return make_random_licq(n, m, seed);
  throw Error(ErrorCode::kInvalidArgument, "unknown problem '" + name + "'");
}

DerivativeCheck finite_difference_check(const Problem& problem, const Vec& x, double h) {
  DerivativeCheck out;
  const Vec g = problem.grad_f(x);
  const Mat J = problem.jac_c(x);
  for (int j = 0; j < problem.n; ++j) {
    Vec xp = x;
    Vec xm = x;
    xp(j) += h;
    xm(j) -= h;
    const double df = (problem.f(xp) - problem.f(xm)) / (2.0 * h);
    out.grad_error = std::max(out.grad_error, std::abs(df - g(j)));
    const Vec dc = (problem.c(xp) - problem.c(xm)) / (2.0 * h);
    out.jac_error = std::max(out.jac_error, (dc - J.col(j)).lpNorm<Eigen::Infinity>());
  }
  return out;
}

}  // namespace ssqp
