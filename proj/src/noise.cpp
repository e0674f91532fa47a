#include "ssqp/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ssqp/error.hpp"

namespace ssqp {

const char* to_string(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::kNone: return "none";
    case NoiseKind::kGaussian: return "gaussian";
    case NoiseKind::kSymmetricBounded: return "symmetric_bounded";
    case NoiseKind::kMiniBatch: return "mini_batch";
  }
  return "unknown";
}

Vec sample_noise(const NoiseModel& noise, int n, Rng& rng) {
  switch (noise.kind) {
    case NoiseKind::kNone:
      return Vec::Zero(n);
    case NoiseKind::kGaussian:
    case NoiseKind::kSymmetricBounded: {
      std::normal_distribution<double> normal;
      const double scale = std::sqrt(noise.M / n);
      Vec e(n);
      for (int i = 0; i < n; ++i) e(i) = scale * normal(rng);
      if (noise.kind == NoiseKind::kSymmetricBounded) {
        const double norm = e.norm();
        if (norm > noise.radius) e *= noise.radius / norm;
      }
      return e;
    }
    case NoiseKind::kMiniBatch:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "mini-batch noise depends on the problem");
}

Vec sample_gradient(const Problem& problem, const NoiseModel& noise, const Vec& x, Rng& rng) {
  if (noise.kind != NoiseKind::kMiniBatch) {
    if (noise.kind == NoiseKind::kNone) return problem.grad_f(x);
    return problem.grad_f(x) + sample_noise(noise, problem.n, rng);
  }
  const int N = problem.num_components;
  if (N < 1 || !problem.component_grad) {
    throw Error(ErrorCode::kInvalidArgument, "problem '" + problem.name + "' is not a finite sum");
  }
  if (noise.batch < 1 || noise.batch > N) {
    throw Error(ErrorCode::kInvalidArgument, "batch size must lie in [1, N]");
  }
  if (noise.batch == N) return problem.grad_f(x);
  std::vector<int> all(N);
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> picked;
  picked.reserve(noise.batch);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), noise.batch, rng);
  Vec g = Vec::Zero(problem.n);
  for (int i : picked) g += problem.component_grad(i, x);
  return g / noise.batch;
}

double gradient_variance(const Problem& problem, const NoiseModel& noise, const Vec& x) {
  switch (noise.kind) {
    case NoiseKind::kNone:
      return 0.0;
    case NoiseKind::kGaussian:
    case NoiseKind::kSymmetricBounded:
      return noise.M;
    case NoiseKind::kMiniBatch: {
      const int N = problem.num_components;
      const int b = noise.batch;
      if (N < 2 || b >= N) return 0.0;
      const Vec mean = problem.grad_f(x);
      double spread = 0.0;
      for (int i = 0; i < N; ++i) spread += (problem.component_grad(i, x) - mean).squaredNorm();
      spread /= N;
      return spread * (N - b) / (static_cast<double>(b) * (N - 1));
    }
  }
  return 0.0;
}

double subgaussian_parameter(const NoiseModel& noise, int n) {
  switch (noise.kind) {
    case NoiseKind::kNone:
      return 0.0;
    case NoiseKind::kGaussian:
    case NoiseKind::kSymmetricBounded: {
      // ‖e‖²/s² ~ χ²_n, and E exp(t χ²_n) = (1 − 2t)^{-n/2} equals e at
      // t = (1 − exp(−2/n))/2.
      const double s2 = noise.M / n;
      const double gaussian = 2.0 * s2 / -std::expm1(-2.0 / n);
      if (noise.kind == NoiseKind::kGaussian) return gaussian;
      return std::min(gaussian, noise.radius * noise.radius);
    }
    case NoiseKind::kMiniBatch:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "no closed-form sub-Gaussian scale for mini-batches");
}

}  // namespace ssqp
