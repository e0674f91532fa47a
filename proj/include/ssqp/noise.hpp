#pragma once

#include "ssqp/problems.hpp"
#include "ssqp/rng.hpp"

namespace ssqp {

enum class NoiseKind { kNone, kGaussian, kSymmetricBounded, kMiniBatch };

/// Distribution of the stochastic gradient G around ∇f(x).
///
/// - Gaussian: G = ∇f + √(M/n)·z with z standard normal, so E‖G−∇f‖² = M.
/// - SymmetricBounded: the Gaussian draw radially clipped to ‖G−∇f‖ ≤ radius.
/// - MiniBatch: average of `batch` component gradients drawn without
///   replacement (requires a finite-sum problem).
struct NoiseModel {
  NoiseKind kind = NoiseKind::kNone;
  double M = 0.0;
  double radius = 0.0;
  int batch = 0;

  static NoiseModel none() { return {}; }
  static NoiseModel gaussian(double M) { return {NoiseKind::kGaussian, M, 0.0, 0}; }
  static NoiseModel symmetric_bounded(double M, double radius) {
    return {NoiseKind::kSymmetricBounded, M, radius, 0};
  }
  static NoiseModel mini_batch(int batch) { return {NoiseKind::kMiniBatch, 0.0, 0.0, batch}; }

  bool is_symmetric() const {
    return kind == NoiseKind::kNone || kind == NoiseKind::kGaussian ||
           kind == NoiseKind::kSymmetricBounded;
  }
};

const char* to_string(NoiseKind kind) noexcept;

/// One draw of G at x.
Vec sample_gradient(const Problem& problem, const NoiseModel& noise, const Vec& x, Rng& rng);

/// One draw of G − ∇f for the problem-independent kinds (None, Gaussian,
/// SymmetricBounded) in dimension n.
Vec sample_noise(const NoiseModel& noise, int n, Rng& rng);

/// Exact E‖G−∇f(x)‖² for the model at x. For mini-batches this is the
/// without-replacement sampling variance of the component gradients.
double gradient_variance(const Problem& problem, const NoiseModel& noise, const Vec& x);

/// A scale M' with E[exp(‖G−∇f‖²/M')] ≤ e (the sub-Gaussian parameter) for the
/// Gaussian and SymmetricBounded kinds in dimension n.
double subgaussian_parameter(const NoiseModel& noise, int n);

}  // namespace ssqp
