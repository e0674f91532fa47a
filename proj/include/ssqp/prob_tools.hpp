#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ssqp/kkt.hpp"
#include "ssqp/noise.hpp"
#include "ssqp/problems.hpp"
#include "ssqp/rng.hpp"

namespace ssqp {

/// Inputs to the tail-bound formulas.
struct TailParams {
  int s_max = 0;
  double delta = 0.1;
  int k_max = 0;
  double p_tau = 0.5;

  void validate() const;
};

/// Chernoff threshold: the accumulated success probability that rules out at
/// most s successes with confidence 1 − δ̂.
///   ℓ(s, δ̂) = s + log(1/δ̂) + √(log(1/δ̂)² + 2s·log(1/δ̂))
double ell(int s, double delta_hat);
/// Same, parameterized by log(1/δ̂) so that tiny δ̂ does not underflow.
double ell_from_log(int s, double log_inv_delta_hat);

/// δ̂ = δ / Σ_{j=0}^{max(s_max−1, 0)} C(k_max, j).
double hat_delta(double delta, int s_max, int k_max);
/// log(1/δ̂). Exact integer binomial sums for k_max ≤ 10⁶ and s_max ≤ 60,
/// log-domain accumulation beyond.
double log_inv_hat_delta(double delta, int s_max, int k_max);

/// min{k_max+1, ⌈log(τ_min/τ₋₁)/log(1−ε_τ)⌉}.
int smax_bound(double tau_min, double tau_init, double eps_tau, int k_max);

/// Monte Carlo estimate of a probability with its standard error.
struct McEstimate {
  int trials = 0;
  double frequency = 0.0;
  double se = 0.0;
};

struct ChernoffResult {
  McEstimate tail;  // empirical P[Σ Y_j ≤ s]
  double mu = 0.0;  // Σ p_j
  double ell = 0.0;
  bool precondition_met = false;  // μ ≥ ℓ(s, δ)
  /// tail ≤ δ + 3·√(δ(1−δ)/trials). Only meaningful under the precondition.
  bool within_bound = false;
};

/// Sums of independent Bernoulli(p_j); reports how often Σ ≤ s.
ChernoffResult mc_chernoff_check(std::span<const double> probs, int s, double delta, int trials,
                                 Rng& rng);

struct CappedProcessResult {
  int trials = 0;
  double freq_bound_holds = 0.0;   // P[Σ conditional probabilities ≤ ℓ(s_max, δ̂) + 1]
  double freq_count_exceeds = 0.0; // P[successes > s_max]; always 0
  double threshold = 0.0;          // ℓ(s_max, δ̂) + 1
  double max_prob_sum = 0.0;
  double mean_successes = 0.0;
};

using ProbSchedule = std::function<double(int k)>;

/// Z_k ~ Bernoulli(p_k) while fewer than s_max successes have occurred, and
/// Z_k = 0 afterwards. Each trial accumulates the probabilities actually in
/// force over k = 0..k_max.
CappedProcessResult simulate_capped_process(const ProbSchedule& prob_schedule, int s_max,
                                            int k_max, double delta, int trials, Rng& rng);

/// Frequency of G·D + max{DᵀHD,0} ≥ ∇f·d_true + max{d_trueᵀHd_true,0} over
/// repeated single-step samples at x. Equality counts as success.
McEstimate mc_ptau_symmetric(const Problem& problem, const Vec& x, const Mat& H,
                             const NoiseModel& noise, int trials, Rng& rng);

/// √(M(1 + log((k_max+1)/δ))).
double subgaussian_max_threshold(double M, int k_max, double delta);

/// Frequency over trials that max_{k ≤ k_max} ‖G_k − ∇f‖ stays below
/// subgaussian_max_threshold(M, k_max, δ). Noise is drawn in dimension `dim`.
McEstimate mc_subgaussian_max(const NoiseModel& noise, int dim, double M, int k_max,
                              double delta, int trials, Rng& rng);

struct TauMinFormula {
  double kappa_tau_min = 0.0;
  double m_tau = 0.0;
  double tau_min = 0.0;
  int s_max = 0;
};

/// Merit-parameter floor and decrease count implied by sub-Gaussian noise.
/// κ_v and κ_c are problem constants that must be supplied by the caller.
TauMinFormula eval_tau_min_formula(double kappa_v, double kappa_g, double kappa_H, double zeta,
                                   double kappa_c, double M, int k_max, double delta,
                                   double sigma, double eps_tau, double tau_init);

}  // namespace ssqp
