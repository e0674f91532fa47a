#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssqp/kkt.hpp"
#include "ssqp/merit.hpp"
#include "ssqp/noise.hpp"
#include "ssqp/problems.hpp"
#include "ssqp/rng.hpp"

namespace ssqp {

/// Step-size control sequence {β_k} ⊂ (0, 1].
///
/// Constant(γ) gives β_k = γ/√(k_max+1) for every k; Fixed(β) repeats one value
/// independent of k_max; Explicit lists β_0 … β_{k_max}.
struct BetaSchedule {
  enum class Kind { kConstant, kFixed, kExplicit };

  Kind kind = Kind::kConstant;
  double gamma = 0.5;
  double beta = 1.0;
  std::vector<double> values;

  static BetaSchedule constant(double gamma) { return {Kind::kConstant, gamma, 1.0, {}}; }
  static BetaSchedule fixed(double beta) { return {Kind::kFixed, 0.5, beta, {}}; }
  static BetaSchedule explicit_values(std::vector<double> v) {
    return {Kind::kExplicit, 0.5, 1.0, std::move(v)};
  }

  /// β_0 … β_{k_max}; throws kInvalidArgument for values outside (0, 1].
  std::vector<double> betas(int k_max) const;
};

/// How H_k is produced. H_k never depends on the gradient sample.
struct HessianPolicy {
  enum class Kind { kIdentity, kRegularizedProblemHessian, kUserHook };
  using Hook = std::function<Mat(const Vec& x, int k)>;

  Kind kind = Kind::kIdentity;
  // Regularized: ∇²f(x) + λI with λ ∈ {0, shift_init, shift_init·growth, ...}
  // until the reduced curvature reaches zeta.
  double zeta = 1e-2;
  double shift_init = 1e-4;
  double growth = 10.0;
  int max_shifts = 60;
  Hook hook;
};

enum class Mode { kStochastic, kDeterministic };

struct AlgoConfig {
  int k_max = 100;
  MeritParams merit;
  double theta = 1.0;
  BetaSchedule beta;
  HessianPolicy hessian;
  std::uint64_t seed = 0;
  Mode mode = Mode::kDeterministic;
  NoiseModel noise;                // used in stochastic mode
  std::optional<double> stop_eps;  // deterministic mode only

  /// When set, every H_k must pass check_reduced_curvature(H_k, J_k, curvature_zeta).
  bool strict_curvature = false;
  double curvature_zeta = 1e-8;
  /// ‖d‖∞ at or below this is treated as the zero step, as is any step whose
  /// model decrease Δq rounds to a non-positive value.
  double zero_step_tol = 1e-12;
  double kkt_tol = kKktTol;

  void validate() const;
};

/// One row of the trace. The first block mirrors the algorithm's own
/// quantities; the "true" block is what the iteration would have computed with
/// ∇f(x_k) in place of the sample.
struct IterationRecord {
  int k = 0;
  Vec x;
  Vec g;
  Vec d;
  Vec y;
  ExtendedReal tau_trial = ExtendedReal::infinity();
  double tau = 0.0;
  ExtendedReal xi_trial = ExtendedReal::infinity();
  double xi = 0.0;
  double alpha_hat_init = 1.0;
  double alpha_tilde_init = 1.0;
  double alpha_hat = 1.0;
  double alpha_tilde = 1.0;
  double alpha = 1.0;
  double f = 0.0;
  double c_norm1 = 0.0;
  bool tau_decreased = false;
  bool xi_decreased = false;
  Vec d_true;
  Vec y_true;
  ExtendedReal tau_trial_true = ExtendedReal::infinity();
  double tau_hat = 0.0;
  double delta_q_stoch = 0.0;
  double delta_q_true = 0.0;
  double stationarity = 0.0;  // ‖∇f(x) + J(x)ᵀy_true‖
  double phi_before = 0.0;    // φ(x_k, τ_k)
  double phi_after = 0.0;     // φ(x_k + α_k d_k, τ_k)
  // Trailing diagnostics.
  double beta = 0.0;
  double curvature = 0.0;       // d_kᵀH_k d_k
  double curvature_true = 0.0;  // d_trueᵀH_k d_true

  Vec next_x() const { return x + alpha * d; }
};

struct Stepsize {
  double alpha_hat_init;
  double alpha_tilde_init;
  double alpha_hat;
  double alpha_tilde;
  double alpha;
};

struct TrueQuantities {
  Vec d_true;
  Vec y_true;
  ExtendedReal tau_trial_true = ExtendedReal::infinity();
  double stationarity = 0.0;
  double c_norm1 = 0.0;
};

struct RunSummary {
  int iterations = 0;
  bool stopped_early = false;
  double tau_final = 0.0;
  double xi_final = 0.0;
  int s_count = 0;
  int r_count = 0;
  double min_stationarity = 0.0;
  double tau_min_empirical = 0.0;
  double xi_min_empirical = 0.0;
  double a_max = 0.0;           // ξ₋₁τ₋₁/(τ₋₁L+Γ)
  double a_min_estimate = 0.0;  // min_k ξ_kτ_k/(τ_kL+Γ)
  bool gamma_exceeds_bound = false;
  bool box_exited = false;
  Vec x_final;
  std::vector<std::string> warnings;
};

struct RunResult {
  std::vector<IterationRecord> trace;
  int k_star = 0;
  Vec x_at_kstar;
  RunSummary summary;
};

/// Projected step-size rule. Throws kDivisionByZero for d_norm_sq = 0 and
/// kInvalidInterval when the projection interval is empty.
Stepsize compute_stepsize(double delta_q_value, double tau, double xi, double beta, double L,
                          double Gamma, double d_norm_sq, double c_norm1, double theta);

/// H_k for the configured policy at x with Jacobian J.
Mat form_hessian(const Problem& problem, const HessianPolicy& policy, const Vec& x, const Mat& J,
                 int k);

TrueQuantities true_quantities(const Problem& problem, const Vec& x, const Mat& H, double sigma);

/// One iteration from x. Updates `state` in place.
IterationRecord step_once(const Problem& problem, const AlgoConfig& config, MeritState& state,
                          const Vec& x, int k, double beta, Rng& rng);

/// Index k with probability β_k / Σβ_j.
int sample_kstar(std::span<const double> betas, Rng& rng);

RunResult run(const Problem& problem, const AlgoConfig& config);

}  // namespace ssqp
