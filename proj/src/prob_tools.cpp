#include "ssqp/prob_tools.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ssqp/error.hpp"

namespace ssqp {

namespace {

constexpr int kExactMaxK = 1'000'000;
constexpr int kExactMaxS = 60;

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta must lie in (0,1), got " + std::to_string(delta));
  }
}

void require_trials(int trials) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be positive");
}

McEstimate estimate(int successes, int trials) {
  McEstimate e;
  e.trials = trials;
  e.frequency = static_cast<double>(successes) / trials;
  e.se = std::sqrt(e.frequency * (1.0 - e.frequency) / trials);
  return e;
}

/// log Σ_{j=0}^{top} C(k, j).
double log_binomial_prefix_sum(int k, int top) {
  top = std::min(top, k);
  if (k <= kExactMaxK && top <= kExactMaxS) {
    using boost::multiprecision::cpp_int;
    cpp_int term = 1;
    cpp_int total = 1;
    for (int j = 0; j < top; ++j) {
      term = term * (k - j) / (j + 1);
      total += term;
    }
    return std::log(total.convert_to<long double>());
  }
  const double lk = std::lgamma(k + 1.0);
  std::vector<double> logs(static_cast<std::size_t>(top) + 1);
  for (int j = 0; j <= top; ++j) {
    logs[j] = lk - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0);
  }
  const double peak = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - peak);
  return peak + std::log(acc);
}

}  // namespace

void TailParams::validate() const {
  if (s_max < 0 || k_max < 0) throw Error(ErrorCode::kInvalidRange, "s_max and k_max must be >= 0");
  require_delta(delta);
  if (!(p_tau > 0.0 && p_tau <= 1.0)) throw Error(ErrorCode::kInvalidRange, "p_tau must lie in (0,1]");
}

double ell_from_log(int s, double log_inv) {
  if (s < 0) throw Error(ErrorCode::kInvalidRange, "s must be nonnegative");
  if (!(log_inv > 0.0) || !std::isfinite(log_inv)) {
    throw Error(ErrorCode::kInvalidDelta, "log(1/delta_hat) must be positive and finite");
  }
  return s + log_inv + std::sqrt(log_inv * log_inv + 2.0 * s * log_inv);
}

double ell(int s, double delta_hat) {
  require_delta(delta_hat);
  return ell_from_log(s, -std::log(delta_hat));
}

double log_inv_hat_delta(double delta, int s_max, int k_max) {
  require_delta(delta);
  if (s_max < 0 || k_max < 0) throw Error(ErrorCode::kInvalidRange, "s_max and k_max must be >= 0");
  return -std::log(delta) + log_binomial_prefix_sum(k_max, std::max(s_max - 1, 0));
}

double hat_delta(double delta, int s_max, int k_max) {
  if (s_max <= 1) {
    require_delta(delta);
    return delta;
  }
  return std::exp(-log_inv_hat_delta(delta, s_max, k_max));
}

int smax_bound(double tau_min, double tau_init, double eps_tau, int k_max) {
  if (!(tau_min > 0.0 && tau_min <= tau_init)) {
    throw Error(ErrorCode::kInvalidRange, "need 0 < tau_min <= tau_init");
  }
  if (!(eps_tau > 0.0 && eps_tau < 1.0) || k_max < 0) {
    throw Error(ErrorCode::kInvalidRange, "need eps_tau in (0,1) and k_max >= 0");
  }
  const double count = std::ceil(std::log(tau_min / tau_init) / std::log1p(-eps_tau));
  return static_cast<int>(std::min<double>(k_max + 1.0, std::max(0.0, count)));
}

ChernoffResult mc_chernoff_check(std::span<const double> probs, int s, double delta, int trials,
                                 Rng& rng) {
  require_delta(delta);
  require_trials(trials);
  if (s < 0) throw Error(ErrorCode::kInvalidRange, "s must be nonnegative");
  ChernoffResult out;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "p_j must lie in [0,1]");
    out.mu += p;
  }
  out.ell = ell(s, delta);
  // Summation rounding: probabilities built as ℓ/N must still count as Σ p = ℓ.
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * double(probs.size());
  out.precondition_met = out.mu >= out.ell * (1.0 - slack);

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    int successes = 0;
    for (double p : probs) successes += unif(rng) < p ? 1 : 0;
    if (successes <= s) ++hits;
  }
  out.tail = estimate(hits, trials);
  out.within_bound = out.tail.frequency <= delta + 3.0 * std::sqrt(delta * (1.0 - delta) / trials);
  return out;
}

CappedProcessResult simulate_capped_process(const ProbSchedule& prob_schedule, int s_max,
                                            int k_max, double delta, int trials, Rng& rng) {
  require_trials(trials);
  if (s_max < 0 || k_max < 0 || s_max > k_max + 1) {
    throw Error(ErrorCode::kInvalidRange, "need 0 <= s_max <= k_max + 1");
  }
  CappedProcessResult out;
  out.trials = trials;
  out.threshold = ell_from_log(s_max, log_inv_hat_delta(delta, s_max, k_max)) + 1.0;

  std::vector<double> schedule(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    const double p = prob_schedule(k);
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "p_k must lie in [0,1]");
    schedule[k] = p;
  }

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int holds = 0;
  int exceeds = 0;
  long long total_successes = 0;
  for (int t = 0; t < trials; ++t) {
    int successes = 0;
    double prob_sum = 0.0;
    for (int k = 0; k <= k_max; ++k) {
      const double p = successes < s_max ? schedule[k] : 0.0;
      prob_sum += p;
      if (unif(rng) < p) ++successes;
    }
    if (prob_sum <= out.threshold) ++holds;
    if (successes > s_max) ++exceeds;
    total_successes += successes;
    out.max_prob_sum = std::max(out.max_prob_sum, prob_sum);
  }
  out.freq_bound_holds = static_cast<double>(holds) / trials;
  out.freq_count_exceeds = static_cast<double>(exceeds) / trials;
  out.mean_successes = static_cast<double>(total_successes) / trials;
  return out;
}

McEstimate mc_ptau_symmetric(const Problem& problem, const Vec& x, const Mat& H,
                             const NoiseModel& noise, int trials, Rng& rng) {
  require_trials(trials);
  if (!noise.is_symmetric()) {
    throw Error(ErrorCode::kInvalidArgument, "p_tau check needs a symmetric noise model");
  }
  const Mat J = problem.jac_c(x);
  const Vec c = problem.c(x);
  const Vec grad = problem.grad_f(x);
  const KktFactorization kkt(H, J);
  const Vec d_true = kkt.solve(grad, c).d;
  const double reference = grad.dot(d_true) + std::max(d_true.dot(H * d_true), 0.0);

  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    const Vec g = sample_gradient(problem, noise, x, rng);
    const Vec d = kkt.solve(g, c).d;
    const double value = g.dot(d) + std::max(d.dot(H * d), 0.0);
    if (value >= reference) ++hits;
  }
  return estimate(hits, trials);
}

double subgaussian_max_threshold(double M, int k_max, double delta) {
  require_delta(delta);
  if (M < 0.0 || k_max < 0) throw Error(ErrorCode::kInvalidRange, "need M >= 0 and k_max >= 0");
  return std::sqrt(M * (1.0 + std::log((k_max + 1.0) / delta)));
}

McEstimate mc_subgaussian_max(const NoiseModel& noise, int dim, double M, int k_max,
                              double delta, int trials, Rng& rng) {
  require_trials(trials);
  if (dim < 1) throw Error(ErrorCode::kInvalidDimension, "dim must be positive");
  const double threshold = subgaussian_max_threshold(M, k_max, delta);
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    double worst = 0.0;
    for (int k = 0; k <= k_max; ++k) worst = std::max(worst, sample_noise(noise, dim, rng).norm());
    if (worst <= threshold) ++hits;
  }
  return estimate(hits, trials);
}

TauMinFormula eval_tau_min_formula(double kappa_v, double kappa_g, double kappa_H, double zeta,
                                   double kappa_c, double M, int k_max, double delta,
                                   double sigma, double eps_tau, double tau_init) {
  for (double v : {kappa_v, kappa_g, kappa_H, zeta, kappa_c, M, tau_init}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidConstant, "constants must be positive and finite");
    }
  }
  if (!(sigma > 0.0 && sigma < 1.0) || !(eps_tau > 0.0 && eps_tau < 1.0) || k_max < 0) {
    throw Error(ErrorCode::kInvalidConstant, "need sigma, eps_tau in (0,1) and k_max >= 0");
  }
  require_delta(delta);

  TauMinFormula out;
  const double noise_radius = std::sqrt(M * (1.0 + std::log((k_max + 1.0) / delta)));
  out.m_tau = noise_radius;
  out.kappa_tau_min =
      kappa_v * (kappa_g + noise_radius +
                 (kappa_H / zeta) * (noise_radius + kappa_g + zeta + kappa_H * kappa_v * kappa_c));
  const double scale = (1.0 - sigma) * (1.0 - eps_tau);
  out.tau_min = scale / out.kappa_tau_min;
  const double count =
      std::ceil(std::log(tau_init * out.kappa_tau_min / scale) / -std::log1p(-eps_tau));
  out.s_max = static_cast<int>(std::min<double>(k_max + 1.0, std::max(0.0, count)));
  return out;
}

}  // namespace ssqp
