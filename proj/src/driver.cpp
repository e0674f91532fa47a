#include "ssqp/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ssqp/error.hpp"

namespace ssqp {

namespace {

constexpr std::uint64_t kNoiseStream = 1;
constexpr std::uint64_t kKstarStream = 2;

void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) throw Error(code, message);
}

bool beta_ok(double b) { return b > 0.0 && b <= 1.0; }

}  // namespace

std::vector<double> BetaSchedule::betas(int k_max) const {
  require(k_max >= 0, ErrorCode::kInvalidArgument, "k_max must be nonnegative");
  const auto count = static_cast<std::size_t>(k_max) + 1;
  std::vector<double> out;
  switch (kind) {
    case Kind::kConstant:
      require(gamma > 0.0 && gamma <= 1.0, ErrorCode::kInvalidArgument,
              "gamma must lie in (0,1]");
      out.assign(count, gamma / std::sqrt(static_cast<double>(k_max) + 1.0));
      break;
    case Kind::kFixed:
      out.assign(count, beta);
      break;
    case Kind::kExplicit:
      require(values.size() == count, ErrorCode::kInvalidArgument,
              "explicit beta schedule needs k_max+1 = " + std::to_string(count) + " values");
      out = values;
      break;
  }
  for (double b : out) require(beta_ok(b), ErrorCode::kInvalidArgument, "beta_k must lie in (0,1]");
  return out;
}

void AlgoConfig::validate() const {
  require(k_max >= 0, ErrorCode::kInvalidArgument, "k_max must be nonnegative");
  merit.validate();
  require(theta >= 0.0 && std::isfinite(theta), ErrorCode::kInvalidArgument,
          "theta must be nonnegative");
  (void)beta.betas(k_max);
  if (hessian.kind == HessianPolicy::Kind::kRegularizedProblemHessian) {
    require(hessian.zeta > 0.0 && hessian.shift_init > 0.0 && hessian.growth > 1.0 &&
                hessian.max_shifts > 0,
            ErrorCode::kInvalidArgument, "bad regularized Hessian parameters");
  }
  if (hessian.kind == HessianPolicy::Kind::kUserHook) {
    require(static_cast<bool>(hessian.hook), ErrorCode::kInvalidArgument,
            "user Hessian hook is empty");
  }
  if (mode == Mode::kStochastic) {
    require(noise.M >= 0.0, ErrorCode::kInvalidArgument, "noise M must be nonnegative");
    if (noise.kind == NoiseKind::kSymmetricBounded) {
      require(noise.radius > 0.0, ErrorCode::kInvalidArgument, "noise radius must be positive");
    }
  }
  if (stop_eps) {
    require(*stop_eps > 0.0, ErrorCode::kInvalidArgument, "stop_eps must be positive");
  }
  require(zero_step_tol >= 0.0, ErrorCode::kInvalidArgument, "zero_step_tol must be >= 0");
  require(kkt_tol > 0.0, ErrorCode::kInvalidArgument, "kkt_tol must be positive");
}

Stepsize compute_stepsize(double delta_q_value, double tau, double xi, double beta, double L,
                          double Gamma, double d_norm_sq, double c_norm1, double theta) {
  if (d_norm_sq == 0.0) throw Error(ErrorCode::kDivisionByZero, "stepsize with a zero step");
  const double curvature_scale = tau * L + Gamma;
  require(curvature_scale > 0.0, ErrorCode::kInvalidArgument, "tau*L + Gamma must be positive");
  const double lower = beta * xi * tau / curvature_scale;
  const double upper = lower + theta * beta * beta;
  if (!(lower <= upper)) throw Error(ErrorCode::kInvalidInterval, "empty projection interval");

  Stepsize s{};
  s.alpha_hat_init = beta * delta_q_value / (curvature_scale * d_norm_sq);
  s.alpha_tilde_init = s.alpha_hat_init - 4.0 * c_norm1 / (curvature_scale * d_norm_sq);
  s.alpha_hat = std::clamp(s.alpha_hat_init, lower, upper);
  s.alpha_tilde = std::clamp(s.alpha_tilde_init, lower, upper);
  if (s.alpha_hat < 1.0) {
    s.alpha = s.alpha_hat;
  } else if (s.alpha_tilde <= 1.0) {
    s.alpha = 1.0;
  } else {
    s.alpha = s.alpha_tilde;
  }
  return s;
}

Mat form_hessian(const Problem& problem, const HessianPolicy& policy, const Vec& x, const Mat& J,
                 int k) {
  switch (policy.kind) {
    case HessianPolicy::Kind::kIdentity:
      return Mat::Identity(problem.n, problem.n);
    case HessianPolicy::Kind::kUserHook: {
      Mat H = policy.hook(x, k);
      if (H.rows() != problem.n || H.cols() != problem.n) {
        throw Error(ErrorCode::kDimensionMismatch, "user Hessian has the wrong shape");
      }
      return H;
    }
    case HessianPolicy::Kind::kRegularizedProblemHessian: {
      if (!problem.hess_f) {
        throw Error(ErrorCode::kInvalidArgument,
                    "problem '" + problem.name + "' has no Hessian oracle");
      }
      Mat base = problem.hess_f(x);
      base = 0.5 * (base + base.transpose());
      if (check_reduced_curvature(base, J, policy.zeta)) return base;
      double shift = policy.shift_init;
      for (int i = 0; i < policy.max_shifts; ++i, shift *= policy.growth) {
        Mat H = base;
        H.diagonal().array() += shift;
        if (check_reduced_curvature(H, J, policy.zeta)) return H;
      }
      throw Error(ErrorCode::kCurvatureViolation,
                  "no admissible shift found at iteration " + std::to_string(k));
    }
  }
  return Mat::Identity(problem.n, problem.n);
}

namespace {

TrueQuantities true_from_factorization(const KktFactorization& kkt, const Mat& H, const Mat& J,
                                       const Vec& grad, const Vec& c, double sigma, double tol) {
  TrueQuantities t;
  KktSolution sol = kkt.solve(grad, c, tol);
  t.d_true = std::move(sol.d);
  t.y_true = std::move(sol.y);
  t.c_norm1 = c.lpNorm<1>();
  t.tau_trial_true = tau_trial(grad, t.d_true, H, t.c_norm1, sigma);
  t.stationarity = (grad + J.transpose() * t.y_true).norm();
  return t;
}

}  // namespace

TrueQuantities true_quantities(const Problem& problem, const Vec& x, const Mat& H, double sigma) {
  const Mat J = problem.jac_c(x);
  const Vec c = problem.c(x);
  const Vec grad = problem.grad_f(x);
  return true_from_factorization(KktFactorization(H, J), H, J, grad, c, sigma, kKktTol);
}

IterationRecord step_once(const Problem& problem, const AlgoConfig& config, MeritState& state,
                          const Vec& x, int k, double beta, Rng& rng) {
  IterationRecord rec;
  rec.k = k;
  rec.x = x;
  rec.beta = beta;

  const Mat J = problem.jac_c(x);
  const Vec c = problem.c(x);
  const Vec grad = problem.grad_f(x);
  rec.f = problem.f(x);
  rec.c_norm1 = c.lpNorm<1>();

  const Mat H = form_hessian(problem, config.hessian, x, J, k);
  if (config.strict_curvature && !check_reduced_curvature(H, J, config.curvature_zeta)) {
    throw Error(ErrorCode::kCurvatureViolation,
                "reduced Hessian curvature below zeta at iteration " + std::to_string(k));
  }
  rec.g = config.mode == Mode::kDeterministic ? grad
                                              : sample_gradient(problem, config.noise, x, rng);

  const KktFactorization kkt(H, J);
  const TrueQuantities truth =
      true_from_factorization(kkt, H, J, grad, c, config.merit.sigma, config.kkt_tol);
  KktSolution sol;
  if (config.mode == Mode::kDeterministic) {
    sol = {truth.d_true, truth.y_true, 0.0};
  } else {
    sol = kkt.solve(rec.g, c, config.kkt_tol);
  }
  rec.d = std::move(sol.d);
  rec.y = std::move(sol.y);
  rec.d_true = truth.d_true;
  rec.y_true = truth.y_true;
  rec.tau_trial_true = truth.tau_trial_true;
  rec.stationarity = truth.stationarity;

  bool zero_step = rec.d.lpNorm<Eigen::Infinity>() <= config.zero_step_tol;
  if (!zero_step) {
    const ExtendedReal trial = tau_trial(rec.g, rec.d, H, rec.c_norm1, config.merit.sigma);
    const ParamUpdate tau_upd = update_tau(state, trial, config.merit.eps_tau);
    const double dq = delta_q(tau_upd.value, rec.g, H, rec.d, rec.c_norm1);
    // After the τ update Δq > 0 for every nonzero d in exact arithmetic. A
    // non-positive value means d sits at the rounding level of the solve.
    if (!(dq > 0.0)) {
      zero_step = true;
    } else {
      rec.tau_trial = trial;
      const double d_norm_sq = rec.d.squaredNorm();
      const double xt = xi_trial(dq, tau_upd.value, d_norm_sq);
      rec.xi_trial = ExtendedReal::finite(xt);
      const ParamUpdate xi_upd = update_xi(state, xt, config.merit.eps_xi);
      commit(state, tau_upd, xi_upd);
      rec.tau = state.tau;
      rec.xi = state.xi;
      rec.tau_decreased = tau_upd.decreased;
      rec.xi_decreased = xi_upd.decreased;

      const Stepsize s = compute_stepsize(dq, rec.tau, rec.xi, beta, problem.L, problem.Gamma,
                                          d_norm_sq, rec.c_norm1, config.theta);
      rec.alpha_hat_init = s.alpha_hat_init;
      rec.alpha_tilde_init = s.alpha_tilde_init;
      rec.alpha_hat = s.alpha_hat;
      rec.alpha_tilde = s.alpha_tilde;
      rec.alpha = s.alpha;
    }
  }
  if (zero_step) {
    rec.d.setZero();
    rec.tau_trial = ExtendedReal::infinity();
    rec.xi_trial = ExtendedReal::infinity();
    rec.tau = state.tau;
    rec.xi = state.xi;
  }

  rec.curvature = rec.d.dot(H * rec.d);
  rec.curvature_true = rec.d_true.dot(H * rec.d_true);
  rec.delta_q_stoch = delta_q(rec.tau, rec.g, H, rec.d, rec.c_norm1);
  rec.delta_q_true = delta_q(rec.tau, grad, H, rec.d_true, rec.c_norm1);
  rec.tau_hat = rec.tau <= rec.tau_trial_true ? rec.tau : rec.tau_trial_true.value();
  rec.phi_before = phi(rec.f, rec.c_norm1, rec.tau);
  rec.phi_after = phi(problem, rec.next_x(), rec.tau);
  return rec;
}

int sample_kstar(std::span<const double> betas, Rng& rng) {
  if (betas.empty()) throw Error(ErrorCode::kEmptySchedule, "empty beta schedule");
  for (double b : betas) {
    require(b > 0.0 && std::isfinite(b), ErrorCode::kInvalidArgument, "beta_k must be positive");
  }
  std::discrete_distribution<int> dist(betas.begin(), betas.end());
  return dist(rng);
}

RunResult run(const Problem& problem, const AlgoConfig& config) {
  config.validate();
  require(problem.x0.size() == problem.n, ErrorCode::kDimensionMismatch,
          "x0 has the wrong dimension");
  const std::vector<double> betas = config.beta.betas(config.k_max);
  Rng noise_rng = make_rng(config.seed, kNoiseStream);
  Rng kstar_rng = make_rng(config.seed, kKstarStream);

  RunResult result;
  RunSummary& sum = result.summary;
  result.trace.reserve(static_cast<std::size_t>(config.k_max) + 1);
  MeritState state = MeritState::initial(config.merit);
  Vec x = problem.x0;

  sum.min_stationarity = std::numeric_limits<double>::infinity();
  sum.tau_min_empirical = config.merit.tau_init;
  sum.xi_min_empirical = config.merit.xi_init;
  sum.a_max = config.merit.xi_init * config.merit.tau_init /
              (config.merit.tau_init * problem.L + problem.Gamma);
  sum.a_min_estimate = sum.a_max;

  for (int k = 0; k <= config.k_max; ++k) {
    IterationRecord rec;
    try {
      rec = step_once(problem, config, state, x, k, betas[k], noise_rng);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (iteration " + std::to_string(k) + ")");
    }
    sum.min_stationarity = std::min(sum.min_stationarity, rec.stationarity);
    sum.tau_min_empirical = std::min(sum.tau_min_empirical, rec.tau);
    sum.xi_min_empirical = std::min(sum.xi_min_empirical, rec.xi);
    sum.a_min_estimate =
        std::min(sum.a_min_estimate, rec.xi * rec.tau / (rec.tau * problem.L + problem.Gamma));
    if (problem.box && !problem.box->contains(rec.x)) sum.box_exited = true;

    const bool converged = config.mode == Mode::kDeterministic && config.stop_eps &&
                           rec.stationarity <= *config.stop_eps &&
                           std::sqrt(rec.c_norm1) <= *config.stop_eps;
    if (!converged) x = rec.next_x();
    result.trace.push_back(std::move(rec));
    if (converged) {
      sum.stopped_early = true;
      break;
    }
  }

  sum.iterations = static_cast<int>(result.trace.size());
  sum.tau_final = state.tau;
  sum.xi_final = state.xi;
  sum.s_count = state.s_count;
  sum.r_count = state.r_count;
  sum.x_final = x;
  if (problem.box && !problem.box->contains(x)) sum.box_exited = true;
  if (sum.box_exited) sum.warnings.push_back("iterates left the box on which L and Gamma hold");
  if (config.beta.kind == BetaSchedule::Kind::kConstant &&
      config.beta.gamma > sum.a_min_estimate / (sum.a_max + config.theta)) {
    sum.gamma_exceeds_bound = true;
    sum.warnings.push_back("gamma exceeds the running estimate of A_min/(A_max+theta)");
  }

  result.k_star = sample_kstar(std::span<const double>(betas.data(), result.trace.size()),
                               kstar_rng);
  result.x_at_kstar = result.trace[result.k_star].x;
  return result;
}

}  // namespace ssqp
