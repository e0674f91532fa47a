#include <cmath>
#include <map>

#include "doctest.h"
#include "ssqp/driver.hpp"
#include "ssqp/error.hpp"
#include "support.hpp"

using namespace ssqp;

namespace {

// Stepsize rule rewritten from its definition, case by case.
Stepsize stepsize_oracle(double dq, double tau, double xi, double beta, double L, double Gamma,
                         double dd, double c, double theta) {
  const double lo = beta * xi * tau / (tau * L + Gamma);
  const double hi = lo + theta * beta * beta;
  auto proj = [&](double a) { return a < lo ? lo : (a > hi ? hi : a); };
  Stepsize s{};
  s.alpha_hat_init = beta * dq / ((tau * L + Gamma) * dd);
  s.alpha_tilde_init = s.alpha_hat_init - 4.0 * c / ((tau * L + Gamma) * dd);
  s.alpha_hat = proj(s.alpha_hat_init);
  s.alpha_tilde = proj(s.alpha_tilde_init);
  if (s.alpha_hat < 1.0) s.alpha = s.alpha_hat;
  if (s.alpha_tilde <= 1.0 && 1.0 <= s.alpha_hat) s.alpha = 1.0;
  if (s.alpha_tilde > 1.0) s.alpha = s.alpha_tilde;
  return s;
}

AlgoConfig stochastic_config(int k_max, std::uint64_t seed, double gamma = 0.5) {
  AlgoConfig c;
  c.k_max = k_max;
  c.seed = seed;
  c.mode = Mode::kStochastic;
  c.noise = NoiseModel::gaussian(1.0);
  c.beta = BetaSchedule::constant(gamma);
  return c;
}

}  // namespace

TEST_CASE("compute_stepsize examples") {
  auto a = compute_stepsize(123.0, 1.0, 1.0, 0.1, 1.0, 0.0, 2.0, 0.5, 0.0);
  CHECK(a.alpha_hat == doctest::Approx(0.1));
  CHECK(a.alpha_tilde == doctest::Approx(0.1));
  CHECK(a.alpha == doctest::Approx(0.1));

  // β=1, ξτ/(τL+Γ) = 0.2 with ξ=0.2, τ=1, L=1, Γ=0; α̂_init = Δq/‖d‖² = 0.5.
  auto b = compute_stepsize(0.5, 1.0, 0.2, 1.0, 1.0, 0.0, 1.0, 0.0, 0.5);
  CHECK(b.alpha_hat_init == doctest::Approx(0.5));
  CHECK(b.alpha_hat == doctest::Approx(0.5));
  CHECK(b.alpha_tilde == doctest::Approx(0.5));
  CHECK(b.alpha == doctest::Approx(0.5));

  Rng rng = make_rng(30);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int t = 0; t < 200; ++t) {
    const double dq = u(rng), tau = u(rng), xi = u(rng), beta = std::min(1.0, u(rng));
    auto s = compute_stepsize(dq, tau, xi, beta, u(rng), u(rng), u(rng), 0.0, u(rng));
    CHECK(s.alpha_hat_init == s.alpha_tilde_init);
    CHECK(s.alpha_hat == s.alpha_tilde);
  }
}

TEST_CASE("compute_stepsize agrees with the case-by-case oracle") {
  Rng rng = make_rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::map<int, int> cases;
  for (int t = 0; t < 5000; ++t) {
    const double dq = 5 * u(rng), tau = 0.05 + u(rng), xi = 0.05 + 2 * u(rng);
    const double beta = 0.05 + 0.95 * u(rng), L = 0.1 + 2 * u(rng), G = u(rng);
    const double dd = 0.01 + u(rng), c = u(rng), theta = 3 * u(rng);
    auto s = compute_stepsize(dq, tau, xi, beta, L, G, dd, c, theta);
    auto o = stepsize_oracle(dq, tau, xi, beta, L, G, dd, c, theta);
    CHECK(s.alpha == o.alpha);
    CHECK(s.alpha_hat == o.alpha_hat);
    CHECK(s.alpha_tilde == o.alpha_tilde);
    cases[s.alpha_hat < 1 ? 0 : (s.alpha_tilde <= 1 ? 1 : 2)]++;
  }
  // All three branches were exercised.
  CHECK(cases.size() == 3);
}

TEST_CASE("compute_stepsize tie resolves to one") {
  // α̂ = α̃ = 1 exactly: c = 0 and α̂_init = 1 inside the interval.
  auto s = compute_stepsize(1.0, 1.0, 0.5, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0);
  CHECK(s.alpha_hat == 1.0);
  CHECK(s.alpha_tilde == 1.0);
  CHECK(s.alpha == 1.0);
}

TEST_CASE("compute_stepsize errors") {
  try {
    compute_stepsize(1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0);
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDivisionByZero);
  }
  try {
    compute_stepsize(1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0, -1.0);
    FAIL("expected InvalidInterval");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidInterval);
  }
}

TEST_CASE("sample_kstar") {
  Rng rng = make_rng(32);
  std::vector<double> one = {0.3};
  CHECK(sample_kstar(one, rng) == 0);
  std::vector<double> b = {1, 1, 2};
  const int draws = 100000;
  std::vector<int> counts(3, 0);
  for (int t = 0; t < draws; ++t) counts[sample_kstar(b, rng)]++;
  const double p[] = {0.25, 0.25, 0.5};
  for (int i = 0; i < 3; ++i) {
    const double se = std::sqrt(p[i] * (1 - p[i]) / draws);
    CHECK(std::abs(counts[i] / double(draws) - p[i]) <= 3 * se);
  }
  std::vector<double> empty;
  try {
    sample_kstar(empty, rng);
    FAIL("expected EmptySchedule");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptySchedule);
  }
}

TEST_CASE("k* is uniform under a constant schedule") {
  Problem p = make_quadratic(3, 1, 1);
  const int runs = 10000, k_max = 9;
  std::vector<int> counts(k_max + 1, 0);
  for (int r = 0; r < runs; ++r) {
    RunResult res = run(p, stochastic_config(k_max, static_cast<std::uint64_t>(r)));
    counts[res.k_star]++;
  }
  const double expected = runs / double(k_max + 1);
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 99.9% quantile of chi-square with 9 degrees of freedom.
  CHECK(chi2 <= 27.877);
}

TEST_CASE("BetaSchedule") {
  auto c = BetaSchedule::constant(0.5).betas(99);
  CHECK(c.size() == 100);
  CHECK(c[0] == doctest::Approx(0.05));
  auto f = BetaSchedule::fixed(0.7).betas(3);
  CHECK(f == std::vector<double>{0.7, 0.7, 0.7, 0.7});
  CHECK_THROWS_AS(BetaSchedule::explicit_values({0.5, 1.5}).betas(1), Error);
  CHECK_THROWS_AS(BetaSchedule::explicit_values({0.5}).betas(1), Error);
}

TEST_CASE("zero step at a stationary feasible point") {
  Problem p = make_quadratic(4, 2, 3);
  AlgoConfig cfg;
  MeritState st = MeritState::initial(cfg.merit);
  st.tau = 0.7;
  st.xi = 0.3;
  Rng rng = make_rng(0);
  IterationRecord r = step_once(p, cfg, st, p.solution->x, 0, 0.5, rng);
  CHECK(r.d.norm() == 0.0);
  CHECK(r.tau_trial.is_infinite());
  CHECK(r.alpha == 1.0);
  CHECK(r.tau == 0.7);
  CHECK(r.xi == 0.3);
  CHECK_FALSE(r.tau_decreased);
  CHECK((r.next_x() - p.solution->x).norm() == 0.0);
  CHECK(r.stationarity <= 1e-10);
}

TEST_CASE("rounding-level steps after convergence keep the parameters positive") {
  // Noiseless fixed-step runs reach steps of size ~1e-8 where Δq is rounding
  // noise; these must fall into the zero-step branch instead of flipping ξ.
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Problem p = make_quadratic(4, 2, seed);
    AlgoConfig cfg;
    cfg.k_max = 400;
    cfg.mode = Mode::kStochastic;
    cfg.noise = NoiseModel::none();
    cfg.beta = BetaSchedule::fixed(1.0);
    RunResult res = run(p, cfg);
    for (const IterationRecord& r : res.trace) {
      CHECK(r.xi > 0.0);
      CHECK(r.tau > 0.0);
      CHECK(r.alpha > 0.0);
    }
    CHECK((res.summary.x_final - p.solution->x).norm() <= 1e-6);
  }
}

TEST_CASE("deterministic steps coincide with the true quantities") {
  Problem p = make_random_licq(6, 2, 4);
  AlgoConfig cfg;
  cfg.k_max = 30;
  cfg.beta = BetaSchedule::fixed(1.0);
  RunResult res = run(p, cfg);
  for (const IterationRecord& r : res.trace) {
    CHECK(r.d == r.d_true);
    CHECK(r.y == r.y_true);
    CHECK(r.delta_q_stoch == r.delta_q_true);
    CHECK(r.g == p.grad_f(r.x));
  }
}

TEST_CASE("one stochastic step is unbiased in d") {
  Problem p = make_quadratic(5, 2, 5);
  AlgoConfig cfg = stochastic_config(0, 0);
  Rng rng = make_rng(33);
  const int reps = 10000;
  std::vector<std::vector<double>> coords(p.n);
  Vec d_true;
  for (int t = 0; t < reps; ++t) {
    MeritState st = MeritState::initial(cfg.merit);
    IterationRecord r = step_once(p, cfg, st, p.x0, 0, 0.1, rng);
    d_true = r.d_true;
    for (int i = 0; i < p.n; ++i) coords[i].push_back(r.d[i]);
  }
  for (int i = 0; i < p.n; ++i) {
    auto mo = testing::moments(coords[i]);
    CHECK(std::abs(mo.mean - d_true[i]) <= 3.0 * mo.se);
  }
}

TEST_CASE("true quantities") {
  Problem p = make_quadratic(5, 2, 6);
  const Mat I = Mat::Identity(5, 5);
  TrueQuantities at_sol = true_quantities(p, p.solution->x, I, 0.5);
  CHECK(at_sol.d_true.norm() <= 1e-10);
  CHECK(at_sol.stationarity <= 1e-10);

  Rng rng = make_rng(34);
  Problem q = make_random_licq(7, 3, 2);
  for (int t = 0; t < 20; ++t) {
    const Vec x = testing::random_vec(7, rng);
    const Mat H = testing::random_spd(7, rng);
    TrueQuantities tq = true_quantities(q, x, H, 0.5);
    const double lhs = (q.grad_f(x) + q.jac_c(x).transpose() * tq.y_true).norm();
    CHECK(std::abs(lhs - (H * tq.d_true).norm()) <= 1e-10 * (1.0 + lhs));
    CHECK(tq.stationarity == doctest::Approx(lhs).epsilon(1e-12));
  }

  // Feasible points of the linear constraints: τ_trial_true = ∞.
  Problem lin = make_quadratic(6, 2, 7);
  const Mat A = lin.jac_c(lin.x0);
  const Mat Z = null_space_basis(A);
  for (int t = 0; t < 10; ++t) {
    Vec x = lin.solution->x + Z * testing::random_vec(4, rng);
    REQUIRE(lin.c(x).lpNorm<1>() <= 1e-12);
    const Vec exact_feasible = x;
    TrueQuantities tq = true_quantities(lin, exact_feasible, Mat::Identity(6, 6), 0.5);
    const double denom = lin.grad_f(x).dot(tq.d_true) + tq.d_true.squaredNorm();
    CHECK(denom <= 1e-10);
    if (tq.c_norm1 == 0.0) CHECK(tq.tau_trial_true.is_infinite());
  }
}

TEST_CASE("run basics") {
  Problem p = make_quadratic(4, 2, 8);
  RunResult r0 = run(p, stochastic_config(0, 1));
  CHECK(r0.trace.size() == 1);
  CHECK(r0.k_star == 0);

  RunResult r = run(p, stochastic_config(50, 2));
  CHECK(r.trace.size() == 51);
  CHECK(r.k_star >= 0);
  CHECK(r.k_star <= 50);
  CHECK(r.x_at_kstar == r.trace[r.k_star].x);
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    CHECK(r.trace[k].x == r.trace[k - 1].next_x());
  }
}

TEST_CASE("deterministic mode reaches the analytic KKT point") {
  Problem p = make_quadratic(4, 2, 9);
  AlgoConfig cfg;
  cfg.k_max = 100000;
  cfg.beta = BetaSchedule::fixed(1.0);
  cfg.stop_eps = 1e-6;
  RunResult r = run(p, cfg);
  REQUIRE(r.summary.stopped_early);
  const IterationRecord& last = r.trace.back();
  CHECK(last.stationarity <= 1e-6);
  CHECK(std::sqrt(last.c_norm1) <= 1e-6);
  CHECK((last.x - p.solution->x).norm() <= 1e-5);
  CHECK(r.summary.iterations == static_cast<int>(r.trace.size()));
}

TEST_CASE("per-iteration invariants of stochastic runs") {
  const std::vector<Problem> problems = {make_quadratic(6, 2, 10), make_random_licq(6, 2, 11),
                                         make_rosenbrock_sphere()};
  for (const Problem& p : problems) {
    INFO(p.name);
    AlgoConfig cfg = stochastic_config(400, 12);
    if (p.name == "rosenbrock_sphere") cfg.noise = NoiseModel::gaussian(0.01);
    RunResult res = run(p, cfg);
    double tau_prev = cfg.merit.tau_init, xi_prev = cfg.merit.xi_init;
    for (const IterationRecord& r : res.trace) {
      // Model reduction guarantee at τ_k, and at T̂_k for the true step.
      if (r.d.norm() > 0) {
        const double need = 0.5 * r.tau * std::max(r.curvature, 0.0) + cfg.merit.sigma * r.c_norm1;
        CHECK(r.delta_q_stoch >= need - 1e-12 * (1 + std::abs(need)));
      }
      CHECK(r.tau_hat <= r.tau);
      CHECK(r.tau_hat <= r.tau_trial_true);
      // Monotone parameters with the prescribed decrease factors.
      CHECK(r.tau <= tau_prev);
      CHECK(r.xi <= xi_prev);
      if (r.tau_decreased) CHECK(r.tau <= (1 - cfg.merit.eps_tau) * tau_prev * (1 + 1e-15));
      if (r.xi_decreased) CHECK(r.xi <= (1 - cfg.merit.eps_xi) * xi_prev * (1 + 1e-15));
      // {k : T̂_k < τ_k} ⊆ {k : τ_trial_true,k < τ_{k-1}}
      if (r.tau_hat < r.tau) CHECK(tau_prev > r.tau_trial_true.value());
      // Stepsize lies in the projection interval or equals one.
      const double lo = r.beta * r.xi * r.tau / (r.tau * p.L + p.Gamma);
      const double hi = lo + cfg.theta * r.beta * r.beta;
      const bool in_interval = r.alpha >= lo * (1 - 1e-15) && r.alpha <= hi * (1 + 1e-15);
      CHECK((in_interval || r.alpha == 1.0));
      tau_prev = r.tau;
      xi_prev = r.xi;
    }
  }
}

TEST_CASE("true model reduction guarantee at the auxiliary merit parameter") {
  Problem p = make_random_licq(6, 2, 13);
  AlgoConfig cfg = stochastic_config(300, 14);
  RunResult res = run(p, cfg);
  const Mat H = Mat::Identity(p.n, p.n);
  for (const IterationRecord& r : res.trace) {
    if (r.d_true.norm() == 0.0) continue;
    const double dq = delta_q(r.tau_hat, p.grad_f(r.x), H, r.d_true, r.c_norm1);
    const double need =
        0.5 * r.tau_hat * std::max(r.curvature_true, 0.0) + cfg.merit.sigma * r.c_norm1;
    CHECK(dq >= need - 1e-12 * (1 + std::abs(need)));
  }
}

TEST_CASE("merit decrease surrogate on linearly constrained quadratics") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Problem p = make_quadratic(6, 2, seed);
    RunResult res = run(p, stochastic_config(300, seed + 100));
    for (const IterationRecord& r : res.trace) {
      const Vec grad = p.grad_f(r.x);
      const double lhs = r.phi_after - r.phi_before;
      const double rhs = -r.alpha * r.delta_q_true + 0.5 * r.alpha * r.beta * r.delta_q_stoch +
                         r.alpha * r.tau * grad.dot(r.d - r.d_true);
      CHECK(lhs <= rhs + 1e-8);
    }
  }
}

TEST_CASE("reproducibility") {
  Problem p = make_random_licq(5, 2, 15);
  RunResult a = run(p, stochastic_config(100, 77));
  RunResult b = run(p, stochastic_config(100, 77));
  RunResult c = run(p, stochastic_config(100, 78));
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) CHECK(a.trace[k].x == b.trace[k].x);
  CHECK(a.k_star == b.k_star);
  CHECK(a.trace.back().x != c.trace.back().x);

  AlgoConfig d1;
  d1.k_max = 40;
  d1.seed = 1;
  AlgoConfig d2 = d1;
  d2.seed = 2;
  RunResult x1 = run(p, d1), x2 = run(p, d2);
  for (std::size_t k = 0; k < x1.trace.size(); ++k) CHECK(x1.trace[k].x == x2.trace[k].x);
}

TEST_CASE("Hessian policies") {
  Problem rb = make_rosenbrock_sphere();
  AlgoConfig cfg;
  cfg.k_max = 20;
  cfg.hessian.kind = HessianPolicy::Kind::kRegularizedProblemHessian;
  cfg.strict_curvature = true;
  cfg.curvature_zeta = cfg.hessian.zeta;
  RunResult r = run(rb, cfg);
  CHECK(r.trace.size() == 21);

  int calls = 0;
  AlgoConfig hook;
  hook.k_max = 5;
  hook.hessian.kind = HessianPolicy::Kind::kUserHook;
  hook.hessian.hook = [&](const Vec& x, int k) {
    CHECK(k == calls);
    CHECK(x.size() == 2);
    ++calls;
    return Mat(2.0 * Mat::Identity(2, 2));
  };
  run(rb, hook);
  CHECK(calls == 6);

  AlgoConfig bad = hook;
  bad.strict_curvature = true;
  bad.hessian.hook = [](const Vec&, int) { return Mat(-Mat::Identity(2, 2)); };
  try {
    run(rb, bad);
    FAIL("expected CurvatureViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCurvatureViolation);
  }
}

TEST_CASE("rank loss aborts with the iteration number") {
  Problem p;
  p.name = "degenerate";
  p.n = 2;
  p.m = 1;
  p.f = [](const Vec& x) { return x.squaredNorm(); };
  p.grad_f = [](const Vec& x) -> Vec { return 2 * x; };
  p.c = [](const Vec& x) -> Vec { return Vec::Constant(1, x[1] * x[1] - 1); };
  p.jac_c = [](const Vec& x) -> Mat { return (Mat(1, 2) << 0.0, 2 * x[1]).finished(); };
  p.L = 2;
  p.Gamma = 2;
  p.x0 = (Vec(2) << 1.0, 0.0).finished();
  try {
    run(p, AlgoConfig{});
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularSystem);
    CHECK(std::string(e.what()).find("iteration 0") != std::string::npos);
  }
}

TEST_CASE("mini-batch noise drives a run") {
  Problem p = make_quadratic(5, 2, 16);
  AlgoConfig cfg = stochastic_config(200, 3);
  cfg.noise = NoiseModel::mini_batch(4);
  RunResult r = run(p, cfg);
  CHECK(r.trace.size() == 201);
  CHECK(r.trace.back().stationarity < r.trace.front().stationarity);
}

TEST_CASE("summary bookkeeping") {
  Problem p = make_quadratic(5, 2, 17);
  RunResult r = run(p, stochastic_config(200, 4));
  int s = 0, rr = 0;
  double tmin = 1.0;
  for (const auto& rec : r.trace) {
    s += rec.tau_decreased;
    rr += rec.xi_decreased;
    tmin = std::min(tmin, rec.tau);
  }
  CHECK(r.summary.s_count == s);
  CHECK(r.summary.r_count == rr);
  CHECK(r.summary.tau_min_empirical == tmin);
  CHECK(r.summary.tau_final == r.trace.back().tau);
  CHECK(r.summary.a_max == doctest::Approx(1.0 / p.L));
  CHECK(r.summary.gamma_exceeds_bound);
}
