#include <sstream>

#include "doctest.h"
#include "ssqp/driver.hpp"
#include "ssqp/error.hpp"
#include "ssqp/trace_io.hpp"

using namespace ssqp;

namespace {

void check_same(const IterationRecord& a, const IterationRecord& b) {
  CHECK(a.k == b.k);
  CHECK(a.x == b.x);
  CHECK(a.g == b.g);
  CHECK(a.d == b.d);
  CHECK(a.y == b.y);
  CHECK(a.tau_trial == b.tau_trial);
  CHECK(a.tau == b.tau);
  CHECK(a.xi_trial == b.xi_trial);
  CHECK(a.xi == b.xi);
  CHECK(a.alpha_hat_init == b.alpha_hat_init);
  CHECK(a.alpha_tilde_init == b.alpha_tilde_init);
  CHECK(a.alpha_hat == b.alpha_hat);
  CHECK(a.alpha_tilde == b.alpha_tilde);
  CHECK(a.alpha == b.alpha);
  CHECK(a.f == b.f);
  CHECK(a.c_norm1 == b.c_norm1);
  CHECK(a.tau_decreased == b.tau_decreased);
  CHECK(a.xi_decreased == b.xi_decreased);
  CHECK(a.d_true == b.d_true);
  CHECK(a.y_true == b.y_true);
  CHECK(a.tau_trial_true == b.tau_trial_true);
  CHECK(a.tau_hat == b.tau_hat);
  CHECK(a.delta_q_stoch == b.delta_q_stoch);
  CHECK(a.delta_q_true == b.delta_q_true);
  CHECK(a.stationarity == b.stationarity);
  CHECK(a.phi_before == b.phi_before);
  CHECK(a.phi_after == b.phi_after);
  CHECK(a.beta == b.beta);
  CHECK(a.curvature == b.curvature);
  CHECK(a.curvature_true == b.curvature_true);
}

}  // namespace

TEST_CASE("trace columns follow the record field order") {
  auto cols = trace_columns(2, 1);
  REQUIRE(cols.size() >= 6);
  CHECK(cols[0] == "schema_version");
  CHECK(cols[1] == "k");
  CHECK(cols[2] == "x[0]");
  CHECK(cols[3] == "x[1]");
  CHECK(cols[4] == "g[0]");
  CHECK(cols.back() == "curvature_true");
}

TEST_CASE("trace CSV round-trips field for field") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Problem p = make_random_licq(5, 2, seed);
    AlgoConfig cfg;
    cfg.k_max = 60;
    cfg.seed = seed;
    cfg.mode = Mode::kStochastic;
    cfg.noise = NoiseModel::gaussian(1.0);
    RunResult r = run(p, cfg);
    std::stringstream buf;
    write_trace_csv(buf, r.trace, p.n, p.m);
    auto back = read_trace_csv(buf);
    REQUIRE(back.size() == r.trace.size());
    for (std::size_t k = 0; k < back.size(); ++k) check_same(r.trace[k], back[k]);

    std::stringstream again;
    write_trace_csv(again, back, p.n, p.m);
    std::stringstream first;
    write_trace_csv(first, r.trace, p.n, p.m);
    CHECK(again.str() == first.str());
  }
}

TEST_CASE("infinite extended reals survive the round trip") {
  Problem p = make_quadratic(3, 1, 4);
  AlgoConfig cfg;
  cfg.k_max = 2;
  MeritState st = MeritState::initial(cfg.merit);
  Rng rng = make_rng(1);
  IterationRecord rec = step_once(p, cfg, st, p.solution->x, 0, 1.0, rng);
  REQUIRE(rec.tau_trial.is_infinite());
  std::stringstream buf;
  write_trace_csv(buf, {rec}, 3, 1);
  CHECK(buf.str().find(",inf,") != std::string::npos);
  auto back = read_trace_csv(buf);
  CHECK(back.at(0).tau_trial.is_infinite());
}

TEST_CASE("malformed traces are rejected") {
  std::stringstream empty;
  CHECK_THROWS_AS(read_trace_csv(empty), Error);
  std::stringstream bad_header("k,x[0]\n0,1\n");
  CHECK_THROWS_AS(read_trace_csv(bad_header), Error);

  Problem p = make_quadratic(3, 1, 5);
  AlgoConfig cfg;
  cfg.k_max = 1;
  RunResult r = run(p, cfg);
  std::stringstream buf;
  write_trace_csv(buf, r.trace, 3, 1);
  std::string text = buf.str();
  // Drop the last two columns of the final row.
  std::string truncated = text.substr(0, text.rfind(','));
  truncated = truncated.substr(0, truncated.rfind(',')) + "\n";
  std::stringstream in(truncated);
  try {
    read_trace_csv(in);
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIoError);
  }
}
