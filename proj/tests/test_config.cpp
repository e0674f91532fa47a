#include <string>

#include "doctest.h"
#include "ssqp/config.hpp"
#include "ssqp/error.hpp"

using namespace ssqp;
using nlohmann::json;

namespace {

std::string config_error(const json& j) {
  try {
    parse_solve_config(j);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("defaults") {
  SolveConfig c = parse_solve_config(json::object());
  CHECK(c.problem.name == "quadratic");
  CHECK(c.algorithm.mode == Mode::kDeterministic);
  CHECK(c.algorithm.merit.eps_tau == c.algorithm.merit.eps_xi);
  CHECK(c.algorithm.beta.kind == BetaSchedule::Kind::kConstant);
  CHECK(c.algorithm.beta.gamma == 0.5);
  CHECK(c.algorithm.hessian.kind == HessianPolicy::Kind::kIdentity);
  CHECK(c.output.trace == "trace.csv");
}

TEST_CASE("full config") {
  json j = json::parse(R"({
    "schema_version": 1,
    "problem": {"name": "random_licq", "n": 8, "m": 3, "seed": 5},
    "algorithm": {
      "k_max": 50, "sigma": 0.4, "eps_tau": 0.05, "eps_xi": 0.02, "tau_init": 2,
      "xi_init": 0.5, "theta": 0.3, "seed": 11, "mode": "stochastic",
      "noise": {"kind": "symmetric_bounded", "M": 2, "radius": 3},
      "beta": {"kind": "fixed", "beta": 0.2},
      "hessian": {"kind": "regularized", "zeta": 0.1},
      "strict_curvature": true
    },
    "output": {"dir": "out", "trace": "t.csv", "summary": "s.json"}
  })");
  SolveConfig c = parse_solve_config(j);
  CHECK(c.problem.n == 8);
  CHECK(c.problem.build().m == 3);
  CHECK(c.algorithm.k_max == 50);
  CHECK(c.algorithm.merit.sigma == 0.4);
  CHECK(c.algorithm.merit.tau_init == 2.0);
  CHECK(c.algorithm.mode == Mode::kStochastic);
  CHECK(c.algorithm.noise.kind == NoiseKind::kSymmetricBounded);
  CHECK(c.algorithm.noise.radius == 3.0);
  CHECK(c.algorithm.beta.beta == 0.2);
  CHECK(c.algorithm.hessian.kind == HessianPolicy::Kind::kRegularizedProblemHessian);
  CHECK(c.algorithm.hessian.zeta == 0.1);
  CHECK(c.algorithm.strict_curvature);
  CHECK(c.output.summary == "s.json");
}

TEST_CASE("range violations carry the field path") {
  CHECK(contains(config_error(json::parse(R"({"algorithm": {"eps_tau": 1.5}})")),
                 "algorithm.eps_tau"));
  CHECK(contains(config_error(json::parse(R"({"algorithm": {"sigma": 0}})")), "algorithm.sigma"));
  CHECK(contains(config_error(json::parse(R"({"algorithm": {"beta": {"gamma": 2}}})")),
                 "algorithm.beta.gamma"));
  CHECK(contains(config_error(json::parse(R"({"problem": {"n": 2, "m": 2}})")), "problem.n"));
  CHECK(contains(config_error(json::parse(R"({"algorithm": {"k_max": -1}})")), "algorithm.k_max"));
  CHECK(contains(config_error(json::parse(R"({"algorithm": {"noise": {"M": 1}}})")),
                 "only valid in stochastic mode"));
  CHECK(contains(config_error(json::parse(
                     R"({"algorithm": {"mode": "stochastic", "noise": {"kind": "gaussian", "M": -1}}})")),
                 "algorithm.noise.M"));
}

TEST_CASE("unknown keys are rejected") {
  CHECK(contains(config_error(json::parse(R"({"algorithm": {"sigmaa": 0.5}})")),
                 "algorithm.sigmaa: unknown key"));
  CHECK(contains(config_error(json::parse(R"({"extra": 1})")), "extra: unknown key"));
  CHECK(contains(config_error(json::parse(R"({"output": {"directory": "x"}})")),
                 "output.directory"));
}

TEST_CASE("type errors") {
  CHECK(contains(config_error(json::parse(R"({"algorithm": {"k_max": 1.5}})")), "expected an integer"));
  CHECK(contains(config_error(json::parse(R"({"algorithm": {"sigma": "half"}})")), "expected a number"));
  CHECK(contains(config_error(json::parse(R"({"problem": []})")), "expected an object"));
  CHECK(contains(config_error(json::parse(R"({"schema_version": 2})")), "schema_version"));
}

TEST_CASE("explicit beta needs k_max+1 entries") {
  CHECK_NOTHROW(parse_solve_config(json::parse(
      R"({"algorithm": {"k_max": 2, "beta": {"kind": "explicit", "values": [0.1, 0.2, 0.3]}}})")));
  CHECK(contains(config_error(json::parse(
                     R"({"algorithm": {"k_max": 3, "beta": {"kind": "explicit", "values": [0.1]}}})")),
                 "algorithm.beta.values"));
}

TEST_CASE("experiment spec") {
  ExperimentSpec s = parse_experiment_spec(json::parse(
      R"({"k_max_list": [10, 100], "replications": 3, "seed": 4, "output": {"dir": "o"}})"));
  CHECK(s.k_max_list == std::vector<int>{10, 100});
  CHECK(s.algorithm.mode == Mode::kStochastic);
  CHECK(s.replications == 3);
  auto bad = [](const char* text) {
    try {
      parse_experiment_spec(json::parse(text));
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(contains(bad(R"({"k_max_list": [100, 10]})"), "strictly increasing"));
  CHECK(contains(bad(R"({"k_max_list": [10], "replications": 0})"), "replications"));
  CHECK(contains(bad(R"({})"), "k_max_list"));
}

TEST_CASE("verify params") {
  VerifyParams d = parse_verify_params(json::object());
  CHECK(d.default_battery);
  VerifyParams e = parse_verify_params(json::parse(R"({"checks": []})"));
  CHECK_FALSE(e.default_battery);
  CHECK(e.checks.empty());
  CHECK_THROWS_AS(parse_verify_params(json::parse(R"({"checks": [1]})")), Error);
}
