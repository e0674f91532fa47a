#include "ssqp/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ssqp/error.hpp"
#include "json_reader.hpp"

namespace ssqp {

using nlohmann::json;

using detail::fail;
using detail::ObjectReader;

namespace {

void check_open_unit(const ObjectReader& r, const std::string& key, double v) {
  if (!(v > 0.0 && v < 1.0)) fail(r.field(key), "must lie in (0,1)");
}

void check_positive(const ObjectReader& r, const std::string& key, double v) {
  if (!(v > 0.0)) fail(r.field(key), "must be positive");
}

void check_schema_version(ObjectReader& r) {
  long long v = r.integer("schema_version", kConfigSchemaVersion);
  if (v != kConfigSchemaVersion) {
    fail(r.field("schema_version"), "unsupported version " + std::to_string(v));
  }
}

BetaSchedule parse_beta(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  std::string kind = r.string("kind", "constant");
  BetaSchedule b;
  if (kind == "constant") {
    b = BetaSchedule::constant(r.number("gamma", 0.5));
    if (!(b.gamma > 0.0 && b.gamma <= 1.0)) fail(r.field("gamma"), "must lie in (0,1]");
  } else if (kind == "fixed") {
    b = BetaSchedule::fixed(r.number("beta", 1.0));
    if (!(b.beta > 0.0 && b.beta <= 1.0)) fail(r.field("beta"), "must lie in (0,1]");
  } else if (kind == "explicit") {
    const json& v = r.at("values");
    if (!v.is_array() || v.empty()) fail(r.field("values"), "expected a nonempty array");
    std::vector<double> values;
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::string p = r.field("values") + "[" + std::to_string(i) + "]";
      if (!v[i].is_number()) fail(p, "expected a number");
      double x = v[i].get<double>();
      if (!(x > 0.0 && x <= 1.0)) fail(p, "must lie in (0,1]");
      values.push_back(x);
    }
    b = BetaSchedule::explicit_values(std::move(values));
  } else {
    fail(r.field("kind"), "expected constant, fixed or explicit");
  }
  r.finish();
  return b;
}

HessianPolicy parse_hessian(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  std::string kind = r.string("kind", "identity");
  HessianPolicy h;
  if (kind == "identity") {
    h.kind = HessianPolicy::Kind::kIdentity;
  } else if (kind == "regularized") {
    h.kind = HessianPolicy::Kind::kRegularizedProblemHessian;
    h.zeta = r.number("zeta", h.zeta);
    h.shift_init = r.number("shift_init", h.shift_init);
    h.growth = r.number("growth", h.growth);
    h.max_shifts = static_cast<int>(r.integer("max_shifts", h.max_shifts));
    check_positive(r, "zeta", h.zeta);
    check_positive(r, "shift_init", h.shift_init);
    if (!(h.growth > 1.0)) fail(r.field("growth"), "must exceed 1");
    if (h.max_shifts < 1) fail(r.field("max_shifts"), "must be at least 1");
  } else {
    fail(r.field("kind"), "expected identity or regularized");
  }
  r.finish();
  return h;
}

}  // namespace

ProblemSpec parse_problem_spec(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ProblemSpec p;
  p.name = r.string("name", p.name);
  if (p.name != "quadratic" && p.name != "rosenbrock_sphere" && p.name != "random_licq") {
    fail(r.field("name"), "unknown problem '" + p.name + "'");
  }
  if (p.name == "rosenbrock_sphere") {
    p.n = 2;
    p.m = 1;
  }
  p.n = static_cast<int>(r.integer("n", p.n));
  p.m = static_cast<int>(r.integer("m", p.m));
  p.seed = r.seed("seed", p.seed);
  if (p.name == "rosenbrock_sphere" && (p.n != 2 || p.m != 1)) {
    fail(r.field("n"), "rosenbrock_sphere has n=2, m=1");
  }
  if (p.m < 1) fail(r.field("m"), "must be at least 1");
  if (p.n <= p.m) fail(r.field("n"), "must exceed m");
  if (p.name == "quadratic") {
    p.quadratic.homogeneous = r.boolean("homogeneous", p.quadratic.homogeneous);
    p.quadratic.components = static_cast<int>(r.integer("components", p.quadratic.components));
    p.quadratic.eig_min = r.number("eig_min", p.quadratic.eig_min);
    p.quadratic.eig_max = r.number("eig_max", p.quadratic.eig_max);
    if (p.quadratic.components < 1) fail(r.field("components"), "must be at least 1");
    check_positive(r, "eig_min", p.quadratic.eig_min);
    if (!(p.quadratic.eig_max >= p.quadratic.eig_min)) {
      fail(r.field("eig_max"), "must be at least eig_min");
    }
  }
  r.finish();
  return p;
}

Problem ProblemSpec::build() const {
  if (name == "quadratic") return make_quadratic(n, m, seed, quadratic);
  return make_problem(name, n, m, seed);
}

NoiseModel parse_noise(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  std::string kind = r.string("kind", "gaussian");
  NoiseModel noise;
  if (kind == "none") {
    noise = NoiseModel::none();
  } else if (kind == "gaussian") {
    noise = NoiseModel::gaussian(r.number("M", 1.0));
    if (!(noise.M >= 0.0)) fail(r.field("M"), "must be nonnegative");
  } else if (kind == "symmetric_bounded") {
    noise = NoiseModel::symmetric_bounded(r.number("M", 1.0), r.number("radius", 1.0));
    if (!(noise.M >= 0.0)) fail(r.field("M"), "must be nonnegative");
    check_positive(r, "radius", noise.radius);
  } else if (kind == "mini_batch") {
    noise = NoiseModel::mini_batch(static_cast<int>(r.integer("batch", 1)));
    if (noise.batch < 1) fail(r.field("batch"), "must be at least 1");
  } else {
    fail(r.field("kind"), "expected none, gaussian, symmetric_bounded or mini_batch");
  }
  r.finish();
  return noise;
}

AlgoConfig parse_algo_config(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  AlgoConfig a;
  long long k_max = r.integer("k_max", a.k_max);
  if (k_max < 0 || k_max > 100000000) fail(r.field("k_max"), "must lie in [0, 1e8]");
  a.k_max = static_cast<int>(k_max);
  a.merit.sigma = r.number("sigma", a.merit.sigma);
  a.merit.eps_tau = r.number("eps_tau", a.merit.eps_tau);
  a.merit.eps_xi = r.number("eps_xi", a.merit.eps_xi);
  a.merit.tau_init = r.number("tau_init", a.merit.tau_init);
  a.merit.xi_init = r.number("xi_init", a.merit.xi_init);
  check_open_unit(r, "sigma", a.merit.sigma);
  check_open_unit(r, "eps_tau", a.merit.eps_tau);
  check_open_unit(r, "eps_xi", a.merit.eps_xi);
  check_positive(r, "tau_init", a.merit.tau_init);
  check_positive(r, "xi_init", a.merit.xi_init);
  a.theta = r.number("theta", a.theta);
  if (!(a.theta >= 0.0)) fail(r.field("theta"), "must be nonnegative");
  if (r.has("beta")) a.beta = parse_beta(r.at("beta"), r.field("beta"));
  if (r.has("hessian")) a.hessian = parse_hessian(r.at("hessian"), r.field("hessian"));
  a.seed = r.seed("seed", a.seed);

  std::string mode = r.string("mode", "deterministic");
  if (mode == "deterministic") {
    a.mode = Mode::kDeterministic;
  } else if (mode == "stochastic") {
    a.mode = Mode::kStochastic;
    a.noise = NoiseModel::gaussian(1.0);
  } else {
    fail(r.field("mode"), "expected deterministic or stochastic");
  }
  if (r.has("noise")) {
    if (a.mode != Mode::kStochastic) fail(r.field("noise"), "only valid in stochastic mode");
    a.noise = parse_noise(r.at("noise"), r.field("noise"));
  }
  if (r.has("stop_eps")) {
    if (a.mode != Mode::kDeterministic) fail(r.field("stop_eps"), "only valid in deterministic mode");
    double eps = r.number("stop_eps", 0.0);
    check_positive(r, "stop_eps", eps);
    a.stop_eps = eps;
  }
  a.strict_curvature = r.boolean("strict_curvature", a.strict_curvature);
  a.curvature_zeta = r.number("curvature_zeta", a.curvature_zeta);
  a.zero_step_tol = r.number("zero_step_tol", a.zero_step_tol);
  a.kkt_tol = r.number("kkt_tol", a.kkt_tol);
  check_positive(r, "curvature_zeta", a.curvature_zeta);
  if (!(a.zero_step_tol >= 0.0)) fail(r.field("zero_step_tol"), "must be nonnegative");
  check_positive(r, "kkt_tol", a.kkt_tol);
  r.finish();

  if (a.beta.kind == BetaSchedule::Kind::kExplicit &&
      static_cast<long long>(a.beta.values.size()) != static_cast<long long>(a.k_max) + 1) {
    fail(r.field("beta.values"), "needs k_max+1 entries");
  }
  try {
    a.validate();
  } catch (const Error& e) {
    fail(path.empty() ? "algorithm" : path, e.what());
  }
  return a;
}

SolveConfig parse_solve_config(const json& j) {
  ObjectReader r(j, "");
  check_schema_version(r);
  SolveConfig cfg;
  if (r.has("problem")) cfg.problem = parse_problem_spec(r.at("problem"), "problem");
  if (r.has("algorithm")) cfg.algorithm = parse_algo_config(r.at("algorithm"), "algorithm");
  if (r.has("output")) {
    ObjectReader o(r.at("output"), "output");
    cfg.output.dir = o.string("dir", cfg.output.dir);
    cfg.output.trace = o.string("trace", cfg.output.trace);
    cfg.output.summary = o.string("summary", cfg.output.summary);
    if (cfg.output.trace.empty()) fail(o.field("trace"), "must not be empty");
    if (cfg.output.summary.empty()) fail(o.field("summary"), "must not be empty");
    o.finish();
  }
  r.finish();
  return cfg;
}

ExperimentSpec parse_experiment_spec(const json& j) {
  ObjectReader r(j, "");
  check_schema_version(r);
  ExperimentSpec spec;
  if (r.has("problem")) spec.problem = parse_problem_spec(r.at("problem"), "problem");
  if (r.has("algorithm")) {
    spec.algorithm = parse_algo_config(r.at("algorithm"), "algorithm");
  } else {
    spec.algorithm.mode = Mode::kStochastic;
    spec.algorithm.noise = NoiseModel::gaussian(1.0);
  }
  if (spec.algorithm.beta.kind == BetaSchedule::Kind::kExplicit) {
    fail("algorithm.beta.kind", "explicit schedules cannot follow a k_max sweep");
  }

  const json& list = r.at("k_max_list");
  if (!list.is_array() || list.empty()) fail("k_max_list", "expected a nonempty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string p = "k_max_list[" + std::to_string(i) + "]";
    if (!list[i].is_number_integer()) fail(p, "expected an integer");
    long long k = list[i].get<long long>();
    if (k < 0 || k > 100000000) fail(p, "must lie in [0, 1e8]");
    if (!spec.k_max_list.empty() && k <= spec.k_max_list.back()) {
      fail(p, "k_max_list must be strictly increasing");
    }
    spec.k_max_list.push_back(static_cast<int>(k));
  }
  long long reps = r.integer("replications", 1);
  if (reps < 1 || reps > 1000000) fail("replications", "must lie in [1, 1e6]");
  spec.replications = static_cast<int>(reps);
  spec.seed = r.seed("seed", 0);
  long long workers = r.integer("workers", 0);
  if (workers < 0) fail("workers", "must be nonnegative");
  spec.workers = static_cast<int>(workers);
  if (r.has("output")) {
    ObjectReader o(r.at("output"), "output");
    spec.output_dir = o.string("dir", spec.output_dir);
    o.finish();
  }
  r.finish();
  return spec;
}

VerifyParams parse_verify_params(const json& j) {
  ObjectReader r(j, "");
  check_schema_version(r);
  VerifyParams params;
  params.seed = r.seed("seed", 0);
  if (r.has("checks")) {
    const json& checks = r.at("checks");
    if (!checks.is_array()) fail("checks", "expected an array");
    for (std::size_t i = 0; i < checks.size(); ++i) {
      if (!checks[i].is_object()) {
        fail("checks[" + std::to_string(i) + "]", "expected an object");
      }
      params.checks.push_back(checks[i]);
    }
  } else {
    params.default_battery = true;
  }
  if (r.has("output")) {
    ObjectReader o(r.at("output"), "output");
    params.output_dir = o.string("dir", params.output_dir);
    o.finish();
  }
  r.finish();
  return params;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, path + ": " + e.what());
  }
}

}  // namespace ssqp
