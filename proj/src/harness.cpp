#include "ssqp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json_reader.hpp"
#include "ssqp/error.hpp"
#include "ssqp/prob_tools.hpp"
#include "ssqp/trace_io.hpp"

namespace ssqp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// JSON has no infinity; report it as the string "inf".
json real_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string path_in(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

json summary_to_json(const RunResult& result, const Problem& problem, const AlgoConfig& config) {
  const RunSummary& s = result.summary;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["problem"] = {{"name", problem.name}, {"n", problem.n}, {"m", problem.m}};
  j["mode"] = config.mode == Mode::kStochastic ? "stochastic" : "deterministic";
  if (config.mode == Mode::kStochastic) j["noise"] = to_string(config.noise.kind);
  j["k_max"] = config.k_max;
  j["seed"] = config.seed;
  j["iterations"] = s.iterations;
  j["stopped_early"] = s.stopped_early;
  j["k_star"] = result.k_star;
  j["x_at_kstar"] = vec_json(result.x_at_kstar);
  j["x_final"] = vec_json(s.x_final);
  j["tau_final"] = s.tau_final;
  j["xi_final"] = s.xi_final;
  j["s_count"] = s.s_count;
  j["r_count"] = s.r_count;
  j["min_stationarity"] = real_json(s.min_stationarity);
  j["tau_min_empirical"] = s.tau_min_empirical;
  j["xi_min_empirical"] = s.xi_min_empirical;
  j["a_max"] = s.a_max;
  j["a_min_estimate"] = s.a_min_estimate;
  j["gamma_exceeds_bound"] = s.gamma_exceeds_bound;
  j["box_exited"] = s.box_exited;
  j["warnings"] = s.warnings;
  if (!result.trace.empty()) {
    const IterationRecord& at = result.trace[static_cast<std::size_t>(result.k_star)];
    j["kstar_statistic"] = at.stationarity * at.stationarity + at.c_norm1;
    const IterationRecord& last = result.trace.back();
    j["last"] = {{"k", last.k},
                 {"f", last.f},
                 {"c_norm1", last.c_norm1},
                 {"stationarity", last.stationarity}};
  }
  return j;
}

// ---------------------------------------------------------------- experiment

std::uint64_t experiment_run_seed(std::uint64_t root, int k_index, int replication) {
  return substream_seed(root, static_cast<std::uint64_t>(k_index),
                        static_cast<std::uint64_t>(replication));
}

RateReport run_experiment(const ExperimentSpec& spec, int workers) {
  const Problem problem = spec.problem.build();
  const int reps = spec.replications;
  const std::size_t total = spec.k_max_list.size() * static_cast<std::size_t>(reps);

  RateReport report;
  report.runs.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    RunOutcome& o = report.runs[idx];
    const int i = static_cast<int>(idx / reps);
    o.k_max = spec.k_max_list[static_cast<std::size_t>(i)];
    o.replication = static_cast<int>(idx % reps);
    o.seed = experiment_run_seed(spec.seed, i, o.replication);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      RunOutcome& o = report.runs[idx];
      AlgoConfig config = spec.algorithm;
      config.k_max = o.k_max;
      config.seed = o.seed;
      try {
        RunResult r = run(problem, config);
        const IterationRecord& at = r.trace[static_cast<std::size_t>(r.k_star)];
        o.k_star = r.k_star;
        o.statistic = at.stationarity * at.stationarity + at.c_norm1;
        o.s_count = r.summary.s_count;
        o.tau_final = r.summary.tau_final;
        o.iterations = r.summary.iterations;
        o.ok = std::isfinite(o.statistic);
        if (!o.ok) o.error = "non-finite statistic";
      } catch (const std::exception& e) {
        o.ok = false;
        o.error = e.what();
      }
    }
  };
  const int pool = std::max(1, std::min(resolve_workers(workers), static_cast<int>(total)));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < spec.k_max_list.size(); ++i) {
    RateCell cell;
    cell.k_max = spec.k_max_list[i];
    cell.beta = spec.algorithm.beta.betas(cell.k_max).front();
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
      const RunOutcome& o = report.runs[i * static_cast<std::size_t>(reps) + r];
      if (o.ok) {
        ++cell.n_ok;
        sum += o.statistic;
      } else {
        ++cell.n_failed;
      }
    }
    if (cell.n_ok > 0) {
      cell.mean = sum / cell.n_ok;
      double ss = 0.0;
      for (int r = 0; r < reps; ++r) {
        const RunOutcome& o = report.runs[i * static_cast<std::size_t>(reps) + r];
        if (o.ok) ss += (o.statistic - cell.mean) * (o.statistic - cell.mean);
      }
      cell.se = cell.n_ok > 1 ? std::sqrt(ss / (cell.n_ok - 1)) / std::sqrt(cell.n_ok) : 0.0;
      if (cell.mean > 0.0) {
        lx.push_back(std::log(std::sqrt(cell.k_max + 1.0)));
        ly.push_back(std::log(cell.mean));
      }
    }
    report.n_ok += cell.n_ok;
    report.n_failed += cell.n_failed;
    report.cells.push_back(cell);
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i] / n;
      my += ly[i] / n;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx > 0.0) report.slope = sxy / sxx;
  }
  return report;
}

json rate_report_to_json(const RateReport& report, const ExperimentSpec& spec) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["problem"] = {{"name", spec.problem.name},
                  {"n", spec.problem.n},
                  {"m", spec.problem.m},
                  {"seed", spec.problem.seed}};
  j["statistic"] = "stationarity^2 + c_norm1 at k*";
  j["replications"] = spec.replications;
  j["seed"] = spec.seed;
  j["n_ok"] = report.n_ok;
  j["n_failed"] = report.n_failed;
  json cells = json::array();
  for (const RateCell& c : report.cells) {
    cells.push_back({{"k_max", c.k_max},
                     {"beta", c.beta},
                     {"mean", c.mean},
                     {"se", c.se},
                     {"n_ok", c.n_ok},
                     {"n_failed", c.n_failed}});
  }
  j["cells"] = cells;
  j["slope"] = report.slope ? json(*report.slope) : json(nullptr);
  json failures = json::array();
  for (const RunOutcome& o : report.runs) {
    if (!o.ok) {
      failures.push_back({{"k_max", o.k_max}, {"replication", o.replication}, {"seed", o.seed},
                          {"error", o.error}});
    }
  }
  j["failures"] = failures;
  return j;
}

namespace {

std::string runs_csv(const RateReport& report) {
  std::ostringstream out;
  out << "schema_version,k_max,replication,seed,ok,k_star,statistic,s_count,tau_final,"
         "iterations,error\n";
  for (const RunOutcome& o : report.runs) {
    std::string err = o.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << kReportSchemaVersion << ',' << o.k_max << ',' << o.replication << ',' << o.seed << ','
        << (o.ok ? 1 : 0) << ',' << o.k_star << ',' << fmt17(o.statistic) << ',' << o.s_count
        << ',' << fmt17(o.tau_final) << ',' << o.iterations << ',' << err << '\n';
  }
  return out.str();
}

}  // namespace

// -------------------------------------------------------------------- verify

std::vector<json> default_checks() {
  return {
      {{"check", "chernoff"}, {"s", 3}, {"delta", 0.1}, {"terms", 100}, {"trials", 100000}},
      {{"check", "capped_process"},
       {"p", 0.05},
       {"s_max", 3},
       {"k_max", 200},
       {"delta", 0.1},
       {"trials", 10000}},
      {{"check", "ptau_symmetric"},
       {"problem", {{"name", "quadratic"}, {"n", 6}, {"m", 2}, {"seed", 1}}},
       {"noise", {{"kind", "gaussian"}, {"M", 1.0}}},
       {"trials", 10000}},
      {{"check", "subgaussian_max"},
       {"noise", {{"kind", "gaussian"}, {"M", 1.0}}},
       {"dim", 4},
       {"k_max", 100},
       {"delta", 0.1},
       {"trials", 1000}},
  };
}

namespace {

using detail::fail;
using detail::ObjectReader;

int int_param(ObjectReader& r, const std::string& key, long long fallback, long long lo,
              long long hi) {
  long long v = r.integer(key, fallback);
  if (v < lo || v > hi) {
    fail(r.field(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

double delta_param(ObjectReader& r, double fallback) {
  double d = r.number("delta", fallback);
  if (!(d > 0.0 && d < 1.0)) fail(r.field("delta"), "must lie in (0,1)");
  return d;
}

CheckResult check_chernoff(ObjectReader& r, Rng& rng) {
  CheckResult out;
  const int s = int_param(r, "s", 3, 0, 1000000);
  const double delta = delta_param(r, 0.1);
  const int trials = int_param(r, "trials", 100000, 1, 100000000);
  std::vector<double> probs;
  if (r.has("probs")) {
    const json& p = r.at("probs");
    if (!p.is_array() || p.empty()) fail(r.field("probs"), "expected a nonempty array");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string path = r.field("probs") + "[" + std::to_string(i) + "]";
      if (!p[i].is_number()) fail(path, "expected a number");
      double v = p[i].get<double>();
      if (!(v >= 0.0 && v <= 1.0)) fail(path, "must lie in [0,1]");
      probs.push_back(v);
    }
  } else {
    const int terms = int_param(r, "terms", 100, 1, 10000000);
    const double mu = r.number("mu", ell(s, delta));
    if (!(mu >= 0.0 && mu <= terms)) fail(r.field("mu"), "must lie in [0, terms]");
    probs.assign(static_cast<std::size_t>(terms), mu / terms);
  }
  r.finish();
  ChernoffResult res = mc_chernoff_check(probs, s, delta, trials, rng);
  out.statistic = res.tail.frequency;
  out.threshold = delta + 3.0 * std::sqrt(delta * (1.0 - delta) / trials);
  out.informational = !res.precondition_met;
  out.pass = res.within_bound;
  return out;
}

CheckResult check_capped(ObjectReader& r, Rng& rng) {
  CheckResult out;
  const int k_max = int_param(r, "k_max", 200, 0, 100000000);
  const int s_max = int_param(r, "s_max", 3, 0, k_max + 1);
  const double delta = delta_param(r, 0.1);
  const int trials = int_param(r, "trials", 10000, 1, 100000000);
  ProbSchedule schedule;
  if (r.has("schedule")) {
    const json& p = r.at("schedule");
    if (!p.is_array() || p.empty()) fail(r.field("schedule"), "expected a nonempty array");
    std::vector<double> values;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string path = r.field("schedule") + "[" + std::to_string(i) + "]";
      if (!p[i].is_number()) fail(path, "expected a number");
      double v = p[i].get<double>();
      if (!(v >= 0.0 && v <= 1.0)) fail(path, "must lie in [0,1]");
      values.push_back(v);
    }
    // The last entry repeats past the end of the list.
    schedule = [values](int k) {
      return values[std::min(static_cast<std::size_t>(k), values.size() - 1)];
    };
  } else {
    const double p = r.number("p", 0.05);
    if (!(p >= 0.0 && p <= 1.0)) fail(r.field("p"), "must lie in [0,1]");
    schedule = [p](int) { return p; };
  }
  r.finish();
  CappedProcessResult res = simulate_capped_process(schedule, s_max, k_max, delta, trials, rng);
  out.statistic = res.freq_bound_holds;
  out.threshold = 1.0 - delta;
  out.pass = res.freq_bound_holds >= 1.0 - delta && res.freq_count_exceeds == 0.0;
  return out;
}

CheckResult check_ptau(ObjectReader& r, Rng& rng) {
  CheckResult out;
  ProblemSpec spec;
  spec.n = 6;
  spec.m = 2;
  spec.seed = 1;
  if (r.has("problem")) spec = parse_problem_spec(r.at("problem"), r.field("problem"));
  NoiseModel noise = NoiseModel::gaussian(1.0);
  if (r.has("noise")) noise = parse_noise(r.at("noise"), r.field("noise"));
  if (!noise.is_symmetric()) fail(r.field("noise.kind"), "needs a symmetric noise model");
  const int trials = int_param(r, "trials", 10000, 1, 100000000);
  r.finish();
  const Problem problem = spec.build();
  const Mat H = Mat::Identity(problem.n, problem.n);
  McEstimate est = mc_ptau_symmetric(problem, problem.x0, H, noise, trials, rng);
  out.statistic = est.frequency;
  // Standard error of a fair coin: the bound under test is P ≥ 1/2.
  out.threshold = 0.5 - 3.0 * std::sqrt(0.25 / trials);
  out.pass = est.frequency >= out.threshold;
  return out;
}

CheckResult check_subgaussian(ObjectReader& r, Rng& rng) {
  CheckResult out;
  NoiseModel noise = NoiseModel::gaussian(1.0);
  if (r.has("noise")) noise = parse_noise(r.at("noise"), r.field("noise"));
  if (noise.kind == NoiseKind::kMiniBatch) {
    fail(r.field("noise.kind"), "mini_batch noise needs a problem");
  }
  const int dim = int_param(r, "dim", 4, 1, 100000);
  const int k_max = int_param(r, "k_max", 100, 0, 100000000);
  const double delta = delta_param(r, 0.1);
  const int trials = int_param(r, "trials", 1000, 1, 100000000);
  const double M = r.number("M", subgaussian_parameter(noise, dim));
  if (!(M > 0.0)) fail(r.field("M"), "must be positive");
  r.finish();
  McEstimate est = mc_subgaussian_max(noise, dim, M, k_max, delta, trials, rng);
  out.statistic = est.frequency;
  out.threshold = 1.0 - delta - 3.0 * std::sqrt(delta * (1.0 - delta) / trials);
  out.pass = est.frequency >= out.threshold;
  return out;
}

}  // namespace

CheckResult run_check(const json& check, std::uint64_t seed, int index) {
  const std::string path = "checks[" + std::to_string(index) + "]";
  ObjectReader r(check, path);
  const std::string name = r.string("check", "");
  Rng rng = make_rng(seed, 3, static_cast<std::uint64_t>(index));
  CheckResult out;
  if (name == "chernoff") {
    out = check_chernoff(r, rng);
  } else if (name == "capped_process") {
    out = check_capped(r, rng);
  } else if (name == "ptau_symmetric") {
    out = check_ptau(r, rng);
  } else if (name == "subgaussian_max") {
    out = check_subgaussian(r, rng);
  } else {
    fail(r.field("check"),
         "expected chernoff, capped_process, ptau_symmetric or subgaussian_max");
  }
  out.check = name;
  out.params = check;
  return out;
}

std::vector<CheckResult> run_verify(const VerifyParams& params) {
  const std::vector<json> checks = params.default_battery ? default_checks() : params.checks;
  std::vector<CheckResult> results;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    results.push_back(run_check(checks[i], params.seed, static_cast<int>(i)));
  }
  return results;
}

json verify_report_to_json(const std::vector<CheckResult>& results) {
  json list = json::array();
  bool all = true;
  for (const CheckResult& c : results) {
    json item = {{"check", c.check},
                 {"params", c.params},
                 {"statistic", c.statistic},
                 {"threshold", c.threshold},
                 {"pass", c.pass}};
    if (c.informational) item["informational"] = true;
    if (!c.informational && !c.pass) all = false;
    list.push_back(item);
  }
  return {{"schema_version", kReportSchemaVersion}, {"results", list}, {"pass", all}};
}

// -------------------------------------------------------------- entry points

CommandOutcome cli_solve(const std::string& config_path, const HarnessOptions& options) {
  SolveConfig cfg;
  Problem problem;
  try {
    cfg = parse_solve_config(load_json_file(config_path));
    if (options.output_dir) cfg.output.dir = *options.output_dir;
    problem = cfg.problem.build();
  } catch (const Error& e) {
    return {kExitConfigError, e.what()};
  }
  RunResult result;
  try {
    result = run(problem, cfg.algorithm);
  } catch (const Error& e) {
    return {kExitSolverError, e.what()};
  }
  try {
    std::ostringstream trace;
    write_trace_csv(trace, result.trace, problem.n, problem.m);
    const std::string trace_path = path_in(cfg.output.dir, cfg.output.trace);
    write_file_atomic(trace_path, trace.str());
    json summary = summary_to_json(result, problem, cfg.algorithm);
    summary["trace_file"] = cfg.output.trace;
    write_file_atomic(path_in(cfg.output.dir, cfg.output.summary), summary.dump(2) + "\n");
    std::ostringstream msg;
    msg << "iterations " << result.summary.iterations << ", k* " << result.k_star
        << ", trace " << trace_path;
    return {kExitOk, msg.str()};
  } catch (const std::exception& e) {
    return {kExitSolverError, e.what()};
  }
}

CommandOutcome cli_experiment(const std::string& spec_path, const HarnessOptions& options) {
  ExperimentSpec spec;
  try {
    spec = parse_experiment_spec(load_json_file(spec_path));
    if (options.output_dir) spec.output_dir = *options.output_dir;
    if (options.workers) spec.workers = *options.workers;
    spec.problem.build();
  } catch (const Error& e) {
    return {kExitConfigError, e.what()};
  }
  try {
    RateReport report = run_experiment(spec, spec.workers);
    write_file_atomic(path_in(spec.output_dir, "runs.csv"), runs_csv(report));
    const int total = report.n_ok + report.n_failed;
    if (5 * report.n_ok < 4 * total) {
      return {kExitSolverError, std::to_string(report.n_failed) + " of " +
                                    std::to_string(total) + " runs failed; no rate report"};
    }
    json j = rate_report_to_json(report, spec);
    write_file_atomic(path_in(spec.output_dir, "rate_report.json"), j.dump(2) + "\n");
    return {kExitOk, j.dump(2)};
  } catch (const Error& e) {
    return {kExitSolverError, e.what()};
  }
}

CommandOutcome cli_verify(const std::string& params_path, const HarnessOptions& options) {
  std::vector<CheckResult> results;
  VerifyParams params;
  try {
    params = parse_verify_params(load_json_file(params_path));
    if (options.output_dir) params.output_dir = *options.output_dir;
    results = run_verify(params);
  } catch (const Error& e) {
    return {e.code() == ErrorCode::kConfigError ? kExitConfigError : kExitSolverError, e.what()};
  }
  json j = verify_report_to_json(results);
  try {
    write_file_atomic(path_in(params.output_dir, "verify_report.json"), j.dump(2) + "\n");
  } catch (const Error& e) {
    return {kExitSolverError, e.what()};
  }
  return {j.at("pass").get<bool>() ? kExitOk : kExitCheckFailed, j.dump(2)};
}

CommandOutcome cli_report(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) return {kExitConfigError, dir + ": not a directory"};
  std::ostringstream out;
  bool found = false;
  try {
    if (fs::exists(root / "summary.json")) {
      found = true;
      json s = json::parse(read_file(root / "summary.json"));
      out << "solve: " << s.value("problem", json::object()).value("name", "?") << ", "
          << s.value("mode", "?") << ", iterations " << s.value("iterations", 0) << ", k* "
          << s.value("k_star", 0) << ", tau " << s.value("tau_final", 0.0) << ", s_count "
          << s.value("s_count", 0) << "\n";
      const std::string trace_name = s.value("trace_file", "trace.csv");
      if (fs::exists(root / trace_name)) {
        std::ifstream in(root / trace_name);
        std::vector<IterationRecord> trace = read_trace_csv(in);
        std::ostringstream csv;
        csv << "k,f,c_norm1,stationarity,tau,xi,alpha,phi_before\n";
        for (const IterationRecord& r : trace) {
          csv << r.k << ',' << fmt17(r.f) << ',' << fmt17(r.c_norm1) << ','
              << fmt17(r.stationarity) << ',' << fmt17(r.tau) << ',' << fmt17(r.xi) << ','
              << fmt17(r.alpha) << ',' << fmt17(r.phi_before) << '\n';
        }
        write_file_atomic((root / "convergence_plot.csv").string(), csv.str());
        out << "  wrote " << (root / "convergence_plot.csv").string() << "\n";
      }
    }
    if (fs::exists(root / "rate_report.json")) {
      found = true;
      json rr = json::parse(read_file(root / "rate_report.json"));
      std::ostringstream csv;
      csv << "k_max,sqrt_k_max_plus_1,beta,mean,se,n_ok\n";
      out << "experiment: " << rr.value("n_ok", 0) << " runs ok, " << rr.value("n_failed", 0)
          << " failed\n";
      for (const json& c : rr.at("cells")) {
        const int k = c.at("k_max").get<int>();
        out << "  k_max " << k << ": mean " << c.at("mean").get<double>() << " (se "
            << c.at("se").get<double>() << ")\n";
        csv << k << ',' << fmt17(std::sqrt(k + 1.0)) << ',' << fmt17(c.at("beta").get<double>())
            << ',' << fmt17(c.at("mean").get<double>()) << ','
            << fmt17(c.at("se").get<double>()) << ',' << c.at("n_ok").get<int>() << '\n';
      }
      if (rr.contains("slope") && rr.at("slope").is_number()) {
        out << "  log-log slope vs sqrt(k_max+1): " << rr.at("slope").get<double>() << "\n";
      }
      write_file_atomic((root / "rate_plot.csv").string(), csv.str());
      out << "  wrote " << (root / "rate_plot.csv").string() << "\n";
    }
    if (fs::exists(root / "verify_report.json")) {
      found = true;
      json vr = json::parse(read_file(root / "verify_report.json"));
      out << "verify: " << (vr.value("pass", false) ? "pass" : "FAIL") << "\n";
      for (const json& c : vr.at("results")) {
        out << "  " << c.at("check").get<std::string>() << ": statistic "
            << c.at("statistic").get<double>() << ", threshold "
            << c.at("threshold").get<double>()
            << (c.value("informational", false) ? " (informational)"
                                                 : (c.at("pass").get<bool>() ? " pass" : " FAIL"))
            << "\n";
      }
    }
  } catch (const json::exception& e) {
    return {kExitConfigError, std::string("malformed report: ") + e.what()};
  } catch (const Error& e) {
    return {kExitConfigError, e.what()};
  }
  if (!found) return {kExitConfigError, dir + ": no summary.json, rate_report.json or verify_report.json"};
  return {kExitOk, out.str()};
}

}  // namespace ssqp
