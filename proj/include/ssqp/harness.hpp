#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssqp/config.hpp"
#include "ssqp/driver.hpp"

namespace ssqp {

inline constexpr int kReportSchemaVersion = 1;

/// Process exit codes shared by the CLI and the C API file entry points.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitSolverError = 2,
  kExitCheckFailed = 3,
};

/// Overrides applied on top of a parsed file (the CLI fills these from
/// SSQP_OUTPUT_DIR and SSQP_WORKERS).
struct HarnessOptions {
  std::optional<std::string> output_dir;
  std::optional<int> workers;
};

struct CommandOutcome {
  int exit_code = kExitOk;
  std::string message;  // error text or the printed report
};

nlohmann::json summary_to_json(const RunResult& result, const Problem& problem,
                               const AlgoConfig& config);

// ---- experiment ----

struct RunOutcome {
  int k_max = 0;
  int replication = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  int k_star = 0;
  double statistic = 0.0;  // ‖∇f + Jᵀy_true‖² + ‖c‖₁ at x_{k*}
  int s_count = 0;
  double tau_final = 0.0;
  int iterations = 0;
  std::string error;
};

struct RateCell {
  int k_max = 0;
  double beta = 0.0;
  double mean = 0.0;
  double se = 0.0;  // sample std / √n_ok
  int n_ok = 0;
  int n_failed = 0;
};

struct RateReport {
  std::vector<RateCell> cells;
  std::optional<double> slope;  // least squares of log(mean) on log √(k_max+1)
  std::vector<RunOutcome> runs;
  int n_ok = 0;
  int n_failed = 0;
};

/// Seed of replication r at sweep position i.
std::uint64_t experiment_run_seed(std::uint64_t root, int k_index, int replication);

/// Runs every (k_max, replication) pair on a bounded worker pool. Results do
/// not depend on the worker count.
RateReport run_experiment(const ExperimentSpec& spec, int workers);

nlohmann::json rate_report_to_json(const RateReport& report, const ExperimentSpec& spec);

// ---- verify ----

struct CheckResult {
  std::string check;
  nlohmann::json params;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool informational = false;  // precondition not met; never counts as failure
};

/// The built-in battery: chernoff, capped_process, ptau_symmetric,
/// subgaussian_max.
std::vector<nlohmann::json> default_checks();

/// Runs one check; `index` selects its random substream.
CheckResult run_check(const nlohmann::json& check, std::uint64_t seed, int index);

std::vector<CheckResult> run_verify(const VerifyParams& params);

nlohmann::json verify_report_to_json(const std::vector<CheckResult>& results);

// ---- file entry points ----

CommandOutcome cli_solve(const std::string& config_path, const HarnessOptions& options = {});
CommandOutcome cli_experiment(const std::string& spec_path, const HarnessOptions& options = {});
CommandOutcome cli_verify(const std::string& params_path, const HarnessOptions& options = {});
/// Summarizes the reports found in `dir` and writes rate_plot.csv next to a
/// rate report.
CommandOutcome cli_report(const std::string& dir);

}  // namespace ssqp
