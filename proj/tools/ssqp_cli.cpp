// Command-line front end. Talks to the library only through the C API.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ssqp/ssqp.h"

namespace {

const char* env_or_null(const char* name) {
  const char* v = std::getenv(name);
  return (v != nullptr && *v != '\0') ? v : nullptr;
}

int env_workers() {
  const char* v = env_or_null("SSQP_WORKERS");
  if (v == nullptr) return 0;
  try {
    return std::max(0, std::stoi(v));
  } catch (const std::exception&) {
    std::cerr << "ignoring SSQP_WORKERS=" << v << "\n";
    return 0;
  }
}

int finish(int code, char* message) {
  if (message != nullptr) {
    if (code == SSQP_EXIT_OK || code == SSQP_EXIT_CHECK_FAILED) {
      std::cout << message << "\n";
    } else {
      std::cerr << "error: " << message << "\n";
    }
    ssqp_string_free(message);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic SQP for equality-constrained problems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ssqp_version());

  std::string path;
  std::string out_dir;
  int workers = 0;

  auto* solve = app.add_subcommand("solve", "Run one solve and write trace.csv and summary.json");
  solve->add_option("config", path, "Solve config (JSON)")->required();
  solve->add_option("-o,--output-dir", out_dir, "Override the output directory");

  auto* experiment = app.add_subcommand("experiment", "Run a k_max sweep and write rate_report.json");
  experiment->add_option("spec", path, "Experiment spec (JSON)")->required();
  experiment->add_option("-o,--output-dir", out_dir, "Override the output directory");
  experiment->add_option("-j,--workers", workers, "Worker threads (0: from spec)")
      ->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run Monte Carlo checks of the tail bounds");
  verify->add_option("params", path, "Verify params (JSON)")->required();
  verify->add_option("-o,--output-dir", out_dir, "Override the output directory");

  auto* report = app.add_subcommand("report", "Summarize a results directory");
  report->add_option("dir", path, "Directory with summary/rate/verify reports")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : SSQP_EXIT_CONFIG_ERROR;
  }

  // Command-line flags win over the environment, which wins over the file.
  const char* dir = out_dir.empty() ? env_or_null("SSQP_OUTPUT_DIR") : out_dir.c_str();
  if (workers == 0) workers = env_workers();

  char* message = nullptr;
  int code = SSQP_EXIT_OK;
  if (*solve) {
    code = ssqp_cli_solve(path.c_str(), dir, &message);
  } else if (*experiment) {
    code = ssqp_cli_experiment(path.c_str(), dir, workers, &message);
  } else if (*verify) {
    code = ssqp_cli_verify(path.c_str(), dir, &message);
  } else {
    code = ssqp_cli_report(path.c_str(), &message);
  }
  return finish(code, message);
}
