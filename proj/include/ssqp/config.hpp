#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssqp/driver.hpp"
#include "ssqp/problems.hpp"

namespace ssqp {

inline constexpr int kConfigSchemaVersion = 1;

/// Built-in problem selector.
struct ProblemSpec {
  std::string name = "quadratic";
  int n = 4;
  int m = 2;
  std::uint64_t seed = 0;
  QuadraticOptions quadratic;

  Problem build() const;
};

struct OutputSpec {
  std::string dir = ".";
  std::string trace = "trace.csv";
  std::string summary = "summary.json";
};

struct SolveConfig {
  ProblemSpec problem;
  AlgoConfig algorithm;
  OutputSpec output;
};

struct ExperimentSpec {
  ProblemSpec problem;
  AlgoConfig algorithm;  // template; k_max and seed are set per run
  std::vector<int> k_max_list;
  int replications = 1;
  std::uint64_t seed = 0;
  int workers = 0;  // 0: hardware concurrency
  std::string output_dir = ".";
};

struct VerifyParams {
  std::uint64_t seed = 0;
  std::vector<nlohmann::json> checks;
  bool default_battery = false;
  std::string output_dir = ".";
};

// The parsers reject unknown keys and report failures as
// Error(kConfigError, "<field.path>: <reason>").
ProblemSpec parse_problem_spec(const nlohmann::json& j, const std::string& path);
NoiseModel parse_noise(const nlohmann::json& j, const std::string& path);
AlgoConfig parse_algo_config(const nlohmann::json& j, const std::string& path);
SolveConfig parse_solve_config(const nlohmann::json& j);
ExperimentSpec parse_experiment_spec(const nlohmann::json& j);
VerifyParams parse_verify_params(const nlohmann::json& j);

/// Reads and parses a JSON file; malformed JSON becomes kConfigError.
nlohmann::json load_json_file(const std::string& path);

}  // namespace ssqp
