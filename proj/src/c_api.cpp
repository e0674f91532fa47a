#include "ssqp/ssqp.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "ssqp/config.hpp"
#include "ssqp/driver.hpp"
#include "ssqp/error.hpp"
#include "ssqp/harness.hpp"
#include "ssqp/kkt.hpp"
#include "ssqp/trace_io.hpp"

struct ssqp_problem {
  ssqp::Problem problem;
};

struct ssqp_result {
  ssqp::Problem problem;
  ssqp::AlgoConfig config;
  ssqp::RunResult result;
};

namespace {

using ssqp::Error;
using ssqp::ErrorCode;
using ssqp::Mat;
using ssqp::Vec;
using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

thread_local std::string g_last_error;

// ErrorCode values map onto the status enum in declaration order.
static_assert(static_cast<int>(ErrorCode::kIoError) + 1 == SSQP_ERR_IO);

ssqp_status to_status(ErrorCode code) {
  return static_cast<ssqp_status>(static_cast<int>(code) + 1);
}

ssqp_status fail(ssqp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
ssqp_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return SSQP_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SSQP_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SSQP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SSQP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SSQP_ERR_INTERNAL, "unknown exception");
  }
}

void require_non_null(const void* p, const char* name) {
  if (p == nullptr) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_message(char** message, const std::string& text) {
  if (message != nullptr) *message = dup_string(text);
}

void callback_ok(int rc, const char* which) {
  if (rc != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(which) + " callback returned " + std::to_string(rc));
  }
}

ssqp::AlgoConfig parse_algo(const char* algo_json) {
  if (algo_json == nullptr || *algo_json == '\0') return {};
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(algo_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kConfigError, std::string("algorithm: ") + e.what());
  }
  return ssqp::parse_algo_config(j, "algorithm");
}

ssqp_status run_impl(const ssqp_problem* problem, const char* algo_json,
                     ssqp_hessian_fn hessian, void* user, ssqp_result** out) {
  if (out == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "out is NULL");
  *out = nullptr;
  if (problem == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "problem is NULL");
  return guard([&] {
    auto res = std::make_unique<ssqp_result>();
    res->problem = problem->problem;
    res->config = parse_algo(algo_json);
    if (hessian != nullptr) {
      const int n = problem->problem.n;
      res->config.hessian.kind = ssqp::HessianPolicy::Kind::kUserHook;
      res->config.hessian.hook = [hessian, user, n](const Vec& x, int k) {
        RowMajor H(n, n);
        callback_ok(hessian(x.data(), k, H.data(), user), "hessian");
        return Mat(H);
      };
    }
    res->result = ssqp::run(res->problem, res->config);
    *out = res.release();
  });
}

bool scalar_field(const ssqp::IterationRecord& r, const std::string& f, double& v) {
  if (f == "k") v = r.k;
  else if (f == "tau_trial") v = r.tau_trial.to_double();
  else if (f == "tau") v = r.tau;
  else if (f == "xi_trial") v = r.xi_trial.to_double();
  else if (f == "xi") v = r.xi;
  else if (f == "alpha_hat_init") v = r.alpha_hat_init;
  else if (f == "alpha_tilde_init") v = r.alpha_tilde_init;
  else if (f == "alpha_hat") v = r.alpha_hat;
  else if (f == "alpha_tilde") v = r.alpha_tilde;
  else if (f == "alpha") v = r.alpha;
  else if (f == "f") v = r.f;
  else if (f == "c_norm1") v = r.c_norm1;
  else if (f == "tau_decreased") v = r.tau_decreased ? 1.0 : 0.0;
  else if (f == "xi_decreased") v = r.xi_decreased ? 1.0 : 0.0;
  else if (f == "tau_trial_true") v = r.tau_trial_true.to_double();
  else if (f == "tau_hat") v = r.tau_hat;
  else if (f == "delta_q_stoch") v = r.delta_q_stoch;
  else if (f == "delta_q_true") v = r.delta_q_true;
  else if (f == "stationarity") v = r.stationarity;
  else if (f == "phi_before") v = r.phi_before;
  else if (f == "phi_after") v = r.phi_after;
  else if (f == "beta") v = r.beta;
  else if (f == "curvature") v = r.curvature;
  else if (f == "curvature_true") v = r.curvature_true;
  else return false;
  return true;
}

ssqp::HarnessOptions options(const char* output_dir, int workers) {
  ssqp::HarnessOptions o;
  if (output_dir != nullptr && *output_dir != '\0') o.output_dir = output_dir;
  if (workers > 0) o.workers = workers;
  return o;
}

template <class F>
int entry_point(char** message, F&& body) {
  if (message != nullptr) *message = nullptr;
  try {
    ssqp::CommandOutcome outcome = body();
    g_last_error = outcome.exit_code == ssqp::kExitOk ? std::string() : outcome.message;
    set_message(message, outcome.message);
    return outcome.exit_code;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SSQP_EXIT_SOLVER_ERROR;
  }
}

}  // namespace

extern "C" {

const char* ssqp_version(void) { return "1.0.0"; }

const char* ssqp_status_name(ssqp_status status) {
  switch (status) {
    case SSQP_OK: return "ok";
    case SSQP_ERR_SINGULAR_SYSTEM: return "singular_system";
    case SSQP_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case SSQP_ERR_INVALID_DIMENSION: return "invalid_dimension";
    case SSQP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SSQP_ERR_NON_POSITIVE_TAU: return "non_positive_tau";
    case SSQP_ERR_DIVISION_BY_ZERO: return "division_by_zero";
    case SSQP_ERR_INVALID_INTERVAL: return "invalid_interval";
    case SSQP_ERR_CURVATURE_VIOLATION: return "curvature_violation";
    case SSQP_ERR_EMPTY_SCHEDULE: return "empty_schedule";
    case SSQP_ERR_INVALID_DELTA: return "invalid_delta";
    case SSQP_ERR_INVALID_RANGE: return "invalid_range";
    case SSQP_ERR_INVALID_CONSTANT: return "invalid_constant";
    case SSQP_ERR_CONFIG: return "config_error";
    case SSQP_ERR_IO: return "io_error";
    case SSQP_ERR_NULL_ARGUMENT: return "null_argument";
    case SSQP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ssqp_last_error(void) { return g_last_error.c_str(); }

void ssqp_string_free(char* s) { std::free(s); }

ssqp_status ssqp_problem_create(const char* json_selector, ssqp_problem** out) {
  if (out == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "out is NULL");
  *out = nullptr;
  if (json_selector == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "json_selector is NULL");
  return guard([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_selector);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kConfigError, std::string("problem: ") + e.what());
    }
    auto p = std::make_unique<ssqp_problem>();
    p->problem = ssqp::parse_problem_spec(j, "problem").build();
    *out = p.release();
  });
}

ssqp_status ssqp_problem_create_callbacks(const ssqp_callbacks* cb, ssqp_problem** out) {
  if (out == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "out is NULL");
  *out = nullptr;
  if (cb == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "callbacks is NULL");
  return guard([&] {
    require_non_null(reinterpret_cast<const void*>(cb->f), "callbacks.f");
    require_non_null(reinterpret_cast<const void*>(cb->grad_f), "callbacks.grad_f");
    require_non_null(reinterpret_cast<const void*>(cb->c), "callbacks.c");
    require_non_null(reinterpret_cast<const void*>(cb->jac_c), "callbacks.jac_c");
    require_non_null(cb->x0, "callbacks.x0");
    if (cb->m < 1 || cb->n <= cb->m) {
      throw Error(ErrorCode::kInvalidDimension, "callbacks need 1 <= m < n");
    }
    if (!(cb->L > 0.0) || !(cb->Gamma >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "callbacks need L > 0 and Gamma >= 0");
    }
    const ssqp_callbacks c = *cb;
    const int n = c.n, m = c.m;
    auto p = std::make_unique<ssqp_problem>();
    ssqp::Problem& pr = p->problem;
    pr.name = "callbacks";
    pr.n = n;
    pr.m = m;
    pr.L = c.L;
    pr.Gamma = c.Gamma;
    pr.x0 = Eigen::Map<const Vec>(c.x0, n);
    pr.f = [c](const Vec& x) {
      double v = 0.0;
      callback_ok(c.f(x.data(), &v, c.user), "f");
      return v;
    };
    pr.grad_f = [c, n](const Vec& x) {
      Vec g(n);
      callback_ok(c.grad_f(x.data(), g.data(), c.user), "grad_f");
      return g;
    };
    pr.c = [c, m](const Vec& x) {
      Vec v(m);
      callback_ok(c.c(x.data(), v.data(), c.user), "c");
      return v;
    };
    pr.jac_c = [c, n, m](const Vec& x) {
      RowMajor J(m, n);
      callback_ok(c.jac_c(x.data(), J.data(), c.user), "jac_c");
      return Mat(J);
    };
    *out = p.release();
  });
}

void ssqp_problem_destroy(ssqp_problem* problem) { delete problem; }

ssqp_status ssqp_problem_dims(const ssqp_problem* problem, int* n, int* m) {
  if (problem == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "problem is NULL");
  if (n != nullptr) *n = problem->problem.n;
  if (m != nullptr) *m = problem->problem.m;
  return SSQP_OK;
}

ssqp_status ssqp_problem_x0(const ssqp_problem* problem, double* x0) {
  if (problem == nullptr || x0 == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "NULL argument");
  Eigen::Map<Vec>(x0, problem->problem.n) = problem->problem.x0;
  return SSQP_OK;
}

ssqp_status ssqp_problem_eval(const ssqp_problem* problem, const double* x, double* f,
                              double* grad, double* c, double* jac) {
  if (problem == nullptr || x == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "NULL argument");
  return guard([&] {
    const ssqp::Problem& p = problem->problem;
    const Vec xv = Eigen::Map<const Vec>(x, p.n);
    if (f != nullptr) *f = p.f(xv);
    if (grad != nullptr) Eigen::Map<Vec>(grad, p.n) = p.grad_f(xv);
    if (c != nullptr) Eigen::Map<Vec>(c, p.m) = p.c(xv);
    if (jac != nullptr) Eigen::Map<RowMajor>(jac, p.m, p.n) = p.jac_c(xv);
  });
}

ssqp_status ssqp_solve_kkt(int n, int m, const double* H, const double* J, const double* g,
                           const double* c, double* d, double* y) {
  return guard([&] {
    if (n < 1 || m < 0) throw Error(ErrorCode::kInvalidDimension, "need n >= 1 and m >= 0");
    require_non_null(H, "H");
    require_non_null(g, "g");
    require_non_null(d, "d");
    if (m > 0) {
      require_non_null(J, "J");
      require_non_null(c, "c");
      require_non_null(y, "y");
    }
    ssqp::KktSystem sys;
    sys.H = Eigen::Map<const RowMajor>(H, n, n);
    sys.J = m > 0 ? Mat(Eigen::Map<const RowMajor>(J, m, n)) : Mat(0, n);
    sys.g = Eigen::Map<const Vec>(g, n);
    sys.c = m > 0 ? Vec(Eigen::Map<const Vec>(c, m)) : Vec(0);
    ssqp::KktSolution sol = ssqp::solve_kkt(sys);
    Eigen::Map<Vec>(d, n) = sol.d;
    if (m > 0) Eigen::Map<Vec>(y, m) = sol.y;
  });
}

ssqp_status ssqp_run(const ssqp_problem* problem, const char* algo_json, ssqp_result** out) {
  return run_impl(problem, algo_json, nullptr, nullptr, out);
}

ssqp_status ssqp_run_with_hessian(const ssqp_problem* problem, const char* algo_json,
                                  ssqp_hessian_fn hessian, void* user, ssqp_result** out) {
  if (hessian == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "hessian is NULL");
  return run_impl(problem, algo_json, hessian, user, out);
}

void ssqp_result_destroy(ssqp_result* result) { delete result; }

int ssqp_result_num_records(const ssqp_result* result) {
  return result == nullptr ? -1 : static_cast<int>(result->result.trace.size());
}

int ssqp_result_kstar(const ssqp_result* result) {
  return result == nullptr ? -1 : result->result.k_star;
}

ssqp_status ssqp_result_x_kstar(const ssqp_result* result, double* x) {
  if (result == nullptr || x == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "NULL argument");
  Eigen::Map<Vec>(x, result->problem.n) = result->result.x_at_kstar;
  return SSQP_OK;
}

ssqp_status ssqp_result_x_final(const ssqp_result* result, double* x) {
  if (result == nullptr || x == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "NULL argument");
  Eigen::Map<Vec>(x, result->problem.n) = result->result.summary.x_final;
  return SSQP_OK;
}

ssqp_status ssqp_result_record_scalar(const ssqp_result* result, int k, const char* field,
                                      double* value) {
  if (result == nullptr || field == nullptr || value == nullptr) {
    return fail(SSQP_ERR_NULL_ARGUMENT, "NULL argument");
  }
  const auto& trace = result->result.trace;
  if (k < 0 || k >= static_cast<int>(trace.size())) {
    return fail(SSQP_ERR_INVALID_RANGE, "record index out of range");
  }
  if (!scalar_field(trace[static_cast<std::size_t>(k)], field, *value)) {
    return fail(SSQP_ERR_INVALID_ARGUMENT, std::string("unknown scalar field ") + field);
  }
  return SSQP_OK;
}

ssqp_status ssqp_result_trace_csv(const ssqp_result* result, char** csv) {
  if (result == nullptr || csv == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "NULL argument");
  *csv = nullptr;
  return guard([&] {
    std::ostringstream out;
    ssqp::write_trace_csv(out, result->result.trace, result->problem.n, result->problem.m);
    *csv = dup_string(out.str());
  });
}

ssqp_status ssqp_result_summary_json(const ssqp_result* result, char** json) {
  if (result == nullptr || json == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "NULL argument");
  *json = nullptr;
  return guard([&] {
    *json = dup_string(
        ssqp::summary_to_json(result->result, result->problem, result->config).dump(2));
  });
}

ssqp_status ssqp_result_write_trace(const ssqp_result* result, const char* path) {
  if (result == nullptr || path == nullptr) return fail(SSQP_ERR_NULL_ARGUMENT, "NULL argument");
  return guard([&] {
    std::ostringstream out;
    ssqp::write_trace_csv(out, result->result.trace, result->problem.n, result->problem.m);
    ssqp::write_file_atomic(path, out.str());
  });
}

int ssqp_cli_solve(const char* config_path, const char* output_dir, char** message) {
  return entry_point(message, [&] {
    if (config_path == nullptr) return ssqp::CommandOutcome{SSQP_EXIT_CONFIG_ERROR, "config path is NULL"};
    return ssqp::cli_solve(config_path, options(output_dir, 0));
  });
}

int ssqp_cli_experiment(const char* spec_path, const char* output_dir, int workers,
                        char** message) {
  return entry_point(message, [&] {
    if (spec_path == nullptr) return ssqp::CommandOutcome{SSQP_EXIT_CONFIG_ERROR, "spec path is NULL"};
    return ssqp::cli_experiment(spec_path, options(output_dir, workers));
  });
}

int ssqp_cli_verify(const char* params_path, const char* output_dir, char** message) {
  return entry_point(message, [&] {
    if (params_path == nullptr) return ssqp::CommandOutcome{SSQP_EXIT_CONFIG_ERROR, "params path is NULL"};
    return ssqp::cli_verify(params_path, options(output_dir, 0));
  });
}

int ssqp_cli_report(const char* dir, char** message) {
  return entry_point(message, [&] {
    if (dir == nullptr) return ssqp::CommandOutcome{SSQP_EXIT_CONFIG_ERROR, "dir is NULL"};
    return ssqp::cli_report(dir);
  });
}

}  // extern "C"
