/* C interface to the stochastic SQP library.
 *
 * Objects are opaque handles released with the matching *_destroy call.
 * Functions return an ssqp_status; on failure ssqp_last_error() describes the
 * problem (thread-local, valid until the next call on the same thread).
 * Matrices are dense and row-major. Strings returned through char** out
 * parameters are owned by the caller and released with ssqp_string_free. */
#ifndef SSQP_SSQP_H
#define SSQP_SSQP_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#  ifdef SSQP_BUILDING_LIBRARY
#    define SSQP_API __declspec(dllexport)
#  else
#    define SSQP_API __declspec(dllimport)
#  endif
#else
#  define SSQP_API __attribute__((visibility("default")))
#endif

typedef enum ssqp_status {
  SSQP_OK = 0,
  SSQP_ERR_SINGULAR_SYSTEM = 1,
  SSQP_ERR_DIMENSION_MISMATCH = 2,
  SSQP_ERR_INVALID_DIMENSION = 3,
  SSQP_ERR_INVALID_ARGUMENT = 4,
  SSQP_ERR_NON_POSITIVE_TAU = 5,
  SSQP_ERR_DIVISION_BY_ZERO = 6,
  SSQP_ERR_INVALID_INTERVAL = 7,
  SSQP_ERR_CURVATURE_VIOLATION = 8,
  SSQP_ERR_EMPTY_SCHEDULE = 9,
  SSQP_ERR_INVALID_DELTA = 10,
  SSQP_ERR_INVALID_RANGE = 11,
  SSQP_ERR_INVALID_CONSTANT = 12,
  SSQP_ERR_CONFIG = 13,
  SSQP_ERR_IO = 14,
  SSQP_ERR_NULL_ARGUMENT = 15,
  SSQP_ERR_INTERNAL = 16
} ssqp_status;

/* Exit codes of the file entry points (and the CLI). */
#define SSQP_EXIT_OK 0
#define SSQP_EXIT_CONFIG_ERROR 1
#define SSQP_EXIT_SOLVER_ERROR 2
#define SSQP_EXIT_CHECK_FAILED 3

SSQP_API const char* ssqp_version(void);
SSQP_API const char* ssqp_status_name(ssqp_status status);
SSQP_API const char* ssqp_last_error(void);
SSQP_API void ssqp_string_free(char* s);

/* ---- problems ---- */

typedef struct ssqp_problem ssqp_problem;

/* Built-in problem from a JSON selector such as
 * {"name": "quadratic", "n": 6, "m": 2, "seed": 3}. */
SSQP_API ssqp_status ssqp_problem_create(const char* json_selector, ssqp_problem** out);

/* User problem. Each callback returns 0 on success; any other value aborts the
 * calling operation with SSQP_ERR_INVALID_ARGUMENT. */
typedef struct ssqp_callbacks {
  int n;
  int m;
  void* user;
  int (*f)(const double* x, double* value, void* user);
  int (*grad_f)(const double* x, double* grad, void* user);         /* n entries */
  int (*c)(const double* x, double* values, void* user);            /* m entries */
  int (*jac_c)(const double* x, double* jac_row_major, void* user); /* m×n */
  double L;         /* Lipschitz constant of grad f */
  double Gamma;     /* sum of Lipschitz constants of the constraint gradients */
  const double* x0; /* n entries, copied */
} ssqp_callbacks;

SSQP_API ssqp_status ssqp_problem_create_callbacks(const ssqp_callbacks* callbacks,
                                                   ssqp_problem** out);
SSQP_API void ssqp_problem_destroy(ssqp_problem* problem);
SSQP_API ssqp_status ssqp_problem_dims(const ssqp_problem* problem, int* n, int* m);
SSQP_API ssqp_status ssqp_problem_x0(const ssqp_problem* problem, double* x0);

/* Any of f, grad, c, jac may be NULL. */
SSQP_API ssqp_status ssqp_problem_eval(const ssqp_problem* problem, const double* x, double* f,
                                       double* grad, double* c, double* jac);

/* Solves [[H, Jᵀ], [J, 0]] (d; y) = −(g; c). H is n×n, J is m×n. */
SSQP_API ssqp_status ssqp_solve_kkt(int n, int m, const double* H, const double* J,
                                    const double* g, const double* c, double* d, double* y);

/* ---- runs ---- */

typedef struct ssqp_result ssqp_result;

/* algo_json uses the "algorithm" block of the solve config; NULL or "" keeps
 * the defaults. */
SSQP_API ssqp_status ssqp_run(const ssqp_problem* problem, const char* algo_json,
                              ssqp_result** out);

/* Same, with H_k supplied by the caller (n×n row-major, written into H). */
typedef int (*ssqp_hessian_fn)(const double* x, int k, double* H, void* user);
SSQP_API ssqp_status ssqp_run_with_hessian(const ssqp_problem* problem, const char* algo_json,
                                           ssqp_hessian_fn hessian, void* user,
                                           ssqp_result** out);

SSQP_API void ssqp_result_destroy(ssqp_result* result);
SSQP_API int ssqp_result_num_records(const ssqp_result* result);
SSQP_API int ssqp_result_kstar(const ssqp_result* result);
SSQP_API ssqp_status ssqp_result_x_kstar(const ssqp_result* result, double* x);
SSQP_API ssqp_status ssqp_result_x_final(const ssqp_result* result, double* x);

/* Scalar trace column of record k, e.g. "tau", "alpha", "stationarity".
 * Infinite values come back as HUGE_VAL; booleans as 0 or 1. */
SSQP_API ssqp_status ssqp_result_record_scalar(const ssqp_result* result, int k,
                                               const char* field, double* value);
SSQP_API ssqp_status ssqp_result_trace_csv(const ssqp_result* result, char** csv);
SSQP_API ssqp_status ssqp_result_summary_json(const ssqp_result* result, char** json);
SSQP_API ssqp_status ssqp_result_write_trace(const ssqp_result* result, const char* path);

/* ---- file entry points ----
 * Return an SSQP_EXIT_* code. output_dir (may be NULL) overrides the file's
 * output directory, workers ≤ 0 keeps the file's setting. message (may be
 * NULL) receives the report or the error text. */
SSQP_API int ssqp_cli_solve(const char* config_path, const char* output_dir, char** message);
SSQP_API int ssqp_cli_experiment(const char* spec_path, const char* output_dir, int workers,
                                 char** message);
SSQP_API int ssqp_cli_verify(const char* params_path, const char* output_dir, char** message);
SSQP_API int ssqp_cli_report(const char* dir, char** message);

#ifdef __cplusplus
}
#endif

#endif /* SSQP_SSQP_H */
