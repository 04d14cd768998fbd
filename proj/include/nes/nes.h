#ifndef NES_H
#define NES_H

/*
 * C interface to the nonlinear-equation-system solver library.
 *
 * All functions returning nes_status report failure details through
 * nes_last_error(), which is thread-local. Handles are opaque; every
 * *_free() accepts NULL.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef NES_API
#define NES_API __attribute__((visibility("default")))
#endif

typedef enum nes_status {
  NES_OK = 0,
  NES_ERR_INVALID_ARGUMENT = 1,
  NES_ERR_PARSE = 2,
  NES_ERR_VALIDATION = 3,
  NES_ERR_IO = 4,
  NES_ERR_NOT_FOUND = 5,
  NES_ERR_CELL_FAILURES = 6, /* experiment finished but some cells failed */
  NES_ERR_INTERNAL = 7
} nes_status;

/* A parsed equation system plus its optional reduction scheme. */
typedef struct nes_problem nes_problem;

NES_API const char* nes_version(void);

/* Message for the most recent failure on this thread; never NULL. */
NES_API const char* nes_last_error(void);

/* ---- problems ---------------------------------------------------------- */

NES_API nes_status nes_problem_parse(const char* text, nes_problem** out);
NES_API nes_status nes_problem_load_file(const char* path, nes_problem** out);
NES_API void nes_problem_free(nes_problem* p);

NES_API const char* nes_problem_name(const nes_problem* p);
NES_API int nes_problem_var_count(const nes_problem* p);
NES_API int nes_problem_equation_count(const nes_problem* p);
NES_API int nes_problem_has_scheme(const nes_problem* p);
NES_API int nes_problem_core_count(const nes_problem* p); /* var_count without a scheme */

#define NES_NOR_INFINITE (-1)
#define NES_NOR_UNKNOWN (-2)
NES_API int nes_problem_root_count(const nes_problem* p);

/* lower/upper must hold var_count doubles. */
NES_API nes_status nes_problem_bounds(const nes_problem* p, double* lower, double* upper);

/* out must hold equation_count doubles; x holds n doubles. */
NES_API nes_status nes_problem_residuals(const nes_problem* p, const double* x, size_t n,
                                         double* out, size_t m);
NES_API nes_status nes_problem_residual_sq(const nes_problem* p, const double* x, size_t n,
                                           double* out);
NES_API nes_status nes_problem_in_bounds(const nes_problem* p, const double* x, size_t n,
                                         int* out);

/* Canonical problem-file text. Writes at most cap bytes including the NUL
 * terminator and stores the full length (excluding NUL) in *needed; call with
 * cap 0 to query the size. */
NES_API nes_status nes_problem_print(const nes_problem* p, char* buf, size_t cap, size_t* needed);

/* ---- built-in suite ----------------------------------------------------- */

NES_API size_t nes_suite_count(void);
NES_API const char* nes_suite_name(size_t index);
NES_API nes_status nes_suite_open(const char* name, nes_problem** out);
NES_API const char* nes_suite_file_text(const char* name);

/* Known roots, row-major (count x dim). out may be NULL to query sizes. */
NES_API nes_status nes_suite_ground_truth(const char* name, double* out, size_t cap,
                                          size_t* count, size_t* dim);

/* ---- experiments -------------------------------------------------------- */

/* Runs the experiment described by a config file. out_dir (when non-NULL),
 * jobs (> 0) and seed (>= 0) override the config. Returns
 * NES_ERR_CELL_FAILURES when some cells could not run (count stored in
 * *failed_cells when non-NULL). */
NES_API nes_status nes_run_experiment(const char* config_path, const char* out_dir, int jobs,
                                      int64_t seed, int* failed_cells);

/* ---- statistics --------------------------------------------------------- */

/* Wilcoxon signed-rank over pairs (a[i], b[i]); r_plus collects ranks of
 * pairs with a < b. Two-sided p, exact for up to 25 non-zero differences. */
NES_API nes_status nes_wilcoxon(const double* a, const double* b, size_t n, double* r_plus,
                                double* r_minus, double* p_value);

/* scores is row-major (n_problems x n_algorithms); avg_ranks receives
 * n_algorithms values, rank 1 = best. */
NES_API nes_status nes_friedman(const double* scores, size_t n_problems, size_t n_algorithms,
                                int minimize, double* avg_ranks);

#ifdef __cplusplus
}
#endif

#endif /* NES_H */
