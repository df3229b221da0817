/*
 * opgauge C API: gauges, accretive cones and order-unit structure on concrete
 * operator spaces, behind opaque handles and status codes.
 *
 * Conventions:
 *  - every function returns og_status; OG_OK means success;
 *  - on failure, og_last_error() returns a message for the calling thread;
 *  - strings returned through char** are owned by the caller and must be
 *    released with og_string_free();
 *  - matrices, spaces, elements and functionals travel as JSON documents in
 *    the formats described in the project README.
 */

#ifndef OPGAUGE_H
#define OPGAUGE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum og_status {
  OG_OK = 0,
  OG_ERR_INVALID_ARGUMENT = 1,
  OG_ERR_DIMENSION = 2,
  OG_ERR_NOT_HERMITIAN = 3,
  OG_ERR_RANK = 4,
  OG_ERR_UNIT = 5,
  OG_ERR_NOT_MEMBER = 6,
  OG_ERR_SAMPLING_EXHAUSTED = 7,
  OG_ERR_SOLVER_INDETERMINATE = 8,
  OG_ERR_PARSE = 9,
  OG_ERR_UNSUPPORTED = 10,
  OG_ERR_INTERNAL = 11
} og_status;

typedef struct og_space og_space;
typedef struct og_element og_element;
typedef struct og_functional og_functional;
typedef struct og_config og_config;

const char* og_version(void);
const char* og_status_name(og_status status);
const char* og_last_error(void);
void og_string_free(char* s);

/* ---- solver configuration ---- */

og_status og_config_create(og_config** out);
/* defaults tuned for the unitization gauge (tighter bisection) */
og_status og_config_create_unitization(og_config** out);
og_status og_config_update_json(og_config* cfg, const char* json_text);
og_status og_config_to_json(const og_config* cfg, char** out_json);
void og_config_free(og_config* cfg);

/* ---- spaces and elements ---- */

og_status og_space_from_json(const char* json_text, og_space** out);
og_status og_space_to_json(const og_space* space, char** out_json);
/* summary: ambient dimension, basis size, representation, unit data */
og_status og_space_info_json(const og_space* space, char** out_json);
void og_space_free(og_space* space);

og_status og_element_from_json(const og_space* space, const char* json_text,
                               double membership_tol, og_element** out);
/* mode: "generic", "self-adjoint", "accretive" */
og_status og_element_sample(const og_space* space, int level, uint64_t seed,
                            const char* mode, og_element** out);
og_status og_element_to_json(const og_element* elem, char** out_json);
void og_element_free(og_element* elem);

/* ---- gauges ---- */

/* which: "nu", "h", "nu-e", "norm" */
og_status og_gauge(const og_space* space, const og_element* elem, const char* which,
                   double* out);
/* unitization gauge of (A, X); an element without /X uses X = 0 */
og_status og_gauge_u(const og_space* space, const og_element* elem, const og_config* cfg,
                     double* out);
/* JSON result: value, iterations, converged, witness and its residuals */
og_status og_nu_max(const og_space* space, const og_element* elem, const og_config* cfg,
                    char** out_json);
og_status og_nu_max_diag_oracle(const og_space* space, const og_element* elem, int grid,
                                double* out);

/* ---- law suites ----
 * law: matrix-compatible | gauge-axioms | c-proper | normality | linf-norm |
 *      unitization | dominance | uniqueness.
 * gauge (for the first two): nu | h | nu-e | nu-max.
 * space may be NULL to run each trial on a fresh built-in battery space.
 */
og_status og_check(const og_space* space, const char* law, const char* gauge, long trials,
                   uint64_t seed, double tol, const og_config* cfg, char** out_json);

/* ---- functionals and extension certificates ---- */

og_status og_functional_from_json(const char* json_text, og_functional** out);
/* unit_json: a matrix document, or NULL for the ambient identity */
og_status og_extension_check(const og_space* space, const og_functional* f,
                             const char* unit_json, int levels, long trials, uint64_t seed,
                             double tol, char** out_json);
void og_functional_free(og_functional* f);

/* ---- bundled regression examples ----
 * example_id: "5.10" | "5.11" | "6.5" | "6.6" | "6.7"; ns lists the sizes
 * (ignored by "5.10").
 */
og_status og_verify_example(const char* example_id, const int* ns, int ns_len,
                            const og_config* cfg, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* OPGAUGE_H */
