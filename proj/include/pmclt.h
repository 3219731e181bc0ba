/* pmclt - convergence-rate toolkit, C interface.
 *
 * Every entry point returns a pmclt_status; out-parameters are written only
 * on PMCLT_OK. On failure, pmclt_last_error() returns a message for the
 * calling thread (valid until that thread's next pmclt call). Strings
 * returned through char** out-parameters are heap-allocated; release them
 * with pmclt_string_free.
 */
#ifndef PMCLT_H
#define PMCLT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pmclt_status {
  PMCLT_OK = 0,
  PMCLT_INVALID_ARGUMENT = 1,
  PMCLT_PARSE_ERROR = 2,
  PMCLT_SPEC_INVALID = 3,
  PMCLT_QUADRATURE_FAILURE = 4,
  PMCLT_DIVERGENT_MOMENT = 5,
  PMCLT_SIGN_LOCALIZATION_FAILURE = 6,
  PMCLT_NU_OUT_OF_RANGE = 7,
  PMCLT_N_OUT_OF_RANGE = 8,
  PMCLT_OVERFLOW = 9,
  PMCLT_ATOMS_PRESENT = 10,
  PMCLT_TRUNCATION_TOO_LARGE = 11,
  PMCLT_ROOT_NOT_BRACKETED = 12,
  PMCLT_IO_ERROR = 13,
  PMCLT_INTERNAL_ERROR = 14
} pmclt_status;

/* Stable lower-snake name for a status value ("ok", "parse_error", ...). */
const char* pmclt_status_name(pmclt_status status);

/* Message from the most recent failing call on this thread ("" if none). */
const char* pmclt_last_error(void);

/* Opaque handle to a parsed, structurally checked distribution spec. */
typedef struct pmclt_spec pmclt_spec;

pmclt_status pmclt_spec_parse(const char* json_text, pmclt_spec** out);
pmclt_status pmclt_spec_load(const char* path, pmclt_spec** out);

/* Builds the worked three-piece family for a given epsilon in (0, 1). */
pmclt_status pmclt_spec_example(double epsilon, pmclt_spec** out);

/* Serializes the spec back to its document form (round-trips with parse). */
pmclt_status pmclt_spec_to_json(const pmclt_spec* spec, char** out_json);

void pmclt_spec_free(pmclt_spec* spec);
void pmclt_string_free(char* s);

/* Point evaluations of the underlying distribution. */
pmclt_status pmclt_spec_sigma(const pmclt_spec* spec, double* out);
pmclt_status pmclt_pdf(const pmclt_spec* spec, double x, double* out);
pmclt_status pmclt_cdf(const pmclt_spec* spec, double x, double* out);
pmclt_status pmclt_cf(const pmclt_spec* spec, double t, double* out_re, double* out_im);
pmclt_status pmclt_moment(const pmclt_spec* spec, int k, double* out);

/* Full integral validation report as a JSON object. */
pmclt_status pmclt_validation_json(const pmclt_spec* spec, char** out_json);

/* Pseudomoment report (orders 3..m, truncation split at sigma sqrt(n)). */
pmclt_status pmclt_pseudomoments_json(const pmclt_spec* spec, int m, int64_t n,
                                      char** out_json);

/* Command documents. ns is an array of count sum lengths (>= 1 entries).
 * grid_json configures the inversion grid; pass NULL for defaults. Accepted
 * keys: x_halfwidth, points, t_cutoff, quad_tol, mc_samples, mc_seed. */
pmclt_status pmclt_bound_json(const pmclt_spec* spec, int m, const int64_t* ns, size_t count,
                              char** out_json);
pmclt_status pmclt_empirical_json(const pmclt_spec* spec, const int64_t* ns, size_t count,
                                  const char* grid_json, char** out_json);
pmclt_status pmclt_verify_json(const pmclt_spec* spec, int m, const int64_t* ns, size_t count,
                               const char* grid_json, char** out_json, int* out_pass);
pmclt_status pmclt_lemma_check_json(const pmclt_spec* spec, int m, int64_t n,
                                    int points_per_branch, char** out_json, int* out_ok);

#ifdef __cplusplus
}
#endif

#endif /* PMCLT_H */
