/* elliptheta C API.
 *
 * All calls go through an opaque context holding truncation settings and the
 * last error message. Functions return an et_status; on failure the message is
 * available from et_last_error until the next call on the same context.
 * Strings returned through char** are owned by the caller (et_string_free).
 */
#ifndef ELLIPTHETA_H
#define ELLIPTHETA_H

#include <stdint.h>

#if defined(_WIN32)
#define ET_API __declspec(dllexport)
#else
#define ET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct et_context et_context;

typedef enum et_status {
  ET_OK = 0,
  ET_DOMAIN = 1,      /* parameters outside the regime of the formula */
  ET_POLE = 2,        /* evaluation at or too near a pole */
  ET_DIVERGENCE = 3,  /* series or integral does not decay */
  ET_PINCH = 4,       /* pole families pinch the contour */
  ET_CONTOUR = 5,     /* pole too close to the integration path */
  ET_ARGUMENT = 6,    /* malformed or out-of-range input */
  ET_CONSISTENCY = 7, /* exact arithmetic produced an impossible remainder */
  ET_EVALUATION = 8,  /* non-finite value */
  ET_INTERNAL = 100
} et_status;

typedef struct et_complex {
  double re;
  double im;
} et_complex;

typedef struct et_result {
  et_complex value;
  double err_estimate;
  int terms_used;
  double min_pole_distance; /* +inf when no pole is nearby */
  int converged;
} et_result;

ET_API const char* et_version(void);
ET_API const char* et_status_name(et_status s);

/* Truncation defaults honor ELLIPTHETA_TRUNC_SCALE at creation time. */
ET_API et_status et_context_create(et_context** out);
ET_API void et_context_destroy(et_context* ctx);
ET_API const char* et_last_error(const et_context* ctx);
/* JSON object with any of product_cutoff, series_cutoff, quad_points,
 * line_radius, tol_abs, tol_rel, pinch_tol. */
ET_API et_status et_set_truncation(et_context* ctx, const char* json);
ET_API et_status et_get_truncation(et_context* ctx, char** json_out);

ET_API void et_string_free(char* s);

/* theta */
ET_API et_status et_jacobi_theta(et_context* ctx, et_complex lambda, et_complex tau, et_result* out);
ET_API et_status et_jacobi_theta_dlam(et_context* ctx, et_complex lambda, et_complex tau, et_result* out);
ET_API et_status et_theta_basis(et_context* ctx, int j, int kappa, et_complex lambda, et_complex tau,
                                et_result* out);

/* elliptic hypergeometric kernel */
ET_API et_status et_u_hyper(et_context* ctx, et_complex lambda, et_complex mu, et_complex tau, et_complex sigma,
                            et_complex eta, et_result* out);

/* hypergeometric theta functions */
ET_API int et_is_admissible(int l, int kappa);
ET_API et_status et_delta_tilde(et_context* ctx, int l, int kappa, et_complex lambda, et_complex tau,
                                et_complex eta, et_result* out);
ET_API et_status et_delta(et_context* ctx, int l, int kappa, et_complex lambda, et_complex tau, et_complex eta,
                          et_result* out);

/* exact Macdonald polynomial P_j for m = 2; q is "p/q" */
ET_API et_status et_macdonald_m2(et_context* ctx, int j, const char* q, char** poly_out);

/* Generic JSON entry points.
 * et_eval:  {"target": name, "params": {...}, "trunc": {...}?}
 * et_table: same, with "a..b" strings or arrays spanning a grid
 * et_targets: list of targets with their parameters */
ET_API et_status et_eval(et_context* ctx, const char* request_json, char** response_json);
ET_API et_status et_table(et_context* ctx, const char* request_json, char** response_json);
ET_API et_status et_targets(et_context* ctx, char** response_json);

/* Verification suites: theta, ellint, hts, operators, macdonald, modular,
 * limits. all_pass (may be NULL) is set to 1 iff every non-skipped check passes. */
ET_API et_status et_suite_names(et_context* ctx, char** response_json);
ET_API et_status et_verify_suite(et_context* ctx, const char* suite, int kappa, uint64_t seed, char** report_json,
                                 int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
