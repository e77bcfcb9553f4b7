/* SPDX-License-Identifier: Apache-2.0
 *
 * cmvroots — polynomial rootfinding via a structured QR eigensolver on a
 * CMV-like permuted companion matrix, with a dense QR reference path and
 * benchmark error metrics.
 *
 * C surface: opaque handles, integer status codes, no global state. All
 * handles are created by cmv_* constructors and released with the matching
 * destroy call; distinct handles may be used concurrently from different
 * threads.
 */
#ifndef CMVROOTS_H
#define CMVROOTS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CMV_API __declspec(dllexport)
#else
#define CMV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cmv_poly cmv_poly;     /* complex-coefficient polynomial */
typedef struct cmv_report cmv_report; /* solve result + statistics */

typedef enum cmv_status {
  CMV_OK = 0,
  CMV_ERR_INVALID_ARGUMENT = 1,
  CMV_ERR_PARSE = 2,
  CMV_ERR_NO_CONVERGENCE = 3,
  CMV_ERR_INTERNAL = 4
} cmv_status;

CMV_API const char* cmv_status_message(cmv_status s);

/* Machine precision used by the error model (nne). */
CMV_API double cmv_unit_roundoff(void);

/* --- polynomials ------------------------------------------------------- */

/* Coefficients c_0..c_{count-1} in increasing degree order; im may be NULL
 * for real polynomials. Trailing zero coefficients are rejected. */
CMV_API cmv_status cmv_poly_create(const double* re, const double* im, size_t count, cmv_poly** out);

/* Text format: one "re im" pair per line (im optional, default 0), '#'
 * comments and blank lines ignored, line k holds c_{k-1}. Trailing zero
 * coefficients are trimmed. On parse failure *bad_line (when non-NULL) gets
 * the offending 1-based line number. */
CMV_API cmv_status cmv_poly_from_file(const char* path, cmv_poly** out, size_t* bad_line);

/* Benchmark families. family: "P1".."P6"; variant: for P4 one of
 * "bernoulli" | "chebyshev" | "exp", otherwise NULL; lambda only for P3;
 * seed only for P5/P6. n is the family parameter (P1/P2/P6 give degree 2n,
 * P3 degree n+1, P4/P5 degree n). */
CMV_API cmv_status cmv_poly_gen(const char* family, const char* variant, size_t n, double lambda, uint64_t seed,
                                cmv_poly** out);

CMV_API void cmv_poly_destroy(cmv_poly* p);
CMV_API size_t cmv_poly_degree(const cmv_poly* p);
CMV_API cmv_status cmv_poly_coeff(const cmv_poly* p, size_t j, double* re, double* im);

/* p(z) by Horner plus the scaled residual |p(z)| / sum_j |c_j||z|^j. */
CMV_API cmv_status cmv_poly_eval(const cmv_poly* p, double z_re, double z_im, double* out_re, double* out_im,
                                 double* scaled_residual);

/* Closed-form roots of the P1 family (2n values). */
CMV_API cmv_status cmv_p1_roots(size_t n, double* re, double* im);

/* --- solving ----------------------------------------------------------- */

typedef struct cmv_solve_options {
  long max_sweeps;             /* <= 0: default 30 * degree */
  double deflation_multiplier; /* <= 0: default 1.0 */
  int dense_fallback;          /* nonzero: finish stuck windows densely */
} cmv_solve_options;

/* Fast structured solver. opts may be NULL for defaults. Returns
 * CMV_ERR_NO_CONVERGENCE when the report is partial/flagged; the report is
 * still produced. */
CMV_API cmv_status cmv_solve(const cmv_poly* p, const cmv_solve_options* opts, cmv_report** out);

/* Dense QR reference solver (same shift/deflation policy). */
CMV_API cmv_status cmv_solve_dense(const cmv_poly* p, long max_sweeps, cmv_report** out);

CMV_API void cmv_report_destroy(cmv_report* r);
CMV_API size_t cmv_report_root_count(const cmv_report* r);
CMV_API cmv_status cmv_report_root(const cmv_report* r, size_t i, double* re, double* im);
CMV_API long cmv_report_sweeps(const cmv_report* r);
CMV_API double cmv_report_averit(const cmv_report* r);
CMV_API int cmv_report_converged(const cmv_report* r);
CMV_API size_t cmv_report_flag_count(const cmv_report* r);
CMV_API const char* cmv_report_flag(const cmv_report* r, size_t i);

/* --- error metrics ----------------------------------------------------- */

/* Greedy closest-pair matching of two equal-length root lists; writes the
 * per-pair distances (reference order) into err[0..n-1]. */
CMV_API cmv_status cmv_match_roots(const double* a_re, const double* a_im, const double* b_re, const double* b_im,
                                   size_t n, double* err);

/* kappa_inf of the Vandermonde eigenvector matrix built from n roots.
 * Returns +inf (as a value) for numerically singular input. */
CMV_API cmv_status cmv_vandermonde_condition(const double* re, const double* im, size_t n, double* cond);

/* Matches the report's roots against a reference set and computes the
 * benchmark statistics: err (average matched error), nne (maximum expected
 * error: norm terms x kappa_inf(V) x eps), werr = err/nne (0 when nne is
 * infinite). ref arrays hold the reference roots; n must equal the report's
 * root count. *ambiguous (when non-NULL) is set when reference roots are
 * closer than 10x the largest matched error. */
CMV_API cmv_status cmv_error_stats(const cmv_poly* p, const cmv_report* r, const double* ref_re, const double* ref_im,
                                   size_t n, double* err, double* nne, double* werr, int* ambiguous);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CMVROOTS_H */
