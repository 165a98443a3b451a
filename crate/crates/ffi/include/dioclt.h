#ifndef DIOCLT_H
#define DIOCLT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define DIOCLT_OK 0

#define DIOCLT_ERR_NULL 1

#define DIOCLT_ERR_INVALID 2

#define DIOCLT_ERR_BUDGET 3

#define DIOCLT_ERR_OVERFLOW 4

#define DIOCLT_ERR_DIVERGENT 5

#define DIOCLT_ERR_PANIC 6

#define DIOCLT_NORM_SUP 0

#define DIOCLT_NORM_EUCLIDEAN 1

/*
 `l^p` with the exponent passed separately.
 */
#define DIOCLT_NORM_P 2

/*
 Opaque problem handle.
 */
typedef struct DiocltProblem DiocltProblem;

/*
 Closed-form constants. The congruence-only fields are NaN in
 inhomogeneous mode.
 */
typedef struct DiocltConstants {
  double c_mean;
  double sigma2_theorem;
  double sigma2_proof_variant;
  double omega_n;
  double zeta_n;
  double zeta_n_bound;
  double residue_double_sum;
  double residue_double_sum_bound;
} DiocltConstants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Create an inhomogeneous problem. `weights` may be NULL for equal weights
 `n/m`; `p` is read only for `DIOCLT_NORM_P`.

 # Safety
 `thetas` must point to `m` doubles, `weights` to `m` doubles or be NULL,
 and `out` must be writable.
 */
int32_t dioclt_problem_new(uintptr_t m,
                           uintptr_t n,
                           const double *thetas,
                           const double *weights,
                           uint32_t norm_kind,
                           double p,
                           struct DiocltProblem **out);

/*
 Switch to congruence mode with `m + n` residues. The handle is unchanged
 on failure.

 # Safety
 `problem` must be a live handle and `residues` must point to `len` values.
 */
int32_t dioclt_problem_set_congruence(struct DiocltProblem *problem,
                                      const int64_t *residues,
                                      uintptr_t len,
                                      uint64_t modulus);

/*
 # Safety
 `problem` must be NULL or a handle from [`dioclt_problem_new`] not yet freed.
 */
void dioclt_problem_free(struct DiocltProblem *problem);

/*
 Exact count `Delta_T` at the sample `(u, v)`; `u` is row-major `m x n`.

 # Safety
 Pointers must be valid for their lengths; outputs must be writable.
 */
int32_t dioclt_delta(const struct DiocltProblem *problem,
                     const double *u,
                     uintptr_t u_len,
                     const double *v,
                     uintptr_t v_len,
                     double t,
                     uint64_t *total,
                     uint64_t *q_enumerated);

/*
 # Safety
 `problem` must be a live handle and `out` writable.
 */
int32_t dioclt_constants(const struct DiocltProblem *problem,
                         double tol,
                         struct DiocltConstants *out);

/*
 Exact average of `Delta_T` over the random parameters.

 # Safety
 `problem` must be a live handle and `out` writable.
 */
int32_t dioclt_exact_mean(const struct DiocltProblem *problem, double t, double *out);

/*
 Counts per annulus `e^s <= |q| < e^{s+1}`, `s < windows`, written to
 `counts[0..windows]`.

 # Safety
 Pointers must be valid for their lengths; `counts` must hold `windows` values.
 */
int32_t dioclt_window_counts(const struct DiocltProblem *problem,
                             const double *u,
                             uintptr_t u_len,
                             const double *v,
                             uintptr_t v_len,
                             uintptr_t windows,
                             uint64_t *counts);

/*
 Message for the last failure on this thread, or NULL. The pointer is valid
 until the next failing call on the same thread.
 */
const char *dioclt_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIOCLT_H */
