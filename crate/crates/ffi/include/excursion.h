#ifndef EXCURSION_H
#define EXCURSION_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Outcome of a call.
 */
typedef enum ExcStatus {
  EXC_STATUS_OK = 0,
  /*
   Argument outside the domain of the function.
   */
  EXC_STATUS_DOMAIN = 1,
  /*
   A quadrature or series did not reach its tolerance.
   */
  EXC_STATUS_NON_CONVERGENCE = 2,
  /*
   The quantity needs a finite speed measure.
   */
  EXC_STATUS_UNAVAILABLE = 3,
  /*
   The operation is not defined for this model.
   */
  EXC_STATUS_UNSUPPORTED = 4,
  /*
   Invalid configuration parameter.
   */
  EXC_STATUS_PARAMETER = 5,
  /*
   A simulation exceeded its step budget.
   */
  EXC_STATUS_BUDGET = 6,
  EXC_STATUS_NULL_POINTER = 7,
  /*
   Internal panic; the library state is unaffected.
   */
  EXC_STATUS_PANIC = 8,
} ExcStatus;

/*
 Which scalar function of a model to evaluate.
 */
typedef enum ExcQuantity {
  /*
   Lévy density of the inverse local time, argument `t`.
   */
  EXC_QUANTITY_NU = 0,
  /*
   Excursion length tail, argument `t`.
   */
  EXC_QUANTITY_NU_TAIL = 1,
  /*
   Laplace exponent, argument `lambda`.
   */
  EXC_QUANTITY_PHI = 2,
  /*
   `p(t; 0, 0)`, argument `t`.
   */
  EXC_QUANTITY_P00 = 3,
  /*
   Scale function, argument `x`.
   */
  EXC_QUANTITY_SCALE = 4,
  /*
   Drift of the process conditioned to avoid 0, argument `x`.
   */
  EXC_QUANTITY_UPWARD_DRIFT = 5,
} ExcQuantity;

/*
 Which straddle-law function to evaluate.
 */
typedef enum ExcStraddleQuantity {
  /*
   Density of `D_T − G_T`.
   */
  EXC_STRADDLE_QUANTITY_DENSITY_DELTA = 0,
  /*
   Density of `T − G_T`.
   */
  EXC_STRADDLE_QUANTITY_DENSITY_AGE = 1,
  /*
   Density of `D_T − T`.
   */
  EXC_STRADDLE_QUANTITY_DENSITY_RESIDUAL = 2,
  /*
   Density of `G_T`.
   */
  EXC_STRADDLE_QUANTITY_DENSITY_LAST_ZERO = 3,
  EXC_STRADDLE_QUANTITY_CDF_DELTA = 4,
  EXC_STRADDLE_QUANTITY_CDF_AGE = 5,
  EXC_STRADDLE_QUANTITY_CDF_RESIDUAL = 6,
  EXC_STRADDLE_QUANTITY_CDF_LAST_ZERO = 7,
  /*
   `E[exp(−g Δ_T)]`, argument `g ≥ 0`.
   */
  EXC_STRADDLE_QUANTITY_LAPLACE_DELTA = 8,
} ExcStraddleQuantity;

/*
 Reflected diffusion model.
 */
typedef struct ExcModel ExcModel;

/*
 Straddling-excursion laws of a model at a fixed rate.
 */
typedef struct ExcStraddleLaw ExcStraddleLaw;

/*
 Verification suite counts.
 */
typedef struct ExcVerifySummary {
  size_t passed;
  size_t failed;
  size_t non_converged;
  size_t unavailable;
} ExcVerifySummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread (empty after success).
 */
const char *exc_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *exc_version(void);

/*
 Reflected Ornstein-Uhlenbeck process with drift rate `gamma > 0`.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum ExcStatus exc_model_ou(double gamma, struct ExcModel **out);

/*
 Reflected Brownian motion.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum ExcStatus exc_model_bm(struct ExcModel **out);

/*
 Releases a model handle; null is ignored.

 # Safety
 `model` must come from `exc_model_ou`/`exc_model_bm` and not be used afterwards.
 */
void exc_model_free(struct ExcModel *model);

/*
 Evaluates a one-argument model function.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum ExcStatus exc_model_eval(const struct ExcModel *model,
                              enum ExcQuantity quantity,
                              double arg,
                              double *out);

/*
 Transition density of the process killed at 0, w.r.t. the speed measure.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum ExcStatus exc_phat(const struct ExcModel *model, double t, double x, double y, double *out);

/*
 Density of the first hitting time of 0 from `x`, at time `t`.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum ExcStatus exc_f_hit(const struct ExcModel *model, double x, double t, double *out);

/*
 Straddle laws of `model` at rate `alpha > 0`. The model is copied.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum ExcStatus exc_straddle_new(const struct ExcModel *model,
                                double alpha,
                                struct ExcStraddleLaw **out);

/*
 Releases a straddle-law handle; null is ignored.

 # Safety
 `law` must come from `exc_straddle_new` and not be used afterwards.
 */
void exc_straddle_free(struct ExcStraddleLaw *law);

/*
 Evaluates a straddle-law function.

 # Safety
 `law` must be a live handle and `out` writable.
 */
enum ExcStatus exc_straddle_eval(const struct ExcStraddleLaw *law,
                                 enum ExcStraddleQuantity quantity,
                                 double arg,
                                 double *out);

/*
 Draws `n` exact samples of `(G_T, T − G_T, D_T − T)` for `T ~ Exp(alpha)`
 into three caller buffers of length `n`. `gamma = 0` is Brownian motion.
 The samples are a function of `(gamma, alpha, n, seed)` only.

 # Safety
 Each buffer must be valid for `n` writes of `double`.
 */
enum ExcStatus exc_sample_straddle_exact(double gamma,
                                         double alpha,
                                         size_t n,
                                         uint64_t seed,
                                         double *g,
                                         double *t_minus_g,
                                         double *d_minus_t);

/*
 Runs the identity battery for one model at rate `alpha` and reports counts.
 Returns `EXC_STATUS_OK` even when checks fail; inspect the summary.

 # Safety
 `model` must be a live handle and `out` writable.
 */
enum ExcStatus exc_verify(const struct ExcModel *model, double alpha, struct ExcVerifySummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXCURSION_H */
