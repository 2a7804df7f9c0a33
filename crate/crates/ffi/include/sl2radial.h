#ifndef SL2RADIAL_H
#define SL2RADIAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SL2R_STATUS_OK = 0,
  SL2R_STATUS_NULL_POINTER = 1,
  SL2R_STATUS_DOMAIN = 2,
  SL2R_STATUS_POLE = 3,
  SL2R_STATUS_INVALID_C = 4,
  SL2R_STATUS_NO_CONVERGENCE = 5,
  SL2R_STATUS_PARITY = 6,
  SL2R_STATUS_AT_EIGENVALUE = 7,
  SL2R_STATUS_INDEX = 8,
  SL2R_STATUS_UNWRAP = 9,
  SL2R_STATUS_ILL_CONDITIONED = 10,
  SL2R_STATUS_STEP_FAILURE = 11,
  SL2R_STATUS_CONFIG = 12,
  SL2R_STATUS_BUFFER_TOO_SMALL = 13,
  SL2R_STATUS_PANIC = 14,
} Sl2rStatus;

/**
 * Opaque model handle.
 */
typedef struct Sl2rModel Sl2rModel;

typedef struct {
  double re;
  double im;
} Sl2rComplex;

typedef struct {
  double omega[4];
  double winding_closed;
  double winding_numeric;
  size_t bound_count;
  bool pass;
} Sl2rIndexReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a model for (mu, nu) and stores the handle in `*out_model`.
 *
 * # Safety
 * `out_model` must be a valid pointer to writable storage.
 */
Sl2rStatus sl2r_model_new(double mu, double nu, Sl2rModel **out_model);

/**
 * # Safety
 * `model` must be null or a handle from [`sl2r_model_new`] not yet freed.
 */
void sl2r_model_free(Sl2rModel *model);

/**
 * alpha = (1 + mu + nu)/2 and beta = (1 + mu - nu)/2.
 *
 * # Safety
 * `model` must be a live handle; the out-pointers must be valid.
 */
Sl2rStatus sl2r_model_alpha_beta(const Sl2rModel *model, double *out_alpha, double *out_beta);

/**
 * Scattering coefficient sigma(k) for k > 0.
 *
 * # Safety
 * `model` must be a live handle; `out_sigma` must be valid.
 */
Sl2rStatus sl2r_sigma(const Sl2rModel *model, double k, Sl2rComplex *out_sigma);

/**
 * # Safety
 * `model` must be a live handle; `out_count` must be valid.
 */
Sl2rStatus sl2r_bound_state_count(const Sl2rModel *model, size_t *out_count);

/**
 * Writes the bound-state zetas in decreasing order into `zetas[0..cap]`
 * and the count into `*out_len`. The energies are -zeta^2. When `cap` is
 * too small nothing is written to `zetas` and `*out_len` holds the count
 * needed.
 *
 * # Safety
 * `zetas` must point to `cap` writable doubles (it may be null when `cap`
 * is zero); `out_len` must be valid.
 */
Sl2rStatus sl2r_bound_state_levels(const Sl2rModel *model,
                                   double *zetas,
                                   size_t cap,
                                   size_t *out_len);

/**
 * W(zeta) = [L, M] at an interior point Re zeta > 0.
 *
 * # Safety
 * `model` must be a live handle; `out_w` must be valid.
 */
Sl2rStatus sl2r_wronskian(const Sl2rModel *model, Sl2rComplex zeta, Sl2rComplex *out_w);

/**
 * Resolvent kernel R(-zeta^2; x, y) at an interior point.
 *
 * # Safety
 * `model` must be a live handle; `out_r` must be valid.
 */
Sl2rStatus sl2r_resolvent_kernel(const Sl2rModel *model,
                                 Sl2rComplex zeta,
                                 double x,
                                 double y,
                                 Sl2rComplex *out_r);

/**
 * Spectral density kernel p(k^2; x, y), which is real.
 *
 * # Safety
 * `model` must be a live handle; `out_p` must be valid.
 */
Sl2rStatus sl2r_spectral_density(const Sl2rModel *model,
                                 double k,
                                 double x,
                                 double y,
                                 double *out_p);

/**
 * Compares the closed-form and numeric winding numbers with the bound-state
 * count on a truncated contour with edges at k_max and s_max.
 *
 * # Safety
 * `model` must be a live handle; `out_report` must be valid.
 */
Sl2rStatus sl2r_verify_index(const Sl2rModel *model,
                             double k_max,
                             double s_max,
                             Sl2rIndexReport *out_report);

/**
 * Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.
 *
 * # Safety
 * `out_value` must be valid.
 */
Sl2rStatus sl2r_gauss_2f1(Sl2rComplex a,
                          Sl2rComplex b,
                          Sl2rComplex c,
                          double z,
                          Sl2rComplex *out_value);

/**
 * Message for the last failed call on this thread, or null after a
 * successful call. The pointer stays valid until the next call into the
 * library from the same thread.
 */
const char *sl2r_last_error_message(void);

/**
 * Static name of a status code.
 */
const char *sl2r_status_name(Sl2rStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SL2RADIAL_H */
