#ifndef SPINBATH_H
#define SPINBATH_H

/* Generated by cbindgen from spinbath-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every FFI entry point.
typedef enum SbStatus {
  SB_STATUS_OK = 0,
  SB_STATUS_NULL_POINTER = 1,
  SB_STATUS_INVALID_PARAMS = 2,
  SB_STATUS_SINGULAR_SYSTEM = 3,
  SB_STATUS_NOT_CONVERGED = 4,
  SB_STATUS_NO_BOUNDARY = 5,
  SB_STATUS_INVALID_ARGUMENT = 6,
  SB_STATUS_INTERNAL_PANIC = 7,
} SbStatus;

// Spin-bath temperature limit selector for the closed-form results.
typedef enum SbRegime {
  SB_REGIME_LOW_T2 = 0,
  SB_REGIME_HIGH_T2 = 1,
} SbRegime;

// Opaque solved steady state.
typedef struct SbSteadyState SbSteadyState;

// Machine parameters; same semantics and constraints as the library's
// `ModelParams` (temperatures and rates positive, g non-negative).
typedef struct SbParams {
  double omega;
  double g;
  double t1;
  double t2;
  double p1;
  double p2;
} SbParams;

// Closed-form critical temperatures per condition and their maximum.
typedef struct SbCritTemps {
  double per_condition[3];
  double max;
} SbCritTemps;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Solve the exact steady state and hand back an owned opaque handle.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer. On
// `Ok` it receives a handle that must be released with
// [`sb_steady_state_free`]; on any other status it is set to null.
enum SbStatus sb_steady_state_new(struct SbParams params, struct SbSteadyState **out);

// Release a handle obtained from [`sb_steady_state_new`]. Null is a no-op.
//
// # Safety
// `ss` must be null or a pointer previously returned by
// [`sb_steady_state_new`] that has not been freed yet.
void sb_steady_state_free(struct SbSteadyState *ss);

// Copy the 4×4 joint steady state into caller buffers, row-major.
//
// # Safety
// `ss` must be a live handle; `out_re` and `out_im` must each point to at
// least 16 writable f64 slots.
enum SbStatus sb_steady_state_rho12(const struct SbSteadyState *ss, double *out_re, double *out_im);

// Bloch vector of one reduced qubit (1 = heat bath, 2 = spin bath).
//
// # Safety
// `ss` must be a live handle; `out_xyz` must point to at least 3 writable
// f64 slots.
enum SbStatus sb_steady_state_bloch(const struct SbSteadyState *ss,
                                    uint32_t qubit,
                                    double *out_xyz);

// ‖L·vec(ρ)‖∞ of the returned solution.
//
// # Safety
// `ss` must be a live handle; `out` must be writable.
enum SbStatus sb_steady_state_residual(const struct SbSteadyState *ss, double *out);

// l1-norm of coherence of one reduced qubit.
//
// # Safety
// `ss` must be a live handle; `out` must be writable.
enum SbStatus sb_steady_state_coherence(const struct SbSteadyState *ss,
                                        uint32_t qubit,
                                        double *out);

// Stabilizer-octahedron exterior test on a Bloch vector.
//
// # Safety
// `out_max_sum` and `out_has_magic` must be writable.
enum SbStatus sb_magic_report(double rx,
                              double ry,
                              double rz,
                              double tolerance,
                              double *out_max_sum,
                              bool *out_has_magic);

// Leading-order l1-coherence of the reduced heat-bath qubit (ω = 1 only).
//
// # Safety
// `out` must be writable.
enum SbStatus sb_coherence_perturbative(struct SbParams params, double *out);

// Order-1 or order-2 expansions of the three bound Bloch sums (ω = 1).
//
// # Safety
// `out_sums` must point to at least 3 writable f64 slots.
enum SbStatus sb_bloch_sums_perturbative(struct SbParams params, uint32_t order, double *out_sums);

// Closed-form critical heat-bath temperatures for rates p1 = p, p2 = μp.
// `t2` is read in the high-T2 regime only.
//
// # Safety
// `out` must be writable.
enum SbStatus sb_critical_temperature(double p,
                                      double mu,
                                      enum SbRegime regime,
                                      double t2,
                                      struct SbCritTemps *out);

// Allowed coupling windows at heat-bath temperature `t1` for rates
// p1 = p, p2 = μp. Per condition i, `out_present[i]` says whether a
// window exists and `out_lo[i]`/`out_hi[i]` carry its endpoints (zeroed
// when absent). `t2` is read in the high-T2 regime only.
//
// # Safety
// `out_lo`, `out_hi`, and `out_present` must each point to at least 3
// writable slots.
enum SbStatus sb_g_window(double p,
                          double mu,
                          double t1,
                          enum SbRegime regime,
                          double t2,
                          double *out_lo,
                          double *out_hi,
                          bool *out_present);

// Bisect the exact magic boundary in heat-bath temperature inside
// [t1_lo, t1_hi]; the `t1` field of `params` is ignored.
//
// # Safety
// `out` must be writable.
enum SbStatus sb_magic_boundary_exact(struct SbParams params,
                                      double t1_lo,
                                      double t1_hi,
                                      double *out);

// Static description of a status code.
const char *sb_status_message(enum SbStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINBATH_H */
