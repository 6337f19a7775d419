#ifndef HDGLAB_H
#define HDGLAB_H

/* This file is generated by cbindgen from the hdglab-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Matrix block selector of the local element system.
 */
typedef enum HdglabBlock {
  HDGLAB_BLOCK_INTERIOR_INTERIOR = 0,
  HDGLAB_BLOCK_INTERIOR_TRACE = 1,
  HDGLAB_BLOCK_TRACE_INTERIOR = 2,
  HDGLAB_BLOCK_TRACE_TRACE = 3,
} HdglabBlock;

/**
 * Reference element shape.
 */
typedef enum HdglabShape {
  HDGLAB_SHAPE_SEGMENT = 0,
  HDGLAB_SHAPE_SQUARE = 1,
  HDGLAB_SHAPE_CUBE = 2,
  HDGLAB_SHAPE_TETRAHEDRON = 3,
} HdglabShape;

/**
 * Status codes returned by every entry point.
 */
typedef enum HdglabStatus {
  HDGLAB_STATUS_OK = 0,
  HDGLAB_STATUS_INVALID_ARGUMENT = 1,
  HDGLAB_STATUS_UNSUPPORTED_CONFIG = 2,
  HDGLAB_STATUS_SINGULAR = 3,
  HDGLAB_STATUS_NO_CONVERGENCE = 4,
  HDGLAB_STATUS_NULL_POINTER = 5,
} HdglabStatus;

/**
 * Discretized first-order system.
 */
typedef enum HdglabSystem {
  HDGLAB_SYSTEM_HELMHOLTZ = 0,
  HDGLAB_SYSTEM_MAXWELL = 1,
  HDGLAB_SYSTEM_HYBRID_RT = 2,
} HdglabSystem;

/**
 * Opaque handle to one assembled local element system.
 */
typedef struct HdglabLocalMatrix HdglabLocalMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Assemble a local element system and return an owned handle through
 * `out`. Free it with [`hdglab_local_matrix_free`].
 *
 * # Safety
 * `out` must be a valid pointer to writable memory for one pointer.
 */
enum HdglabStatus hdglab_local_matrix_new(enum HdglabSystem system,
                                          enum HdglabShape shape,
                                          uint32_t p,
                                          double k_re,
                                          double k_im,
                                          double tau_re,
                                          double tau_im,
                                          double h,
                                          struct HdglabLocalMatrix **out);

/**
 * Release a handle returned by [`hdglab_local_matrix_new`].
 *
 * # Safety
 * `m` must be null or a pointer previously returned by
 * [`hdglab_local_matrix_new`] that has not been freed yet.
 */
void hdglab_local_matrix_free(struct HdglabLocalMatrix *m);

/**
 * Interior and trace dimensions of the element system.
 *
 * # Safety
 * `m` must be a live handle; `interior`/`trace` must be writable or null.
 */
enum HdglabStatus hdglab_local_matrix_dims(const struct HdglabLocalMatrix *m,
                                           size_t *interior,
                                           size_t *trace);

/**
 * Copy one block, row-major with interleaved real/imaginary parts.
 * `len` is the capacity of `out` in doubles (needs 2 * rows * cols).
 *
 * # Safety
 * `m` must be a live handle and `out` must point to at least `len`
 * writable doubles.
 */
enum HdglabStatus hdglab_local_matrix_block(const struct HdglabLocalMatrix *m,
                                            enum HdglabBlock block,
                                            double *out,
                                            size_t len);

/**
 * Smallest and largest singular values of the interior block.
 *
 * # Safety
 * `m` must be a live handle; out-pointers must be writable or null.
 */
enum HdglabStatus hdglab_local_matrix_sigma(const struct HdglabLocalMatrix *m,
                                            double *sigma_min,
                                            double *sigma_max);

/**
 * Statically condense the interior unknowns and copy the trace-by-trace
 * Schur complement (`len` in doubles, needs 2 * trace^2).
 *
 * # Safety
 * `m` must be a live handle and `out` must point to at least `len`
 * writable doubles.
 */
enum HdglabStatus hdglab_local_matrix_schur(const struct HdglabLocalMatrix *m,
                                            double *out,
                                            size_t len);

/**
 * Solve the lattice dispersion relation `det F(k^h) = 0` at one angle.
 * `method` is 0 for the stabilized (HDG) scheme, 1 for hybrid RT.
 *
 * # Safety
 * Out-pointers must be writable or null.
 */
enum HdglabStatus hdglab_dispersion_solve(uint32_t method,
                                          uint32_t p,
                                          double kh,
                                          double tau_re,
                                          double tau_im,
                                          double theta,
                                          double *k_h_re,
                                          double *k_h_im,
                                          double *residual);

/**
 * Dispersive, dissipative and total wavenumber errors over `n_angles`
 * uniform angles in [0, pi/2].
 *
 * # Safety
 * Out-pointers must be writable or null.
 */
enum HdglabStatus hdglab_error_metrics(uint32_t method,
                                       uint32_t p,
                                       double kh,
                                       double tau_re,
                                       double tau_im,
                                       size_t n_angles,
                                       double *eps_disp,
                                       double *eps_dissip,
                                       double *eps_total);

/**
 * Search the stabilization parameter minimizing the total wavenumber
 * error; `im_positive` selects the branch of `Im(tau)`.
 *
 * # Safety
 * Out-pointers must be writable or null.
 */
enum HdglabStatus hdglab_optimal_tau(uint32_t p,
                                     double kh,
                                     bool im_positive,
                                     size_t n_angles,
                                     double *tau_re,
                                     double *tau_im,
                                     double *eps_total);

/**
 * One-shot smallest singular value of the interior block at `h = 1`
 * (Helmholtz on segments/squares, Maxwell on cubes/tetrahedra).
 *
 * # Safety
 * Out-pointers must be writable or null.
 */
enum HdglabStatus hdglab_sigma_min_normalized(enum HdglabShape shape,
                                              uint32_t p,
                                              double kh_re,
                                              double kh_im,
                                              double tau_re,
                                              double tau_im,
                                              double *out);

/**
 * Library version as a static C string.
 */
const char *hdglab_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HDGLAB_H */
