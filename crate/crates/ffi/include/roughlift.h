#ifndef ROUGHLIFT_H
#define ROUGHLIFT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum RlStatus {
  RL_STATUS_OK = 0,
  RL_STATUS_NULL_POINTER = 1,
  RL_STATUS_INVALID_PARAMS = 2,
  RL_STATUS_INVALID_INPUT = 3,
  RL_STATUS_GRID_MISMATCH = 4,
  RL_STATUS_GROUP_MEMBERSHIP = 5,
  RL_STATUS_RESOURCE_LIMIT = 6,
  RL_STATUS_IO = 7,
  RL_STATUS_BUFFER_TOO_SMALL = 8,
  RL_STATUS_PANIC = 9,
} RlStatus;

/**
 * A step-2 lift on `[0, 1]`.
 */
typedef struct RlLift RlLift;

/**
 * A sampled path on `[0, 1]`.
 */
typedef struct RlPath RlPath;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a path from `n_samples × dim` row-major values on the uniform grid
 * of `[0, 1]`. `n_samples` must be `2^L + 1`.
 *
 * # Safety
 * `values` must point to `n_samples * dim` readable doubles and `out` must be
 * a valid pointer to a handle slot.
 */
enum RlStatus rl_path_from_samples(const double *values,
                                   size_t n_samples,
                                   size_t dim,
                                   struct RlPath **out);

/**
 * Generates a seeded random path with the given regularity.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum RlStatus rl_path_generate(double alpha,
                               double p,
                               uint64_t seed,
                               uint32_t level,
                               size_t dim,
                               struct RlPath **out);

/**
 * Number of samples, or 0 for a null handle.
 *
 * # Safety
 * `path` must be null or a live handle.
 */
size_t rl_path_len(const struct RlPath *path);

/**
 * Dimension, or 0 for a null handle.
 *
 * # Safety
 * `path` must be null or a live handle.
 */
size_t rl_path_dim(const struct RlPath *path);

/**
 * Copies the `len × dim` row-major samples into `out`.
 *
 * # Safety
 * `path` must be a live handle and `out` must hold `cap` writable doubles.
 */
enum RlStatus rl_path_values(const struct RlPath *path, double *out, size_t cap);

/**
 * Fractional Sobolev norm of the path.
 *
 * # Safety
 * `path` must be a live handle and `out` a valid pointer.
 */
enum RlStatus rl_path_sobolev_norm(const struct RlPath *path, double alpha, double p, double *out);

/**
 * Releases a path handle. Null is ignored.
 *
 * # Safety
 * `path` must be null or a handle not yet freed.
 */
void rl_path_free(struct RlPath *path);

/**
 * Lifts `path` at wavelet truncation level `truncation`.
 *
 * # Safety
 * `path` must be a live handle and `out` a valid pointer to a handle slot.
 */
enum RlStatus rl_lift(const struct RlPath *path,
                      double alpha,
                      double p,
                      uint32_t truncation,
                      struct RlLift **out);

/**
 * Number of grid points, or 0 for a null handle.
 *
 * # Safety
 * `lift` must be null or a live handle.
 */
size_t rl_lift_len(const struct RlLift *lift);

/**
 * Dimension of the underlying path, or 0 for a null handle.
 *
 * # Safety
 * `lift` must be null or a live handle.
 */
size_t rl_lift_dim(const struct RlLift *lift);

/**
 * Copies the element at grid index `index`: `dim` first-level values into
 * `level1` and `dim × dim` row-major second-level values into `level2`.
 *
 * # Safety
 * `lift` must be a live handle; the buffers must hold `dim` and `dim * dim`
 * writable doubles.
 */
enum RlStatus rl_lift_element(const struct RlLift *lift,
                              size_t index,
                              double *level1,
                              double *level2);

/**
 * Rough Sobolev norm of the lift.
 *
 * # Safety
 * `lift` must be a live handle and `out` a valid pointer.
 */
enum RlStatus rl_lift_rough_norm(const struct RlLift *lift, double alpha, double p, double *out);

/**
 * Releases a lift handle. Null is ignored.
 *
 * # Safety
 * `lift` must be null or a handle not yet freed.
 */
void rl_lift_free(struct RlLift *lift);

/**
 * Copies the last error message of this thread, NUL-terminated and truncated
 * to `cap` bytes. Returns the full length including the terminator, or 0 when
 * the last call succeeded.
 *
 * # Safety
 * `buf` must be null or hold `cap` writable bytes.
 */
size_t rl_last_error_message(char *buf, size_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROUGHLIFT_H */
