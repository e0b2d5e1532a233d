#ifndef CBGEOM_H
#define CBGEOM_H

/* Generated by cbindgen from the cbgeom-ffi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call.
 */
typedef enum CbgStatus {
  /**
   * call succeeded
   */
  CBG_STATUS_OK = 0,
  /**
   * a required pointer argument was NULL
   */
  CBG_STATUS_NULL_ARGUMENT = 1,
  /**
   * a string argument was not valid UTF-8
   */
  CBG_STATUS_INVALID_UTF8 = 2,
  /**
   * the input text did not parse; `cbg_last_error` names the line
   */
  CBG_STATUS_PARSE_ERROR = 3,
  /**
   * arguments were structurally valid but rejected (bad prime, unknown
   * case name, degree 0, ...)
   */
  CBG_STATUS_BAD_INPUT = 4,
  /**
   * the caller buffer was too small; the `needed` out-parameter holds
   * the required length
   */
  CBG_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * an internal invariant failed (a bug on this side of the boundary)
   */
  CBG_STATUS_INTERNAL = 6,
} CbgStatus;

/**
 * A finite configuration of distinct points in P^2 or P^3. Opaque.
 */
typedef struct CbgPointSet CbgPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message from the most recent failing call on this thread
 * into `buf` (NUL-terminated, truncating if needed) and returns the full
 * message length excluding the NUL. `buf` may be NULL (with `cap` 0) to
 * query the length alone.
 */
size_t cbg_last_error(char *buf, size_t cap);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cbg_version(void);

/**
 * Parses the canonical point-set text format (`field`/`ambient` headers
 * followed by `point` lines) into a fresh handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum CbgStatus cbg_point_set_parse(const char *text, struct CbgPointSet **out);

/**
 * Samples one configuration of the named case (`"case-i"` .. `"case-v"`,
 * `"on-conic"`, `"on-plane"`, `"on-plane-cubic"`, `"on-twisted-cubic"`,
 * `"ci33"`) over F_prime with the case's default lengths.
 *
 * # Safety
 * `case` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum CbgStatus cbg_generate(const char *case_,
                            uint64_t prime,
                            uint64_t seed,
                            struct CbgPointSet **out);

/**
 * Releases a handle. NULL is a no-op.
 *
 * # Safety
 * `ps` must be a pointer previously returned by this library and not
 * already freed.
 */
void cbg_point_set_free(struct CbgPointSet *ps);

/**
 * Number of points; 0 for NULL.
 *
 * # Safety
 * `ps` must be a live handle or NULL.
 */
size_t cbg_point_set_len(const struct CbgPointSet *ps);

/**
 * Dimension of the ambient projective space (2 or 3); 0 for NULL.
 *
 * # Safety
 * `ps` must be a live handle or NULL.
 */
size_t cbg_point_set_ambient(const struct CbgPointSet *ps);

/**
 * Field characteristic: the prime for F_p, 0 for the rationals.
 *
 * # Safety
 * `ps` must be a live handle; `out` must be a valid pointer.
 */
enum CbgStatus cbg_point_set_characteristic(const struct CbgPointSet *ps, uint64_t *out);

/**
 * Renders the canonical text form (the same format `cbg_point_set_parse`
 * accepts) into `buf`. Two-call pattern via `needed`.
 *
 * # Safety
 * `ps` must be a live handle; `needed` must be valid; `buf` must point to
 * `cap` writable bytes or be NULL with `cap` 0.
 */
enum CbgStatus cbg_point_set_render(const struct CbgPointSet *ps,
                                    char *buf,
                                    size_t cap,
                                    size_t *needed);

/**
 * Rank of the degree-`degree` evaluation map: the number of conditions
 * the points impose on forms of that degree.
 *
 * # Safety
 * `ps` must be a live handle; `out` must be a valid pointer.
 */
enum CbgStatus cbg_conditions(const struct CbgPointSet *ps, uint32_t degree, size_t *out);

/**
 * Dimension of the space of degree-`degree` forms vanishing on all the
 * points.
 *
 * # Safety
 * `ps` must be a live handle; `out` must be a valid pointer.
 */
enum CbgStatus cbg_h0(const struct CbgPointSet *ps, uint32_t degree, size_t *out);

/**
 * Failure count of the degree-`degree` conditions: points minus rank.
 *
 * # Safety
 * `ps` must be a live handle; `out` must be a valid pointer.
 */
enum CbgStatus cbg_h1(const struct CbgPointSet *ps, uint32_t degree, size_t *out);

/**
 * Cayley-Bacharach verdict for degree `m`. Writes whether the property
 * holds to `satisfied` and the indices of the failing points (those whose
 * removal drops the rank) to `failing`, reporting the count in
 * `failing_len`. `failing` may be NULL with `failing_cap` 0 to query the
 * count; if the buffer is too small the count is still written and the
 * call returns `CBG_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `ps` must be a live handle; `satisfied` and `failing_len` must be valid
 * pointers; `failing` must point to `failing_cap` writable entries or be
 * NULL with `failing_cap` 0.
 */
enum CbgStatus cbg_cb(const struct CbgPointSet *ps,
                      uint32_t m,
                      bool *satisfied,
                      size_t *failing,
                      size_t failing_cap,
                      size_t *failing_len);

/**
 * Largest collinear and coplanar subsets and the count of independent
 * quadrics through the points (coplanar is the point count itself in
 * P^2).
 *
 * # Safety
 * `ps` must be a live handle; the three out-pointers must be valid.
 */
enum CbgStatus cbg_position(const struct CbgPointSet *ps,
                            size_t *max_collinear,
                            size_t *max_coplanar,
                            size_t *quadric_count);

/**
 * Writes the configuration-type tag (`"CaseI"` .. `"CaseV"`,
 * `"InQuadric"`, or `"Unclassified"`) determined by the curve-cover
 * classifier. Two-call pattern via `needed`.
 *
 * # Safety
 * `ps` must be a live handle; `needed` must be valid; `buf` must point to
 * `cap` writable bytes or be NULL with `cap` 0.
 */
enum CbgStatus cbg_classify(const struct CbgPointSet *ps, char *buf, size_t cap, size_t *needed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CBGEOM_H */
