#ifndef LKINV_H
#define LKINV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LkStatus {
  LK_STATUS_OK = 0,
  LK_STATUS_VALIDATION = 1,
  LK_STATUS_NUMERICAL = 2,
  LK_STATUS_IO = 3,
  LK_STATUS_NULL_POINTER = 4,
  LK_STATUS_UTF8 = 5,
  LK_STATUS_PANIC = 6,
  LK_STATUS_BUFFER_TOO_SMALL = 7,
} LkStatus;

typedef struct LkPlSet LkPlSet;

typedef struct LkPolytope LkPolytope;

typedef struct LkResolution LkResolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *lkinv_last_error(void);

/**
 * Static version string.
 */
const char *lkinv_version(void);

/**
 * Free a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void lkinv_string_free(char *s);

/**
 * Parse `{dim, vertices, facets}` JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LkStatus lkinv_polytope_from_json(const char *json, struct LkPolytope **out);

/**
 * # Safety
 * `p` must be null or a handle from `lkinv_polytope_from_json`.
 */
void lkinv_polytope_free(struct LkPolytope *p);

/**
 * Exact Lipschitz-Killing curvatures Λ_0..Λ_n into `out`.
 *
 * # Safety
 * `p` must be a live handle, `out` valid for `cap` writes, `len` writable.
 */
enum LkStatus lkinv_polytope_steiner(const struct LkPolytope *p,
                                     double *out,
                                     size_t cap,
                                     size_t *len);

/**
 * Parse a union `{dim, pieces}` or a single polytope.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LkStatus lkinv_plset_from_json(const char *json, struct LkPlSet **out);

/**
 * # Safety
 * `x` must be null or a handle from `lkinv_plset_from_json`.
 */
void lkinv_plset_free(struct LkPlSet *x);

/**
 * Λ_0..Λ_n of the union by inclusion-exclusion.
 *
 * # Safety
 * As for `lkinv_polytope_steiner`.
 */
enum LkStatus lkinv_plset_lk(const struct LkPlSet *x, double *out, size_t cap, size_t *len);

/**
 * Monte Carlo volume of the ε-tube, deterministic in `seed`.
 *
 * # Safety
 * `x` must be a live handle; `value` and `stderr` writable.
 */
enum LkStatus lkinv_tube_volume_mc(const struct LkPlSet *x,
                                   double eps,
                                   uint64_t samples,
                                   uint64_t seed,
                                   double *value,
                                   double *stderr);

/**
 * Parse resolution data JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LkStatus lkinv_resolution_from_json(const char *json, struct LkResolution **out);

/**
 * # Safety
 * `r` must be null or a handle from `lkinv_resolution_from_json`.
 */
void lkinv_resolution_free(struct LkResolution *r);

/**
 * Lefschetz number of the m-th monodromy iterate.
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum LkStatus lkinv_acampo_lefschetz(const struct LkResolution *r, uint64_t m, int64_t *out);

/**
 * Motivic Milnor fibre as JSON `{"class": "...", "chi": ...}`. `sign` null
 * selects the complex realization; otherwise one of "-1", "+1", "<", ">".
 * The string must be released with `lkinv_string_free`.
 *
 * # Safety
 * `r` must be a live handle, `sign` null or NUL-terminated, `out` writable.
 */
enum LkStatus lkinv_milnor_fibre_json(const struct LkResolution *r, const char *sign, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LKINV_H */
