#ifndef S1FIX_H
#define S1FIX_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum S1fixStatus {
  S1FIX_STATUS_OK = 0,
  S1FIX_STATUS_NULL_ARGUMENT = 1,
  S1FIX_STATUS_INVALID_UTF8 = 2,
  S1FIX_STATUS_PARSE = 3,
  S1FIX_STATUS_DOMAIN = 4,
  S1FIX_STATUS_VIOLATION = 5,
  S1FIX_STATUS_NUMERIC = 6,
  S1FIX_STATUS_PANIC = 7,
} S1fixStatus;

typedef enum S1fixMapFamily {
  /**
   * `(x, y) ↦ y − 2⟨x, y⟩x` on `S^{n-1} × S^{n-1}`, `n ∈ {2, 4, 8}`.
   */
  S1FIX_MAP_FAMILY_PHI = 0,
  /**
   * Unit multiplication of complex numbers, quaternions or octonions;
   * `n` is the algebra dimension.
   */
  S1FIX_MAP_FAMILY_MULTIPLICATION = 1,
} S1fixMapFamily;

/**
 * Parsed circle-action expression.
 */
typedef struct S1fixAction S1fixAction;

/**
 * Parsed space expression.
 */
typedef struct S1fixSpace S1fixSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * successful call. The pointer stays valid until the next call into this
 * library on the same thread.
 */
const char *s1fix_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *s1fix_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library that has not been
 * freed yet.
 */
void s1fix_string_free(char *s);

/**
 * Parses a space expression such as `wedge(S(2), P(2, 3))`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum S1fixStatus s1fix_space_parse(const char *text, struct S1fixSpace **out);

/**
 * # Safety
 * `space` must be NULL or a handle from this library that has not been freed.
 */
void s1fix_space_free(struct S1fixSpace *space);

/**
 * Canonical text form of a space.
 *
 * # Safety
 * `space` must be a live handle and `out` a writable pointer.
 */
enum S1fixStatus s1fix_space_to_string(const struct S1fixSpace *space, char **out);

/**
 * # Safety
 * `space` must be a live handle and `out` a writable pointer.
 */
enum S1fixStatus s1fix_space_euler_char(const struct S1fixSpace *space, int64_t *out);

/**
 * Sum of the rational Betti numbers.
 *
 * # Safety
 * `space` must be a live handle and `out` a writable pointer.
 */
enum S1fixStatus s1fix_space_total_rank(const struct S1fixSpace *space, uint64_t *out);

/**
 * Betti numbers as a JSON object keyed by degree, e.g. `{"0":1,"2":1}`.
 *
 * # Safety
 * `space` must be a live handle and `out` a writable pointer.
 */
enum S1fixStatus s1fix_space_ranks_json(const struct S1fixSpace *space, char **out);

/**
 * Parses an action expression such as `suspA(rotfree(3))`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum S1fixStatus s1fix_action_parse(const char *text, struct S1fixAction **out);

/**
 * # Safety
 * `action` must be NULL or a handle from this library that has not been
 * freed.
 */
void s1fix_action_free(struct S1fixAction *action);

/**
 * Space the action lives on, as a new handle.
 *
 * # Safety
 * `action` must be a live handle and `out` a writable pointer.
 */
enum S1fixStatus s1fix_action_total_space(const struct S1fixAction *action,
                                          struct S1fixSpace **out);

/**
 * Fixed-point set of the action, as a new handle.
 *
 * # Safety
 * `action` must be a live handle and `out` a writable pointer.
 */
enum S1fixStatus s1fix_action_fixed_set(const struct S1fixAction *action, struct S1fixSpace **out);

/**
 * Fixed-set report as JSON. Returns `S1FIX_STATUS_VIOLATION` when the rank
 * or Euler characteristic checks fail.
 *
 * # Safety
 * `action` must be a live handle and `out` a writable pointer.
 */
enum S1fixStatus s1fix_action_report_json(const struct S1fixAction *action, char **out);

/**
 * Component type of the fixed set, e.g. `pt ⊔ P2(2)`.
 *
 * # Safety
 * `action` must be a live handle and `out` a writable pointer.
 */
enum S1fixStatus s1fix_action_fixed_type(const struct S1fixAction *action, char **out);

/**
 * Admissible fixed-set types for actions on a Toda space with parameter
 * `n`, as a JSON array of strings, using the default P2 constraints.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum S1fixStatus s1fix_classify_json(uint32_t n, bool tnhz, char **out);

/**
 * Bidegree of a sphere map. For `Phi` with `n = 4` or `8` the first entry is
 * a Monte Carlo estimate using `samples` points per slice and `seed`.
 *
 * # Safety
 * `alpha` and `beta` must be writable pointers.
 */
enum S1fixStatus s1fix_bidegree(enum S1fixMapFamily family,
                                uint32_t n,
                                uint64_t samples,
                                uint64_t seed,
                                int64_t *alpha,
                                int64_t *beta);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* S1FIX_H */
