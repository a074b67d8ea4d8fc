#ifndef MODEXT_H
#define MODEXT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum ModextStatus {
  MODEXT_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MODEXT_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed input: bad JSON, shapes, non-prime q, invalid UTF-8.
   */
  MODEXT_STATUS_INVALID_INPUT = 2,
  /**
   * Well-formed input outside the mathematical domain of the call.
   */
  MODEXT_STATUS_DOMAIN = 3,
  /**
   * A `MODCODE_BUDGET` limit would be exceeded.
   */
  MODEXT_STATUS_BUDGET = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  MODEXT_STATUS_INTERNAL = 5,
} ModextStatus;

/**
 * Opaque code handle.
 */
typedef struct ModextCode ModextCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON code file (`{q, m, k, t, generators}`) into a new handle.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum ModextStatus modext_code_from_json(const char *json, struct ModextCode **out);

/**
 * Serializes a code to JSON. Free the result with [`modext_string_free`].
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum ModextStatus modext_code_to_json(const struct ModextCode *code, char **out);

/**
 * Number of coordinates of the code.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum ModextStatus modext_code_length(const struct ModextCode *code, size_t *out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `code` must be null or a handle not yet freed.
 */
void modext_code_free(struct ModextCode *code);

/**
 * Builds the minimum-length unextendable isometry `λ ↦ μ` over
 * `M_{m x k}(F_q)`. Requires `k > m`, otherwise returns `Domain`.
 *
 * # Safety
 * `lambda` and `mu` must be writable.
 */
enum ModextStatus modext_forge(uint64_t q,
                               size_t m,
                               size_t k,
                               struct ModextCode **lambda,
                               struct ModextCode **mu);

/**
 * Decides whether `λ(w) ↦ μ(w)` preserves Hamming weight and, if so,
 * whether it extends to a monomial map. `extendable` is false for
 * non-isometries.
 *
 * # Safety
 * `lambda` and `mu` must be live handles; `isometry` and `extendable` must be writable.
 */
enum ModextStatus modext_check(const struct ModextCode *lambda,
                               const struct ModextCode *mu,
                               bool *isometry,
                               bool *extendable);

/**
 * Shortest nontrivial solution length in `M_{m x t}(F_q)` up to `bound`.
 * `length` is 0 when none exists within the bound. `exhausted` is false
 * when the search budget ran out first.
 *
 * # Safety
 * `length` and `exhausted` must be writable.
 */
enum ModextStatus modext_min_length(uint64_t q,
                                    size_t m,
                                    size_t t,
                                    uint64_t bound,
                                    uint64_t *length,
                                    bool *exhausted);

/**
 * Gaussian binomial `[t choose i]_q` as a decimal string. Free the result
 * with [`modext_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum ModextStatus modext_gaussian_binomial(int64_t t, int64_t i, uint64_t q, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void modext_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread; do not free.
 */
const char *modext_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODEXT_H */
