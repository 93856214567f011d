#ifndef RLEMAW_H
#define RLEMAW_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RlemawStatus {
  RLEMAW_STATUS_OK = 0,
  RLEMAW_STATUS_NULL_POINTER = 1,
  RLEMAW_STATUS_INVALID_UTF8 = 2,
  RLEMAW_STATUS_INVALID_INPUT = 3,
  RLEMAW_STATUS_INVALID_HANDLE = 4,
  RLEMAW_STATUS_BUFFER_TOO_SMALL = 5,
  RLEMAW_STATUS_PANIC = 6,
} RlemawStatus;

/**
 * Opaque bundle of MAW structures for one text.
 */
typedef struct RlemawBundle RlemawBundle;

/**
 * A MAW as six integers; see `rlemaw_handle_expand`.
 */
typedef struct RlemawHandle {
  uint8_t type_id;
  uint32_t lead_symbol;
  uint64_t lead_count;
  uint64_t run_index;
  uint64_t run_span;
  uint64_t adjust_exponent;
} RlemawHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a bundle from UTF-8 text over the symbols it contains.
 *
 * # Safety
 * `text` must point to `len` readable bytes (or be null with `len == 0`);
 * `out` must be writable.
 */
enum RlemawStatus rlemaw_bundle_new(const uint8_t *text, size_t len, struct RlemawBundle **out);

/**
 * Builds a bundle from the `a^2 c^7 b^2` run format.
 *
 * # Safety
 * As for [`rlemaw_bundle_new`].
 */
enum RlemawStatus rlemaw_bundle_new_rle(const uint8_t *src, size_t len, struct RlemawBundle **out);

/**
 * Releases a bundle. Null is ignored.
 *
 * # Safety
 * `bundle` must come from `rlemaw_bundle_new*` and not be used afterwards.
 */
void rlemaw_bundle_free(struct RlemawBundle *bundle);

/**
 * Writes the number of MAWs of each type 1..5 to `counts[0..5]`.
 *
 * # Safety
 * `bundle` must be live; `counts` must have room for five values.
 */
enum RlemawStatus rlemaw_bundle_counts(const struct RlemawBundle *bundle, uint64_t *counts);

/**
 * Machine words held by the bundle's structures.
 *
 * # Safety
 * `bundle` must be live or null (null gives 0).
 */
uint64_t rlemaw_bundle_space_words(const struct RlemawBundle *bundle);

/**
 * Calls `callback` once per MAW whose type bit is set in `type_mask`
 * (bit `t-1` for type `t`; 0 selects every type). A nonzero return from
 * `callback` stops the enumeration.
 *
 * # Safety
 * `bundle` must be live; `callback` must be safe to call with `user`.
 */
enum RlemawStatus rlemaw_bundle_enumerate(const struct RlemawBundle *bundle,
                                          uint32_t type_mask,
                                          int32_t (*callback)(const struct RlemawHandle *handle,
                                                              void *user),
                                          void *user);

/**
 * Writes the MAW's code points to `buf` and its length to `out_len`.
 * Returns `BUFFER_TOO_SMALL` with the needed length when `cap` is short.
 *
 * # Safety
 * `bundle` and `handle` must be valid; `buf` must have room for `cap`
 * values; `out_len` must be writable.
 */
enum RlemawStatus rlemaw_handle_expand(const struct RlemawBundle *bundle,
                                       const struct RlemawHandle *handle,
                                       uint32_t *buf,
                                       size_t cap,
                                       size_t *out_len);

/**
 * As [`rlemaw_handle_expand`], writing UTF-8 bytes without a terminator.
 *
 * # Safety
 * As for [`rlemaw_handle_expand`], with `buf` holding `cap` bytes.
 */
enum RlemawStatus rlemaw_handle_expand_utf8(const struct RlemawBundle *bundle,
                                            const struct RlemawHandle *handle,
                                            uint8_t *buf,
                                            size_t cap,
                                            size_t *out_len);

/**
 * A static, NUL-terminated description of `status`.
 */
const char *rlemaw_status_message(enum RlemawStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RLEMAW_H */
