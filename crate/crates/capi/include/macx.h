#pragma once

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from the macx-capi crate; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status of a C ABI call. Nonzero values match the CLI exit codes, with an
 * extra code for null arguments.
 */
typedef enum MacxStatus {
  MACX_STATUS_OK = 0,
  MACX_STATUS_INVALID_INPUT = 2,
  MACX_STATUS_RESOURCE_LIMIT = 3,
  MACX_STATUS_INTERNAL = 4,
  MACX_STATUS_NULL_ARGUMENT = 5,
} MacxStatus;

/**
 * Opaque simplicial complex handle.
 */
typedef struct MacxComplex MacxComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the most recent failure on this thread, or null. Owned by
 * the library; valid until the next call on the thread.
 */
const char *macx_last_error(void);

/**
 * Frees a string returned through an `out` parameter.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void macx_string_free(char *s);

/**
 * Frees a complex handle.
 *
 * # Safety
 * `h` must come from this library and not be freed twice.
 */
void macx_complex_free(struct MacxComplex *h);

/**
 * Parses a complex from its JSON form `{"m": …, "facets": [[…], …]}`.
 *
 * # Safety
 * `text` must be a readable C string and `out` a writable pointer.
 */
enum MacxStatus macx_complex_from_json(const char *text, struct MacxComplex **out);

/**
 * Writes the JSON form of the complex to `out`.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum MacxStatus macx_complex_to_json(const struct MacxComplex *h, char **out);

/**
 * Number of vertices (counting ghosts), or 0 for a null handle.
 *
 * # Safety
 * `h` must be a live handle or null.
 */
uintptr_t macx_complex_vertex_count(const struct MacxComplex *h);

/**
 * Writes the canonical-form fingerprint, equal for isomorphic complexes.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum MacxStatus macx_complex_fingerprint(const struct MacxComplex *h, char **out);

/**
 * Builds the nerve of the dimension-`n` 2-truncated cube.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum MacxStatus macx_nerve_pcube(uintptr_t n, struct MacxComplex **out);

/**
 * Writes the bigraded Betti table as JSON. `coefficients` is one of
 * `rational`, `f2`, `fp:<p>`, `int`; `strip` restricts to the strip entries.
 *
 * # Safety
 * Pointer arguments must be readable/writable as for the other calls.
 */
enum MacxStatus macx_betti_json(const struct MacxComplex *h,
                                const char *coefficients,
                                bool strip,
                                char **out);

/**
 * Runs the Massey product of the given classes over the complex and writes
 * the verdict JSON. Classes use the text syntax, e.g. `"v1 u4"`.
 *
 * # Safety
 * `classes` must point to `len` readable C strings.
 */
enum MacxStatus macx_massey_json(const struct MacxComplex *h,
                                 const char *coefficients,
                                 const char *const *classes,
                                 uintptr_t len,
                                 char **out);

/**
 * Runs the canonical n-fold product on the 2-truncated cube nerve and writes
 * the verdict JSON.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum MacxStatus macx_massey_canonical_pcube(uintptr_t n, char **out);

/**
 * Searches the complex for an induced obstruction graph from the derived
 * catalog. On success `*found` says whether one exists, and when it does the
 * six witness vertices are written to `witness`. The first call derives the
 * catalog and caches it for the process.
 *
 * # Safety
 * `found` must be writable; `witness` must point to six writable `size_t`.
 */
enum MacxStatus macx_detect_obstruction(const struct MacxComplex *h,
                                        bool *found,
                                        uintptr_t *witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
