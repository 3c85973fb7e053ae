#ifndef ORBITFOURIER_H
#define ORBITFOURIER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OfEngine {
  OF_ENGINE_DIRECT = 0,
  OF_ENGINE_ORACLE = 1,
} OfEngine;

/**
 * Status codes. `OK` is zero; everything else is an error.
 */
typedef enum OfStatus {
  OF_STATUS_OK = 0,
  OF_STATUS_NULL_POINTER = 1,
  OF_STATUS_INVALID_ARGUMENT = 2,
  OF_STATUS_DOMAIN = 3,
  OF_STATUS_BOUND_EXCEEDED = 4,
  OF_STATUS_PARSE = 5,
  OF_STATUS_INTERNAL = 6,
  OF_STATUS_PANIC = 7,
} OfStatus;

/**
 * Opaque formula handle.
 */
typedef struct OfFormula OfFormula;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Computes the Fourier transform of the nilpotent orbit induced from the
 * Levi class `blocks[0..n_blocks]` on a component of the Cartan `h_cartan`.
 *
 * `component` is a selector such as `"real-order=3,1,2 pair-signs=+"` with
 * 1-based coordinates; null or an empty string selects the standard
 * component. `engine` is an `OfEngine` value. On success `*out` receives a
 * new handle.
 *
 * # Safety
 * `blocks` must point to `n_blocks` readable `size_t` values. `component`
 * must be null or a NUL-terminated string. `out` must be a valid pointer to
 * writable storage for one handle.
 */
enum OfStatus of_nilpotent_ft(const size_t *blocks,
                              size_t n_blocks,
                              size_t cartan,
                              const char *component,
                              uint32_t engine,
                              struct OfFormula **out);

/**
 * Parses a formula record from JSON, validating it fully.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OfStatus of_formula_from_json(const char *json, struct OfFormula **out);

/**
 * Serializes the formula as a JSON record. Release `*out` with
 * [`of_string_free`].
 *
 * # Safety
 * `f` must be a live handle or null; `out` must be a valid pointer.
 */
enum OfStatus of_formula_to_json(const struct OfFormula *f, char **out);

/**
 * LaTeX rendering of the formula.
 *
 * # Safety
 * As for [`of_formula_to_json`].
 */
enum OfStatus of_formula_to_latex(const struct OfFormula *f, char **out);

/**
 * Plain text rendering of the formula.
 *
 * # Safety
 * As for [`of_formula_to_json`].
 */
enum OfStatus of_formula_to_text(const struct OfFormula *f, char **out);

/**
 * 1 if the transform vanishes on the component, 0 if not, -1 for a null
 * handle.
 *
 * # Safety
 * `f` must be a live handle or null.
 */
int32_t of_formula_is_zero(const struct OfFormula *f);

/**
 * Evaluates numerator and denominator at a rational point given as
 * numerator/denominator arrays of length `n`, writing the value of the
 * quotient as a double. Fails if the point is singular.
 *
 * # Safety
 * `f` must be a live handle; `num` and `den` must each point to `n`
 * readable `int64_t`; `out` must be valid.
 */
enum OfStatus of_formula_eval(const struct OfFormula *f,
                              const int64_t *num,
                              const int64_t *den,
                              size_t n,
                              double *out);

/**
 * Dimension of the nilpotent orbit induced from the Levi class.
 *
 * # Safety
 * `blocks` must point to `n_blocks` readable values; `out` must be valid.
 */
enum OfStatus of_orbit_dim(const size_t *blocks, size_t n_blocks, size_t *out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `f` must be null or a handle from this library not yet freed.
 */
void of_formula_free(struct OfFormula *f);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void of_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *of_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *of_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITFOURIER_H */
