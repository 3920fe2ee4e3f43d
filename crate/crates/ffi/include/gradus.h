#ifndef GRADUS_H
#define GRADUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of the C API.
 */
typedef enum GradusStatus {
  GRADUS_STATUS_OK = 0,
  /**
   * A required pointer was null or a string was not UTF-8.
   */
  GRADUS_STATUS_NULL_OR_INVALID_ARGUMENT = 1,
  /**
   * Malformed or inconsistent input (parse errors, unknown names, shapes).
   */
  GRADUS_STATUS_INPUT_ERROR = 2,
  /**
   * A precondition failed or the computation could not complete.
   */
  GRADUS_STATUS_COMPUTATION_ERROR = 3,
  /**
   * An internal panic was caught at the boundary.
   */
  GRADUS_STATUS_INTERNAL_ERROR = 4,
} GradusStatus;

/**
 * Opaque algebra handle.
 */
typedef struct GradusAlgebra GradusAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next gradus call on the same thread.
 */
const char *gradus_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void gradus_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *gradus_version(void);

/**
 * Build a catalog algebra such as `"sl2c-real-z2"` or `"e8-split-z3"`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be valid for writes.
 */
enum GradusStatus gradus_catalog_build(const char *name, struct GradusAlgebra **out);

/**
 * Parse an algebra from its JSON interchange form.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be valid for writes.
 */
enum GradusStatus gradus_algebra_from_json(const char *json, struct GradusAlgebra **out);

/**
 * Release an algebra handle. Null is ignored.
 *
 * # Safety
 * `alg` must be null or a handle from this library, freed once.
 */
void gradus_algebra_free(struct GradusAlgebra *alg);

/**
 * Dimension of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
size_t gradus_algebra_dim(const struct GradusAlgebra *alg);

/**
 * Grading modulus, or 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
uint32_t gradus_algebra_modulus(const struct GradusAlgebra *alg);

/**
 * Algebra JSON.
 *
 * # Safety
 * `alg` must be a live handle; `out` must be valid for writes.
 */
enum GradusStatus gradus_algebra_to_json(const struct GradusAlgebra *alg, char **out);

/**
 * Axiom report; `*passed` receives whether every check holds.
 *
 * # Safety
 * `alg` must be a live handle; `passed` and `out` must be valid for writes
 * (`passed` may be null).
 */
enum GradusStatus gradus_verify(const struct GradusAlgebra *alg, bool *passed, char **out);

/**
 * Nilpotent/semisimple predicates and Jordan decomposition. `element` is
 * element JSON or an expression such as `"E+F"`.
 *
 * # Safety
 * Pointers must be valid; `out` must be valid for writes.
 */
enum GradusStatus gradus_element_analyze(const struct GradusAlgebra *alg,
                                         const char *element,
                                         char **out);

/**
 * sl2-triple through a degree-1 nilpotent element.
 *
 * # Safety
 * Pointers must be valid; `out` must be valid for writes.
 */
enum GradusStatus gradus_jmv(const struct GradusAlgebra *alg, const char *element, char **out);

/**
 * Degree-1 nilpotent orbits with characteristic `h`. `samples` and
 * `box_radius` of 0 select the defaults.
 *
 * # Safety
 * Pointers must be valid; `out` must be valid for writes.
 */
enum GradusStatus gradus_nilorbits(const struct GradusAlgebra *alg,
                                   const char *h,
                                   uint64_t seed,
                                   size_t samples,
                                   uint32_t box_radius,
                                   char **out);

/**
 * k-vector analysis. `form` is multivector JSON, or an expression such as
 * `"e123"` on R^n with `n` given (n = 0 is rejected for expressions).
 *
 * # Safety
 * Pointers must be valid; `out` must be valid for writes.
 */
enum GradusStatus gradus_kform_analyze(const char *form, size_t n, bool dualize, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GRADUS_H */
