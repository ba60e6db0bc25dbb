#ifndef CPPLAB_H
#define CPPLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CpplabClass {
  CPPLAB_CLASS_C1 = 1,
  CPPLAB_CLASS_C2 = 2,
  CPPLAB_CLASS_C3 = 3,
} CpplabClass;

/**
 * Defining polynomial of the quadratic top layer.
 */
typedef enum CpplabModulus {
  /**
   * `X^2 + 1`
   */
  CPPLAB_MODULUS_X2_PLUS1 = 0,
  /**
   * `X^2 + 2X + 2`
   */
  CPPLAB_MODULUS_X2_PLUS2_X_PLUS2 = 1,
  /**
   * `X^2 + X + 2`
   */
  CPPLAB_MODULUS_X2_PLUS_X_PLUS2 = 2,
  /**
   * `X^2 - c` for the first non-square `c` of the base field.
   */
  CPPLAB_MODULUS_AUTO = 3,
} CpplabModulus;

/**
 * Status codes returned by every fallible function.
 */
typedef enum CpplabStatus {
  CPPLAB_STATUS_OK = 0,
  /**
   * A verification ran and some assertion failed.
   */
  CPPLAB_STATUS_VERIFY_FAILED = 1,
  CPPLAB_STATUS_INVALID_ARGUMENT = 2,
  CPPLAB_STATUS_NULL_POINTER = 3,
  CPPLAB_STATUS_NOT_PRIME = 4,
  CPPLAB_STATUS_HYPOTHESIS_VIOLATED = 5,
  CPPLAB_STATUS_UNSUPPORTED_SIZE = 6,
  CPPLAB_STATUS_NOT_INVERTIBLE = 7,
  CPPLAB_STATUS_DIVISION_BY_ZERO = 8,
  CPPLAB_STATUS_BUFFER_TOO_SMALL = 9,
  CPPLAB_STATUS_INTERNAL = 10,
  CPPLAB_STATUS_PANIC = 11,
} CpplabStatus;

/**
 * A validated family instance.
 */
typedef struct CpplabFamily CpplabFamily;

/**
 * The field `F_{p^{2m}}`.
 */
typedef struct CpplabField CpplabField;

/**
 * Outcome of a verification sweep.
 */
typedef struct CpplabReport CpplabReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Do not free.
 */
const char *cpplab_version(void);

/**
 * Message of the last failed call on this thread, or NULL if none.
 * Release with `cpplab_string_free`.
 */
char *cpplab_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void cpplab_string_free(char *s);

/**
 * Builds `F_{p^{2m}}`. `max_q` caps exhaustive sweeps; 0 keeps the default.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum CpplabStatus cpplab_field_new(uint64_t p,
                                   uint32_t m,
                                   enum CpplabModulus top,
                                   uint64_t max_q,
                                   struct CpplabField **out);

/**
 * # Safety
 * `field` must be NULL or a live handle from `cpplab_field_new`/`cpplab_family_field`.
 */
void cpplab_field_free(struct CpplabField *field);

/**
 * Field order `q = p^{2m}`, or 0 for a NULL handle.
 *
 * # Safety
 * `field` must be NULL or a live handle.
 */
uint64_t cpplab_field_order(const struct CpplabField *field);

/**
 * # Safety
 * `field` must be a live handle and `out` valid for a write.
 */
enum CpplabStatus cpplab_field_add(const struct CpplabField *field,
                                   uint64_t a,
                                   uint64_t b,
                                   uint64_t *out);

/**
 * # Safety
 * `field` must be a live handle and `out` valid for a write.
 */
enum CpplabStatus cpplab_field_sub(const struct CpplabField *field,
                                   uint64_t a,
                                   uint64_t b,
                                   uint64_t *out);

/**
 * # Safety
 * `field` must be a live handle and `out` valid for a write.
 */
enum CpplabStatus cpplab_field_mul(const struct CpplabField *field,
                                   uint64_t a,
                                   uint64_t b,
                                   uint64_t *out);

/**
 * Inverse of a nonzero element.
 *
 * # Safety
 * `field` must be a live handle and `out` valid for a write.
 */
enum CpplabStatus cpplab_field_inv(const struct CpplabField *field, uint64_t a, uint64_t *out);

/**
 * # Safety
 * `field` must be a live handle and `out` valid for a write.
 */
enum CpplabStatus cpplab_field_pow(const struct CpplabField *field,
                                   uint64_t a,
                                   uint64_t e,
                                   uint64_t *out);

/**
 * Validates a family. Pass `s = 0` for C1 and C2.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum CpplabStatus cpplab_family_new(enum CpplabClass class_,
                                    uint64_t p,
                                    uint32_t m,
                                    uint64_t s,
                                    enum CpplabModulus top,
                                    struct CpplabFamily **out);

/**
 * # Safety
 * `family` must be NULL or a live handle from `cpplab_family_new`.
 */
void cpplab_family_free(struct CpplabFamily *family);

/**
 * The field a family lives in. Free with `cpplab_field_free`.
 *
 * # Safety
 * `family` must be a live handle and `out` valid for a pointer write.
 */
enum CpplabStatus cpplab_family_field(const struct CpplabFamily *family,
                                      uint64_t max_q,
                                      struct CpplabField **out);

/**
 * Forward exponent `d` and inverse exponent `e` as decimal strings, and
 * whether `e` came from a closed form. Free both strings.
 *
 * # Safety
 * `family` must be a live handle; the out-pointers must be valid for writes.
 */
enum CpplabStatus cpplab_family_exponents(const struct CpplabFamily *family,
                                          char **d_out,
                                          char **e_out,
                                          bool *closed_form_out);

/**
 * Admissible coefficients as element indices, ascending.
 *
 * `*len_out` always receives the full count. If `cap` is smaller the call
 * returns `BUFFER_TOO_SMALL` and writes nothing to `buf`; `buf` may be NULL
 * when `cap` is 0.
 *
 * # Safety
 * `family` and `field` must be live handles; `buf` valid for `cap` writes.
 */
enum CpplabStatus cpplab_family_admissible(const struct CpplabFamily *family,
                                           const struct CpplabField *field,
                                           uint64_t *buf,
                                           size_t cap,
                                           size_t *len_out);

/**
 * Sweeps every admissible coefficient. `field` may be NULL to build the
 * family's own field with default limits. Returns `VERIFY_FAILED` (with the
 * report still written) when any check fails.
 *
 * # Safety
 * `family` must be a live handle, `field` NULL or live, `out` valid for a write.
 */
enum CpplabStatus cpplab_verify(const struct CpplabFamily *family,
                                const struct CpplabField *field,
                                size_t workers,
                                bool scan,
                                struct CpplabReport **out);

/**
 * # Safety
 * `report` must be NULL or a live handle from `cpplab_verify`.
 */
void cpplab_report_free(struct CpplabReport *report);

/**
 * # Safety
 * `report` must be NULL or a live handle.
 */
bool cpplab_report_all_pass(const struct CpplabReport *report);

/**
 * Number of coefficients checked.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
size_t cpplab_report_count(const struct CpplabReport *report);

/**
 * The report as JSON. Free with `cpplab_string_free`.
 *
 * # Safety
 * `report` must be a live handle and `out` valid for a pointer write.
 */
enum CpplabStatus cpplab_report_json(const struct CpplabReport *report, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CPPLAB_H */
