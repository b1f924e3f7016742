#ifndef ZLCONST_H
#define ZLCONST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum ZlStatus {
  ZL_STATUS_OK = 0,
  ZL_STATUS_NULL_POINTER = 1,
  ZL_STATUS_INVALID_ARGUMENT = 2,
  ZL_STATUS_CONSTRUCTION = 3,
  ZL_STATUS_NUMERIC = 4,
  ZL_STATUS_OVERFLOW = 5,
  ZL_STATUS_OUT_OF_RANGE = 6,
  ZL_STATUS_PANIC = 7,
} ZlStatus;

/**
 * A character table; rows are characters, columns conjugacy classes.
 */
typedef struct ZlCharTable ZlCharTable;

/**
 * A finite group with its conjugacy classes.
 */
typedef struct ZlGroup ZlGroup;

/**
 * The general constant with its diagonal and off-diagonal parts.
 */
typedef struct ZlAmenability {
  double value;
  double am_diag;
  double am_off;
} ZlAmenability;

/**
 * `num / den` with `den > 0`.
 */
typedef struct ZlRational {
  int64_t num;
  int64_t den;
} ZlRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *zl_last_error_message(void);

/**
 * Cyclic group of order `n`. A `cap` of 0 uses the default order cap.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum ZlStatus zl_group_cyclic(uint64_t n, uintptr_t cap, struct ZlGroup **out);

/**
 * Dihedral group of order `2n`.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum ZlStatus zl_group_dihedral(uint64_t n, uintptr_t cap, struct ZlGroup **out);

/**
 * Affine group of the field with `q` elements.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum ZlStatus zl_group_affine(uint64_t q, uintptr_t cap, struct ZlGroup **out);

/**
 * Maps `x -> a^2 x + b` over the field with `q` elements, `q` odd.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum ZlStatus zl_group_a2xb(uint64_t q, uintptr_t cap, struct ZlGroup **out);

/**
 * Extraspecial group of order `p^(2n+1)`.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum ZlStatus zl_group_extraspecial(uint64_t p, uint32_t n, uintptr_t cap, struct ZlGroup **out);

/**
 * # Safety
 * `out` must be null or writable.
 */
enum ZlStatus zl_group_quaternion8(struct ZlGroup **out);

/**
 * `Z_k x| Z_h` acting by `x -> u x`. A `multiplier` of 0 picks the
 * smallest valid one.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum ZlStatus zl_group_frobenius_cyclic(uint64_t k,
                                        uint64_t h,
                                        uint64_t multiplier,
                                        uintptr_t cap,
                                        struct ZlGroup **out);

/**
 * Closure of permutation generators, one per line in cycle notation.
 *
 * # Safety
 * `text` must be null or a NUL-terminated string.
 */
enum ZlStatus zl_group_from_generators(const char *text, uintptr_t cap, struct ZlGroup **out);

/**
 * # Safety
 * `g` must be null or a handle from a `zl_group_*` constructor, not yet freed.
 */
void zl_group_free(struct ZlGroup *g);

/**
 * # Safety
 * `g` must be a live group handle; `out` must be writable.
 */
enum ZlStatus zl_group_order(const struct ZlGroup *g, uintptr_t *out);

/**
 * # Safety
 * `g` must be a live group handle; `out` must be writable.
 */
enum ZlStatus zl_group_num_classes(const struct ZlGroup *g, uintptr_t *out);

/**
 * Size of conjugacy class `class`, in the library's class order.
 *
 * # Safety
 * `g` must be a live group handle; `out` must be writable.
 */
enum ZlStatus zl_group_class_size(const struct ZlGroup *g, uintptr_t class_, uintptr_t *out);

/**
 * # Safety
 * `g` must be a live group handle; `out` must be writable.
 */
enum ZlStatus zl_char_table_new(const struct ZlGroup *g, uint64_t seed, struct ZlCharTable **out);

/**
 * # Safety
 * `t` must be null or a handle from [`zl_char_table_new`], not yet freed.
 */
void zl_char_table_free(struct ZlCharTable *t);

/**
 * # Safety
 * `t` must be a live table handle; `out` must be writable.
 */
enum ZlStatus zl_char_table_degree(const struct ZlCharTable *t, uintptr_t character, uint64_t *out);

/**
 * # Safety
 * `t` must be a live table handle; `re` and `im` must be writable.
 */
enum ZlStatus zl_char_table_value(const struct ZlCharTable *t,
                                  uintptr_t character,
                                  uintptr_t class_,
                                  double *re,
                                  double *im);

/**
 * The constant from the class-pair sum over the character table.
 *
 * # Safety
 * `t` must be a live table handle; `out` must be writable.
 */
enum ZlStatus zl_amzl_general(const struct ZlCharTable *t, struct ZlAmenability *out);

/**
 * The constant from the element-pair norm; only for small groups.
 *
 * # Safety
 * `g` and `t` must be live handles with `t` built from `g`; `out` must be writable.
 */
enum ZlStatus zl_amzl_direct_norm(const struct ZlGroup *g,
                                  const struct ZlCharTable *t,
                                  double *out);

/**
 * Closed form for the dihedral group of order `2n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZlStatus zl_closed_form_dihedral(uint64_t n, struct ZlRational *out);

/**
 * Closed form for a Frobenius group with complement order `h` and kernel order `k`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZlStatus zl_closed_form_frobenius(uint64_t h, uint64_t k, struct ZlRational *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum ZlStatus zl_closed_form_affine(uint64_t q, struct ZlRational *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum ZlStatus zl_closed_form_a2xb(uint64_t q, struct ZlRational *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum ZlStatus zl_closed_form_extraspecial(uint64_t p, uint32_t n, struct ZlRational *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZLCONST_H */
