#ifndef ZEROSUM_H
#define ZEROSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible function.
 */
typedef enum ZsStatus {
  ZS_STATUS_OK = 0,
  ZS_STATUS_NULL_POINTER = 1,
  ZS_STATUS_INVALID_UTF8 = 2,
  ZS_STATUS_PARSE_ERROR = 3,
  ZS_STATUS_INVALID_ARGUMENT = 4,
  ZS_STATUS_DERIVATION_FAILED = 5,
  ZS_STATUS_RESOURCE_LIMIT = 6,
  ZS_STATUS_OUT_OF_RANGE = 7,
  ZS_STATUS_BUFFER_TOO_SMALL = 8,
  ZS_STATUS_PANIC = 9,
} ZsStatus;

typedef enum ZsReducibility {
  ZS_REDUCIBILITY_IRREDUCIBLE = 0,
  ZS_REDUCIBILITY_REDUCIBLE = 1,
  ZS_REDUCIBILITY_UNBALANCED = 2,
} ZsReducibility;

typedef enum ZsMode {
  ZS_MODE_BRUTE = 0,
  ZS_MODE_PRUNED = 1,
} ZsMode;

/**
 * Opaque canonical pair.
 */
typedef struct ZsPair ZsPair;

/**
 * Opaque list of pairs in enumeration order.
 */
typedef struct ZsPairList ZsPairList;

/**
 * Opaque `ell(k)` report.
 */
typedef struct ZsReport ZsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *zs_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *zs_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void zs_string_free(char *s);

/**
 * Parses a pair in text form (`7^3 1^2 | 6^3 5`).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ZsStatus zs_pair_parse(const char *text, struct ZsPair **out);

/**
 * Parses a pair in JSON form (`{"A": [[7,3],[1,2]], "B": [[6,3],[5,1]]}`).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum ZsStatus zs_pair_parse_json(const char *text, struct ZsPair **out);

/**
 * Builds a pair from run arrays: side A holds `a_counts[i]` copies of
 * `a_values[i]`, likewise for B.
 *
 * # Safety
 * Each array must hold at least the stated number of elements.
 */
enum ZsStatus zs_pair_from_runs(const uint32_t *a_values,
                                const uint32_t *a_counts,
                                size_t a_len,
                                const uint32_t *b_values,
                                const uint32_t *b_counts,
                                size_t b_len,
                                struct ZsPair **out);

/**
 * # Safety
 * `pair` must be NULL or a handle returned by this library, not yet freed.
 */
void zs_pair_free(struct ZsPair *pair);

/**
 * Text form of the pair; NULL if `pair` is NULL.
 *
 * # Safety
 * `pair` must be NULL or a live handle.
 */
char *zs_pair_to_text(const struct ZsPair *pair);

/**
 * JSON form of the pair; NULL if `pair` is NULL.
 *
 * # Safety
 * `pair` must be NULL or a live handle.
 */
char *zs_pair_to_json(const struct ZsPair *pair);

/**
 * `|A| + |B|`, or 0 for a NULL handle.
 *
 * # Safety
 * `pair` must be NULL or a live handle.
 */
uint64_t zs_pair_length(const struct ZsPair *pair);

/**
 * # Safety
 * `pair` must be NULL or a live handle.
 */
uint32_t zs_pair_max_element(const struct ZsPair *pair);

/**
 * # Safety
 * `pair` must be NULL or a live handle.
 */
bool zs_pair_is_balanced(const struct ZsPair *pair);

/**
 * # Safety
 * `pair` must be a live handle; `out` must be writable.
 */
enum ZsStatus zs_pair_is_irreducible(const struct ZsPair *pair, bool *out);

/**
 * Classifies the pair. When it is reducible and `out_witness` is not NULL,
 * `*out_witness` receives the witness as `A' | B'` text (free with
 * [`zs_string_free`]); otherwise it is set to NULL.
 *
 * # Safety
 * `pair` must be a live handle; `out_kind` must be writable; `out_witness`
 * must be NULL or writable.
 */
enum ZsStatus zs_pair_reducibility(const struct ZsPair *pair,
                                   enum ZsReducibility *out_kind,
                                   char **out_witness);

/**
 * Applies a product plan (`7,6^2;7,5`) with `a` values drawn from A.
 *
 * # Safety
 * `pair` must be a live handle, `plan` a NUL-terminated string, `out` writable.
 */
enum ZsStatus zs_derive_product(const struct ZsPair *pair, const char *plan, struct ZsPair **out);

/**
 * Applies a chain of single derivations (`5,2;3,2`) left to right. On a
 * failing step, `*out_failed_step` (if not NULL) receives its index.
 *
 * # Safety
 * `pair` must be a live handle, `chain` a NUL-terminated string, `out`
 * writable, and `out_failed_step` NULL or writable.
 */
enum ZsStatus zs_derive_chain(const struct ZsPair *pair,
                              const char *chain,
                              struct ZsPair **out,
                              size_t *out_failed_step);

/**
 * `{k^(k-1)} | {(k-1)^k}` for `k > 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZsStatus zs_extremal_construction(uint32_t k, struct ZsPair **out);

/**
 * Computes `ell(k)` over pairs with common sum at most `sum_cap`
 * (0 selects the default `k*k`).
 *
 * # Safety
 * `out` must be writable.
 */
enum ZsStatus zs_compute_ell(uint32_t k, enum ZsMode mode, uint64_t sum_cap, struct ZsReport **out);

/**
 * # Safety
 * `report` must be NULL or a live handle.
 */
uint64_t zs_report_ell(const struct ZsReport *report);

/**
 * # Safety
 * `report` must be NULL or a live handle.
 */
uint64_t zs_report_sum_cap(const struct ZsReport *report);

/**
 * # Safety
 * `report` must be NULL or a live handle.
 */
uint64_t zs_report_pairs_scanned(const struct ZsReport *report);

/**
 * # Safety
 * `report` must be NULL or a live handle.
 */
size_t zs_report_witness_count(const struct ZsReport *report);

/**
 * Copies witness `index` into a new pair handle.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum ZsStatus zs_report_witness(const struct ZsReport *report, size_t index, struct ZsPair **out);

/**
 * The report as a JSON document; NULL if `report` is NULL.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
char *zs_report_to_json(const struct ZsReport *report);

/**
 * # Safety
 * `report` must be NULL or a handle returned by this library, not yet freed.
 */
void zs_report_free(struct ZsReport *report);

/**
 * Enumerates k-irreducible pairs with common sum at most `sum_cap` (0 for
 * `k*k`) and length in `[min_len, max_len]` (`max_len` 0 for unbounded).
 *
 * # Safety
 * `out` must be writable.
 */
enum ZsStatus zs_enumerate(uint32_t k,
                           enum ZsMode mode,
                           uint64_t sum_cap,
                           uint64_t min_len,
                           uint64_t max_len,
                           struct ZsPairList **out);

/**
 * # Safety
 * `list` must be NULL or a live handle.
 */
size_t zs_pair_list_len(const struct ZsPairList *list);

/**
 * Copies entry `index` into a new pair handle.
 *
 * # Safety
 * `list` must be a live handle; `out` must be writable.
 */
enum ZsStatus zs_pair_list_get(const struct ZsPairList *list, size_t index, struct ZsPair **out);

/**
 * # Safety
 * `list` must be NULL or a handle returned by this library, not yet freed.
 */
void zs_pair_list_free(struct ZsPairList *list);

/**
 * Marble allocation for bin capacities `x[0..nx]` and color counts
 * `y[0..ny]`. Writes the split index to `*out_t` and the `nx` by `t + 1`
 * matrix, row-major, to `z`. Returns `BufferTooSmall` (with `*out_t` set)
 * when `z_capacity < nx * (t + 1)`.
 *
 * # Safety
 * `x` and `y` must hold `nx` and `ny` elements; `out_t` must be writable;
 * `z` must be writable for `z_capacity` elements (or NULL when 0).
 */
enum ZsStatus zs_allocate_marbles(const uint64_t *x,
                                  size_t nx,
                                  const uint64_t *y,
                                  size_t ny,
                                  size_t *out_t,
                                  uint64_t *z,
                                  size_t z_capacity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZEROSUM_H */
