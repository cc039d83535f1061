/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef FAGROUP_H
#define FAGROUP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FagStatus {
  FAG_STATUS_OK = 0,
  FAG_STATUS_NULL_POINTER = 1,
  FAG_STATUS_INVALID_UTF8 = 2,
  FAG_STATUS_PARSE_ERROR = 3,
  FAG_STATUS_CAP_EXCEEDED = 4,
  FAG_STATUS_NOT_A_GROUP = 5,
  FAG_STATUS_INVALID_ARGUMENT = 6,
  FAG_STATUS_IO = 7,
  FAG_STATUS_PANIC = 8,
} FagStatus;

typedef enum FagVerdict {
  FAG_VERDICT_FA = 0,
  FAG_VERDICT_NOT_FA = 1,
  FAG_VERDICT_UNKNOWN = 2,
} FagVerdict;

/**
 * Opaque finite group handle.
 */
typedef struct FagGroup FagGroup;

/**
 * Opaque presentation handle.
 */
typedef struct FagPresentation FagPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *fag_last_error(void);

/**
 * Build a group from the spec mini-language, e.g. `"prod(C 2, S 3)"`.
 *
 * # Safety
 * `spec` must be a valid nul-terminated string; `out` must be writable.
 */
enum FagStatus fag_group_from_spec(const char *spec, struct FagGroup **out);

/**
 * Build a group from a row-major `n x n` Cayley table with identity 0. The
 * table is validated.
 *
 * # Safety
 * `table` must point to `n * n` readable values; `out` must be writable.
 */
enum FagStatus fag_group_from_cayley_table(const uint32_t *table, size_t n, struct FagGroup **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that has not been freed.
 */
void fag_group_free(struct FagGroup *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FagStatus fag_group_order(const struct FagGroup *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FagStatus fag_group_is_fa(const struct FagGroup *g, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FagStatus fag_group_is_nfa(const struct FagGroup *g, size_t n, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FagStatus fag_group_weight(const struct FagGroup *g, size_t *out);

/**
 * Invariants of the abelianisation as JSON `{free_rank, factors}`. Free the
 * string with [`fag_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FagStatus fag_group_invariants_json(const struct FagGroup *g, char **out);

/**
 * Full cross-check report as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum FagStatus fag_group_verify_json(const struct FagGroup *g, char **out);

/**
 * # Safety
 * `text` must be a valid nul-terminated string; `out` must be writable.
 */
enum FagStatus fag_presentation_parse(const char *text, struct FagPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that has not been freed.
 */
void fag_presentation_free(struct FagPresentation *p);

/**
 * `n`-F-A verdict (`n = 1` for F-A). `hint` may be null for no hint.
 *
 * # Safety
 * `p` must be a live handle; `hint` null or a valid string; `out` writable.
 */
enum FagStatus fag_presentation_classify(const struct FagPresentation *p,
                                         const char *hint,
                                         size_t n,
                                         enum FagVerdict *out);

/**
 * Analysis (verdict, invariants, rule, reason) as JSON.
 *
 * # Safety
 * `p` must be a live handle; `hint` null or a valid string; `out` writable.
 */
enum FagStatus fag_presentation_analyze_json(const struct FagPresentation *p,
                                             const char *hint,
                                             size_t n,
                                             char **out);

/**
 * Search for a finite quotient of order at most `bound` killing `word`.
 * Writes witness JSON, or null when there is none up to the bound.
 *
 * # Safety
 * `p` must be a live handle; `word` a valid string; `out` writable.
 */
enum FagStatus fag_find_annihilator_json(const struct FagPresentation *p,
                                         const char *word,
                                         size_t bound,
                                         char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void fag_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FAGROUP_H */
