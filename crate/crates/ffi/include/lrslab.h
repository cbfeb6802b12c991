#ifndef LRSLAB_H
#define LRSLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LrsStatus {
  LRS_STATUS_OK = 0,
  LRS_STATUS_NULL_POINTER = 1,
  LRS_STATUS_INVALID_UTF8 = 2,
  LRS_STATUS_PARSE = 3,
  LRS_STATUS_NOT_PRIME = 4,
  LRS_STATUS_FIELD_TOO_LARGE = 5,
  LRS_STATUS_MIXED_FIELDS = 6,
  LRS_STATUS_INVALID_ARGUMENT = 7,
  LRS_STATUS_NOT_COPRIME = 8,
  LRS_STATUS_DIVISION_BY_ZERO = 9,
  LRS_STATUS_DOMAIN = 10,
  LRS_STATUS_PANIC = 255,
} LrsStatus;

/**
 * A finite field.
 */
typedef struct LrsField LrsField;

/**
 * A polynomial over a field.
 */
typedef struct LrsPoly LrsPoly;

/**
 * A periodic sequence given by one period.
 */
typedef struct LrsSeq LrsSeq;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call on the same thread.
 */
const char *lrs_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void lrs_string_free(char *s);

/**
 * Parses a field spec such as `7`, `3^2` or `3^2/1,0,1`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` writable.
 */
enum LrsStatus lrs_field_new(const char *spec, struct LrsField **out);

/**
 * # Safety
 * `f` must be NULL or a handle from [`lrs_field_new`], freed once.
 */
void lrs_field_free(struct LrsField *f);

/**
 * Number of elements; 0 for a NULL handle.
 *
 * # Safety
 * `f` must be NULL or a live handle.
 */
uint64_t lrs_field_size(const struct LrsField *f);

/**
 * Builds a sequence from a comma-separated window such as `1,3,4,6,5,2`.
 *
 * # Safety
 * `field` must be a live handle, `window` a valid C string, `out` writable.
 */
enum LrsStatus lrs_seq_new(const struct LrsField *field, const char *window, struct LrsSeq **out);

/**
 * # Safety
 * `s` must be NULL or a handle from [`lrs_seq_new`], freed once.
 */
void lrs_seq_free(struct LrsSeq *s);

/**
 * Period of the sequence; 0 for a NULL handle.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
uint64_t lrs_seq_period(const struct LrsSeq *s);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum LrsStatus lrs_seq_minimal_recursion(const struct LrsSeq *s, struct LrsPoly **out);

/**
 * Report of the window as a subgroup presentation, as canonical JSON.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum LrsStatus lrs_seq_classify_json(const struct LrsSeq *s, char **out);

/**
 * Writes whether the window is automatically non-standard.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum LrsStatus lrs_seq_verify(const struct LrsSeq *s, bool *out);

/**
 * Parses `x^3+2*x^2+2*x+1` or `[1,2,2,1]` over `field`.
 *
 * # Safety
 * `field` must be a live handle, `s` a valid C string, `out` writable.
 */
enum LrsStatus lrs_poly_new(const struct LrsField *field, const char *s, struct LrsPoly **out);

/**
 * # Safety
 * `f` must be NULL or a polynomial handle from this library, freed once.
 */
void lrs_poly_free(struct LrsPoly *f);

/**
 * Degree, or -1 for the zero polynomial and NULL.
 *
 * # Safety
 * `f` must be NULL or a live handle.
 */
int64_t lrs_poly_degree(const struct LrsPoly *f);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum LrsStatus lrs_poly_to_string(const struct LrsPoly *f, char **out);

/**
 * Runs the subgroup search for size `m` over characteristics up to
 * `p_max`. `cap` 0 means no cap; `threads` 0 means the default pool.
 * `exhaustive` receives whether every seed was enumerated.
 *
 * # Safety
 * `out` and `exhaustive` must be writable.
 */
enum LrsStatus lrs_search_ans_json(uint64_t m,
                                   uint64_t p_max,
                                   uint64_t cap,
                                   uint32_t threads,
                                   char **out,
                                   bool *exhaustive);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LRSLAB_H */
