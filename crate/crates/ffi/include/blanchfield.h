#ifndef BLANCHFIELD_H
#define BLANCHFIELD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BfStatus {
  BF_STATUS_OK = 0,
  BF_STATUS_NULL_POINTER = 1,
  BF_STATUS_UTF8 = 2,
  BF_STATUS_PARSE = 3,
  BF_STATUS_INVALID_INPUT = 4,
  BF_STATUS_MATH = 5,
  BF_STATUS_PANIC = 6,
} BfStatus;

typedef enum BfVerdict {
  BF_VERDICT_INCONCLUSIVE = 0,
  BF_VERDICT_OBSTRUCTED = 1,
} BfVerdict;

// Opaque decomposition handle.
typedef struct BfDecomposition BfDecomposition;

// Opaque obstruction report handle.
typedef struct BfReport BfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Decomposition of the metabelian Blanchfield form of T(2, 2k+1) for ρ_θ,
// computed by the full pipeline.
//
// # Safety
// `out` must be a valid pointer.
enum BfStatus bf_torus_blanchfield(uint32_t k, int64_t theta, struct BfDecomposition **out);

// Closed-form decomposition for 1 ≤ θ ≤ k.
//
// # Safety
// `out` must be a valid pointer.
enum BfStatus bf_oracle(uint32_t k, int64_t theta, struct BfDecomposition **out);

// Decompose a linking form given as JSON.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum BfStatus bf_decompose_form_json(const char *json, struct BfDecomposition **out);

// # Safety
// `d` must be a live handle and `out` a valid pointer.
enum BfStatus bf_decomposition_to_json(const struct BfDecomposition *d, char **out);

// Signature jumps of the decomposition as JSON.
//
// # Safety
// `d` must be a live handle and `out` a valid pointer.
enum BfStatus bf_decomposition_jumps_json(const struct BfDecomposition *d, char **out);

// # Safety
// `d` must be null or a handle from this library, not yet freed.
void bf_decomposition_free(struct BfDecomposition *d);

// Run the sliceness obstruction on a knot expression. `ells` may be null
// (with `n_ells` = 0) to test every odd prime dividing |H₁(Σ₂)|.
//
// # Safety
// `expr` must be a NUL-terminated string, `ells` must point to `n_ells`
// integers when non-null, and `out` must be a valid pointer.
enum BfStatus bf_obstruct(const char *expr,
                          const uint64_t *ells,
                          size_t n_ells,
                          struct BfReport **out);

// # Safety
// `r` must be a live handle and `out` a valid pointer.
enum BfStatus bf_report_verdict(const struct BfReport *r, enum BfVerdict *out);

// # Safety
// `r` must be a live handle and `out` a valid pointer.
enum BfStatus bf_report_to_json(const struct BfReport *r, char **out);

// # Safety
// `r` must be null or a handle from this library, not yet freed.
void bf_report_free(struct BfReport *r);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void bf_string_free(char *s);

// Message of the last failing call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *bf_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BLANCHFIELD_H */
