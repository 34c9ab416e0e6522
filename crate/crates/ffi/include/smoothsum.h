#ifndef SMOOTHSUM_H
#define SMOOTHSUM_H

/* Generated by cbindgen from smoothsum-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes mirroring the CLI exit-code contract.
typedef enum SsStatus {
  // Success.
  SS_STATUS_OK = 0,
  // Invalid input (bad primes, out-of-range parameter, ...).
  SS_STATUS_INVALID_ARGUMENT = 1,
  // A resource cap was exceeded.
  SS_STATUS_RESOURCE_LIMIT = 2,
  // The search finished without a result (honestly absent).
  SS_STATUS_BUDGET_EXHAUSTED = 3,
  // A required pointer was null.
  SS_STATUS_NULL_POINTER = 4,
  // Unexpected internal failure.
  SS_STATUS_INTERNAL = 5,
} SsStatus;

// Opaque minimal-term table.
typedef struct SsMinTermsTable SsMinTermsTable;

// Opaque validated prime set.
typedef struct SsPrimeSet SsPrimeSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread. The pointer
// stays valid until the next failing call on the same thread.
const char *ss_last_error(void);

// Library version as a static string.
const char *ss_version(void);

// Validate, sort and deduplicate `primes` into a new handle.
//
// # Safety
// `primes` must point to `len` readable u64 values; `out` must be a valid
// pointer to a handle slot.
enum SsStatus ss_prime_set_new(const uint64_t *primes, size_t len, struct SsPrimeSet **out);

// Release a prime-set handle. Null is ignored.
//
// # Safety
// `ps` must be a pointer returned by [`ss_prime_set_new`], not yet freed.
void ss_prime_set_free(struct SsPrimeSet *ps);

// Number of primes in the set, 0 for a null handle.
//
// # Safety
// `ps` must be a live handle or null.
size_t ss_prime_set_count(const struct SsPrimeSet *ps);

// Write 1 to `out_is_smooth` iff n is a product of powers of the set's
// primes (n >= 1).
//
// # Safety
// `ps` must be a live handle; `out_is_smooth` must be writable.
enum SsStatus ss_is_smooth(const struct SsPrimeSet *ps, uint64_t n, int *out_is_smooth);

// Largest element of A not exceeding n.
//
// # Safety
// `ps` must be a live handle; `out_value` must be writable.
enum SsStatus ss_largest_smooth_leq(const struct SsPrimeSet *ps, uint64_t n, uint64_t *out_value);

// Release a u64 buffer returned by this library.
//
// # Safety
// `(ptr, len)` must be exactly as returned by a smoothsum call.
void ss_buffer_free(uint64_t *ptr, size_t len);

// All elements of A in [1, limit], ascending, as a library-owned buffer.
//
// # Safety
// `ps` live handle; `out_values`/`out_len` writable.
enum SsStatus ss_enumerate_smooth(const struct SsPrimeSet *ps,
                                  uint64_t limit,
                                  uint64_t **out_values,
                                  size_t *out_len);

// Greedy decomposition of n; terms are non-increasing and sum to n.
//
// # Safety
// `ps` live handle; `out_terms`/`out_len` writable.
enum SsStatus ss_greedy_decompose(const struct SsPrimeSet *ps,
                                  uint64_t n,
                                  uint64_t **out_terms,
                                  size_t *out_len);

// Build the minimal-term table for n <= limit with the given term cap.
//
// # Safety
// `ps` live handle; `out` writable.
enum SsStatus ss_min_terms_table_new(const struct SsPrimeSet *ps,
                                     uint64_t limit,
                                     uint8_t term_cap,
                                     struct SsMinTermsTable **out);

// Release a table handle. Null is ignored.
//
// # Safety
// `t` must come from [`ss_min_terms_table_new`], not yet freed.
void ss_min_terms_table_free(struct SsMinTermsTable *t);

// Minimal term count for n; UINT32_MAX when it exceeds the table's cap.
//
// # Safety
// `t` live handle; `out` writable; n within the table's limit.
enum SsStatus ss_min_terms(const struct SsMinTermsTable *t, uint64_t n, uint32_t *out);

// F(k) from a prebuilt table. Returns SS_BUDGET_EXHAUSTED when every n up
// to the table limit is representable (out is not written).
//
// # Safety
// `t` live handle; `out_value` writable.
enum SsStatus ss_f_of_k(const struct SsMinTermsTable *t, uint32_t k, uint64_t *out_value);

// Carmichael function of m.
//
// # Safety
// `out` must be writable.
enum SsStatus ss_carmichael_lambda(uint64_t m, uint64_t *out);

// Minimal signed term count for n under a magnitude bound. `out_found`
// is 0 when no representation of at most `length_cap` terms exists under
// the bound (then `out_len` is not written). `out_certified` reports the
// bound >= n^2 certification flag.
//
// # Safety
// `ps` live handle; out-params writable.
enum SsStatus ss_min_terms_signed(const struct SsPrimeSet *ps,
                                  int64_t n,
                                  uint64_t bound,
                                  uint32_t length_cap,
                                  uint32_t *out_len,
                                  int *out_found,
                                  int *out_certified);

// Residue coverage count mod m for sums of at most k (signed) smooth
// terms. `out_has_missing` is 1 when some residue is uncovered and then
// `out_first_missing` holds the smallest one.
//
// # Safety
// `ps` live handle; out-params writable.
enum SsStatus ss_coverage_count(const struct SsPrimeSet *ps,
                                uint32_t k,
                                uint64_t m,
                                int signed_terms,
                                uint64_t *out_covered,
                                uint64_t *out_first_missing,
                                int *out_has_missing);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SMOOTHSUM_H */
