/* C interface to the mgcensus library. */

#ifndef MGCENSUS_H
#define MGCENSUS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum MgcStatus {
  MGC_STATUS_OK = 0,
  /**
   * A pointer argument was NULL.
   */
  MGC_STATUS_NULL_POINTER = 1,
  /**
   * An argument failed validation (q not an odd prime, bad partition
   * text, limit out of range, ...).
   */
  MGC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The requested n exceeds the configured oracle cap.
   */
  MGC_STATUS_CAP_EXCEEDED = 3,
  /**
   * A string argument was not valid UTF-8.
   */
  MGC_STATUS_INVALID_UTF8 = 4,
  /**
   * Unexpected internal failure.
   */
  MGC_STATUS_INTERNAL = 5,
} MgcStatus;

/**
 * Opaque census table handle.
 */
typedef struct MgcCensus MgcCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *mgc_version(void);

/**
 * Releases a string allocated by this library.
 *
 * # Safety
 * `s` must have been returned by an mgcensus function and not freed yet.
 */
void mgc_string_free(char *s);

/**
 * Runs a Sylow-signature census of `n <= x` for the odd prime `q` and
 * returns an opaque table handle through `out`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MgcStatus mgc_census_run(uint64_t x,
                              uint64_t q,
                              uint64_t segment_size,
                              struct MgcCensus **out);

/**
 * Releases a census handle.
 *
 * # Safety
 * `handle` must come from [`mgc_census_run`] and not be freed twice.
 */
void mgc_census_free(struct MgcCensus *handle);

/**
 * Total count over all cells (equals x).
 *
 * # Safety
 * `handle` must be a live census handle; `out` must be valid.
 */
enum MgcStatus mgc_census_total(const struct MgcCensus *handle, uint64_t *out);

/**
 * `D(H, x)` for the signature in bracket text form.
 *
 * # Safety
 * `handle` must be a live census handle; `signature` a NUL-terminated
 * string; `out` valid.
 */
enum MgcStatus mgc_census_count_d(const struct MgcCensus *handle,
                                  const char *signature,
                                  uint64_t *out);

/**
 * `D_k(H, x)` for one stratum.
 *
 * # Safety
 * Same contract as [`mgc_census_count_d`].
 */
enum MgcStatus mgc_census_count_dk(const struct MgcCensus *handle,
                                   uint32_t k,
                                   const char *signature,
                                   uint64_t *out);

/**
 * Census table in the canonical CSV form; free with [`mgc_string_free`].
 *
 * # Safety
 * `handle` must be a live census handle; `out` valid.
 */
enum MgcStatus mgc_census_csv(const struct MgcCensus *handle, char **out);

/**
 * Census table as JSON; free with [`mgc_string_free`].
 *
 * # Safety
 * `handle` must be a live census handle; `out` valid.
 */
enum MgcStatus mgc_census_json(const struct MgcCensus *handle, char **out);

/**
 * Counts `n <= x` whose multiplicative group is maximally non-cyclic.
 *
 * # Safety
 * `out` must be valid.
 */
enum MgcStatus mgc_census_mnc(uint64_t x, uint64_t *out);

/**
 * Sylow q-subgroup signature of `(Z/nZ)^x` in bracket text form; free the
 * string with [`mgc_string_free`].
 *
 * # Safety
 * `out` must be valid.
 */
enum MgcStatus mgc_sylow_signature(uint64_t q, uint64_t n, char **out);

/**
 * `B_q` truncated at `cutoff`, with its absolute error bound.
 *
 * # Safety
 * `out_value` and `out_err` must be valid.
 */
enum MgcStatus mgc_constant_bq(uint64_t q, uint64_t cutoff, double *out_value, double *out_err);

/**
 * `K(Z_{q^alpha}) = B_q C(alpha) E_q(alpha)`.
 *
 * # Safety
 * `alpha` must be a NUL-terminated string; outputs valid.
 */
enum MgcStatus mgc_constant_k(uint64_t q,
                              const char *alpha,
                              uint64_t cutoff,
                              double *out_value,
                              double *out_err);

/**
 * Artin's constant truncated at `cutoff`.
 *
 * # Safety
 * Outputs must be valid.
 */
enum MgcStatus mgc_artin_xi(uint64_t cutoff, double *out_value, double *out_err);

/**
 * The Wirsing-Odoni constant A with its rigorous error bound and the
 * separately reported heuristic tail estimate.
 *
 * # Safety
 * Outputs must be valid.
 */
enum MgcStatus mgc_constant_a(uint64_t cutoff,
                              double *out_value,
                              double *out_err,
                              double *out_heuristic_tail);

/**
 * Asymptotic main term for `D(Z_{q^alpha}, x)`.
 *
 * # Safety
 * `alpha` must be a NUL-terminated string; `out` valid.
 */
enum MgcStatus mgc_predicted_d(uint64_t q,
                               const char *alpha,
                               double x,
                               uint64_t cutoff,
                               double *out);

/**
 * Asymptotic main term for the zero stratum `D_0(Z_{q^alpha}, x)`.
 *
 * # Safety
 * Same contract as [`mgc_predicted_d`].
 */
enum MgcStatus mgc_predicted_d0(uint64_t q,
                                const char *alpha,
                                double x,
                                uint64_t cutoff,
                                double *out);

/**
 * Asymptotic main term for the maximally-non-cyclic count.
 *
 * # Safety
 * `out` must be valid.
 */
enum MgcStatus mgc_predicted_mnc(double x, uint64_t cutoff, double *out);

/**
 * Element-order oracle signature, bounded by `cap`; free the string with
 * [`mgc_string_free`].
 *
 * # Safety
 * `out` must be valid.
 */
enum MgcStatus mgc_sylow_signature_oracle(uint64_t q, uint64_t n, uint64_t cap, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MGCENSUS_H */
