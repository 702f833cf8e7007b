#ifndef COPRIME_BB_H
#define COPRIME_BB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum CbbStatus {
  CBB_STATUS_OK = 0,
  CBB_STATUS_NULL_POINTER = 1,
  CBB_STATUS_INVALID_ARGUMENT = 2,
  CBB_STATUS_PARSE = 3,
  CBB_STATUS_INVARIANT_VIOLATED = 4,
  CBB_STATUS_BUDGET_EXCEEDED = 5,
  CBB_STATUS_PANIC = 6,
} CbbStatus;

/**
 * Opaque code handle.
 */
typedef struct CbbCode CbbCode;

typedef struct CbbCodeParams {
  /**
   * Circulant size N.
   */
  size_t n_block;
  /**
   * Physical qubits, 2N.
   */
  size_t n_qubits;
  size_t k;
  size_t deg_g;
  size_t r_x;
  size_t r_z;
} CbbCodeParams;

typedef struct CbbSyndromeReport {
  size_t dim;
  size_t d_lower;
  /**
   * -1 when unknown.
   */
  int64_t d_exact;
  /**
   * -1 when unknown.
   */
  int64_t d_upper;
  size_t singleton_limit;
  size_t t_s;
} CbbSyndromeReport;

typedef struct CbbCellResult {
  uint64_t trials;
  uint64_t failures;
  double rate;
  double ci_lo;
  double ci_hi;
} CbbCellResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the code with `a(z) = sum z^a[i]` and `b(z) = sum z^b[i]` modulo
 * `z^n - 1`.
 *
 * # Safety
 * `a` and `b` must point to `a_len` and `b_len` readable values (or be null
 * with length 0); `out` must be writable.
 */
enum CbbStatus cbb_code_new(size_t n,
                            const size_t *a,
                            size_t a_len,
                            const size_t *b,
                            size_t b_len,
                            struct CbbCode **out);

/**
 * Builds a code from a `key = value` code file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum CbbStatus cbb_code_from_spec_file(const char *path, struct CbbCode **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `code` must come from this library and not have been freed.
 */
void cbb_code_free(struct CbbCode *code);

/**
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum CbbStatus cbb_code_params(const struct CbbCode *code, struct CbbCodeParams *out);

/**
 * Distance report of the syndrome code; `sector` is 0 for X checks, 1 for Z.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum CbbStatus cbb_code_syndrome_report(const struct CbbCode *code,
                                        uint32_t sector,
                                        struct CbbSyndromeReport *out);

/**
 * Probability that more than `t` of `n` bits flip at rate `q`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CbbStatus cbb_p_fail_theory(size_t n, size_t t, double q, double *out);

/**
 * Logical error rate of one grid cell with the default pipeline (X checks,
 * BP syndrome stage, BP+OSD-2 data stage) on a single worker.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum CbbStatus cbb_simulate_cell(const struct CbbCode *code,
                                 double p,
                                 double q,
                                 size_t rounds,
                                 uint64_t seed,
                                 uint64_t max_trials,
                                 uint64_t min_failures,
                                 struct CbbCellResult *out);

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`) and returns the full message length plus one.
 *
 * # Safety
 * `buf` must have `len` writable bytes, or be null with `len` 0.
 */
size_t cbb_last_error_message(char *buf, size_t len);

/**
 * Library version, NUL-terminated, static.
 */
const char *cbb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COPRIME_BB_H */
