#ifndef KSTSP_H
#define KSTSP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum KstspStatus {
  KSTSP_STATUS_OK = 0,
  /**
   * The tours and stacks cannot be combined within the instance's stacks.
   */
  KSTSP_STATUS_INFEASIBLE = 1,
  KSTSP_STATUS_INVALID_ARGUMENT = 2,
  KSTSP_STATUS_CAP_EXCEEDED = 3,
  KSTSP_STATUS_NULL_POINTER = 4,
  KSTSP_STATUS_PARSE = 5,
  KSTSP_STATUS_PANIC = 6,
} KstspStatus;

typedef enum KstspFamily {
  KSTSP_FAMILY_I = 0,
  KSTSP_FAMILY_J = 1,
  KSTSP_FAMILY_H = 2,
} KstspFamily;

/**
 * Solver selected by [`kstsp_solve`].
 */
typedef enum KstspMethod {
  KSTSP_METHOD_ORACLE_PAIRS = 0,
  KSTSP_METHOD_ORACLE_STACKS = 1,
  KSTSP_METHOD_TWS_PICKUP = 2,
  KSTSP_METHOD_TWS_DELIVERY = 3,
  /**
   * Aggregate-distance heuristic with equal weights.
   */
  KSTSP_METHOD_TWD = 4,
} KstspMethod;

/**
 * Opaque instance handle.
 */
typedef struct KstspInstance KstspInstance;

/**
 * Opaque solution handle.
 */
typedef struct KstspSolution KstspSolution;

/**
 * Message describing the last failed call on this thread, or an empty
 * string. Owned by the library and valid until the next call on this thread.
 */
const char *kstsp_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void kstsp_string_free(char *s);

/**
 * Builds an instance from two row-major `(n+1)*(n+1)` matrices.
 *
 * # Safety
 * `d1` and `d2` must point to `(n+1)*(n+1)` readable values; `out` must be writable.
 */
enum KstspStatus kstsp_instance_new(size_t n,
                                    size_t k,
                                    const uint64_t *d1,
                                    const uint64_t *d2,
                                    struct KstspInstance **out);

/**
 * Parses an instance JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum KstspStatus kstsp_instance_from_json(const char *json, struct KstspInstance **out);

/**
 * Writes the canonical JSON document of an instance to `*out`.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum KstspStatus kstsp_instance_to_json(const struct KstspInstance *inst, char **out);

/**
 * Generates a member of an adversarial family (two stacks).
 *
 * # Safety
 * `out` must be writable.
 */
enum KstspStatus kstsp_generate_family(enum KstspFamily family,
                                       size_t n,
                                       uint64_t unit,
                                       uint64_t eps,
                                       struct KstspInstance **out);

/**
 * Generates a seeded instance with distances uniform in `[lo, hi]`.
 *
 * # Safety
 * `out` must be writable.
 */
enum KstspStatus kstsp_random_instance(size_t n,
                                       size_t k,
                                       uint64_t lo,
                                       uint64_t hi,
                                       uint64_t seed,
                                       struct KstspInstance **out);

/**
 * Releases an instance. Null is ignored.
 *
 * # Safety
 * `inst` must come from this library and not have been freed.
 */
void kstsp_instance_free(struct KstspInstance *inst);

/**
 * Item count, or 0 for null.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t kstsp_instance_n(const struct KstspInstance *inst);

/**
 * Stack count, or 0 for null.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t kstsp_instance_k(const struct KstspInstance *inst);

/**
 * Returns `Ok` if the tours and stacking order are mutually compatible and
 * `Infeasible` otherwise.
 *
 * # Safety
 * `t1` and `t2` must hold `n` items; `stack_lengths` must hold `stack_count`
 * lengths and `stack_items` their sum.
 */
enum KstspStatus kstsp_check_triple(const size_t *t1,
                                    const size_t *t2,
                                    size_t n,
                                    const size_t *stack_items,
                                    const size_t *stack_lengths,
                                    size_t stack_count);

/**
 * Minimum number of stacks the tour pair needs (0 when every item can share
 * one stack with any other).
 *
 * # Safety
 * `t1` and `t2` must hold `n` items; `out_chi` must be writable.
 */
enum KstspStatus kstsp_conflict_chi(const size_t *t1, const size_t *t2, size_t n, size_t *out_chi);

/**
 * Completes a tour pair with a stacking order; `Infeasible` (and no
 * solution) if it needs more stacks than the instance has.
 *
 * # Safety
 * `inst` must be a live handle; `t1` and `t2` must hold `n(inst)` items; `out` must be writable.
 */
enum KstspStatus kstsp_solve_pair(const struct KstspInstance *inst,
                                  const size_t *t1,
                                  const size_t *t2,
                                  struct KstspSolution **out);

/**
 * Solves an instance. `cap` bounds the enumerations of the exact and
 * heuristic methods; 0 keeps the defaults.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum KstspStatus kstsp_solve(const struct KstspInstance *inst,
                             enum KstspMethod method,
                             uint64_t cap,
                             struct KstspSolution **out);

/**
 * Aggregate-distance heuristic weighting pickup distances by
 * `alpha_num/alpha_den`; `scale` 0 picks the smallest integral scale.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum KstspStatus kstsp_solve_twd(const struct KstspInstance *inst,
                                 uint64_t alpha_num,
                                 uint64_t alpha_den,
                                 uint64_t scale,
                                 uint64_t cap,
                                 struct KstspSolution **out);

/**
 * Optimal pickup and delivery tours for a fixed stacking order.
 *
 * # Safety
 * `inst` must be a live handle; `stack_lengths` must hold `stack_count`
 * lengths and `stack_items` their sum; `out` must be writable.
 */
enum KstspStatus kstsp_solve_given_stacks(const struct KstspInstance *inst,
                                          const size_t *stack_items,
                                          const size_t *stack_lengths,
                                          size_t stack_count,
                                          struct KstspSolution **out);

/**
 * Releases a solution. Null is ignored.
 *
 * # Safety
 * `sol` must come from this library and not have been freed.
 */
void kstsp_solution_free(struct KstspSolution *sol);

/**
 * Total distance of both tours, or 0 for null.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
uint64_t kstsp_solution_value(const struct KstspSolution *sol);

/**
 * Item count, or 0 for null.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
size_t kstsp_solution_n(const struct KstspSolution *sol);

/**
 * Copies the pickup tour into `buf`, which holds `len` items.
 *
 * # Safety
 * `sol` must be a live handle; `buf` must have room for `len` items.
 */
enum KstspStatus kstsp_solution_t1(const struct KstspSolution *sol, size_t *buf, size_t len);

/**
 * Copies the delivery tour into `buf`, which holds `len` items.
 *
 * # Safety
 * `sol` must be a live handle; `buf` must have room for `len` items.
 */
enum KstspStatus kstsp_solution_t2(const struct KstspSolution *sol, size_t *buf, size_t len);

/**
 * Number of stacks, including empty ones, or 0 for null.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
size_t kstsp_solution_stack_count(const struct KstspSolution *sol);

/**
 * Height of stack `index`, or 0 for null or out-of-range.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
size_t kstsp_solution_stack_len(const struct KstspSolution *sol, size_t index);

/**
 * Copies stack `index`, bottom to top, into `buf`, which holds `len` items.
 *
 * # Safety
 * `sol` must be a live handle; `buf` must have room for `len` items.
 */
enum KstspStatus kstsp_solution_stack(const struct KstspSolution *sol,
                                      size_t index,
                                      size_t *buf,
                                      size_t len);

/**
 * Writes the canonical JSON document of a solution to `*out`.
 *
 * # Safety
 * `sol` must be a live handle; `out` must be writable.
 */
enum KstspStatus kstsp_solution_to_json(const struct KstspSolution *sol, char **out);

#endif  /* KSTSP_H */
