#ifndef LIAISON_H
#define LIAISON_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LiaisonStatus {
  LIAISON_STATUS_OK = 0,
  LIAISON_STATUS_NULL_POINTER = 1,
  LIAISON_STATUS_INVALID_UTF8 = 2,
  LIAISON_STATUS_USAGE = 3,
  LIAISON_STATUS_NOT_COMPLETE_INTERSECTION = 4,
  LIAISON_STATUS_PRECONDITION = 5,
  LIAISON_STATUS_RESOURCE = 6,
  LIAISON_STATUS_UNDECIDED = 7,
  LIAISON_STATUS_TRUNCATION_TOO_SMALL = 8,
  LIAISON_STATUS_PARSE = 9,
  LIAISON_STATUS_INVARIANT = 10,
  LIAISON_STATUS_PANIC = 11,
} LiaisonStatus;

typedef struct LiaisonIdeal LiaisonIdeal;

/**
 * A finitely presented module `coker A`.
 */
typedef struct LiaisonModule LiaisonModule;

/**
 * A quotient ring `k[x1..xn]/(g1..gk)`.
 */
typedef struct LiaisonRing LiaisonRing;

/**
 * Finite-length invariants; `length` is -1 for modules of infinite length.
 */
typedef struct LiaisonInvariants {
  int64_t length;
  uint64_t nu;
  uint64_t type_;
} LiaisonInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread. Owned by the library.
 */
const char *liaison_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void liaison_string_free(char *s);

/**
 * Builds a ring. `vars` and `relations` are comma-separated; `field_char`
 * is a prime or 0 for the rationals; `weights` may be null for all ones.
 *
 * # Safety
 * Pointer arguments must be valid; `weights` must hold `nweights` values.
 */
enum LiaisonStatus liaison_ring_new(const char *vars,
                                    uint32_t field_char,
                                    const uint32_t *weights,
                                    uintptr_t nweights,
                                    const char *relations,
                                    bool local,
                                    struct LiaisonRing **out);

/**
 * # Safety
 * `r` must come from `liaison_ring_new` or be null.
 */
void liaison_ring_free(struct LiaisonRing *r);

/**
 * Ideal with comma-separated generators.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_ideal_new(const struct LiaisonRing *r,
                                     const char *gens,
                                     struct LiaisonIdeal **out);

/**
 * # Safety
 * `i` must come from this library or be null.
 */
void liaison_ideal_free(struct LiaisonIdeal *i);

/**
 * Canonical form `(g1, g2, ...)`.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_ideal_to_string(const struct LiaisonIdeal *i, char **out);

/**
 * `(a : b)`.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_ideal_colon(const struct LiaisonIdeal *a,
                                       const struct LiaisonIdeal *b,
                                       struct LiaisonIdeal **out);

/**
 * `((x) : I)` for a comma-separated regular sequence `x` inside `I`.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_ci_link(const struct LiaisonIdeal *i,
                                   const char *xs,
                                   struct LiaisonIdeal **out);

/**
 * The cyclic module `R/I`.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_module_quotient(const struct LiaisonIdeal *i,
                                           struct LiaisonModule **out);

/**
 * The ideal `I` as a module.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_module_from_ideal(const struct LiaisonIdeal *i,
                                             struct LiaisonModule **out);

/**
 * # Safety
 * `m` must come from this library or be null.
 */
void liaison_module_free(struct LiaisonModule *m);

/**
 * Canonical form: `0`, `R`, `R^n` or `coker [..]`.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_module_to_string(const struct LiaisonModule *m, char **out);

/**
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_module_invariants(const struct LiaisonModule *m,
                                             struct LiaisonInvariants *out);

/**
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_is_isomorphic(const struct LiaisonModule *a,
                                         const struct LiaisonModule *b,
                                         bool *out);

/**
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_is_doubly_perfectly_linked(const struct LiaisonModule *a,
                                                      const struct LiaisonModule *b,
                                                      bool *out);

/**
 * `Ext^r(ker f, R)` for the canonical perfect cover `f` of `m`.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_perfect_link(const struct LiaisonModule *m, struct LiaisonModule **out);

/**
 * Runs a script. `output` receives stdout text and `exit_status` the
 * CLI exit code; a failing script still returns `Ok` with a nonzero exit.
 *
 * # Safety
 * Pointer arguments must be valid.
 */
enum LiaisonStatus liaison_run_script(const char *source,
                                      uint64_t seed,
                                      bool json,
                                      char **output,
                                      int32_t *exit_status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIAISON_H */
