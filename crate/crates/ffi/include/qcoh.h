#ifndef QCOH_H
#define QCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum QcohStatus {
  QCOH_STATUS_OK = 0,
  /**
   * A null pointer, invalid UTF-8 or an out-of-range value was passed.
   */
  QCOH_STATUS_INVALID_ARGUMENT = 1,
  /**
   * A model, operator or relation failed to parse or validate.
   */
  QCOH_STATUS_PARSE = 2,
  /**
   * The request has no implementation for this input (e.g. no closed form).
   */
  QCOH_STATUS_UNSUPPORTED = 3,
  /**
   * The computation hit an inconsistency.
   */
  QCOH_STATUS_MATH = 4,
  /**
   * A panic was caught at the boundary.
   */
  QCOH_STATUS_INTERNAL = 5,
} QcohStatus;

/**
 * A gauge-normalized J-function series for a model.
 */
typedef struct QcohJFunction QcohJFunction;

/**
 * A validated ring model.
 */
typedef struct QcohModel QcohModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *qcoh_version(void);

/**
 * Copy of the calling thread's last error message, or null if the last call
 * succeeded. Free with [`qcoh_string_free`].
 */
char *qcoh_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void qcoh_string_free(char *s);

/**
 * Looks up a built-in model (`cp1`, `f3`, `sigma1`, `gr24`, any `cp<m>`).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum QcohStatus qcoh_model_builtin(const char *name, struct QcohModel **out);

/**
 * Parses and validates a model document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QcohStatus qcoh_model_from_json(const char *json, struct QcohModel **out);

/**
 * # Safety
 * `model` must come from this library or be null.
 */
void qcoh_model_free(struct QcohModel *model);

/**
 * Number of basis elements, or 0 for a null handle.
 *
 * # Safety
 * `model` must be a live handle or null.
 */
uintptr_t qcoh_model_size(const struct QcohModel *model);

/**
 * Number of Novikov variables, or 0 for a null handle.
 *
 * # Safety
 * `model` must be a live handle or null.
 */
uintptr_t qcoh_model_rank(const struct QcohModel *model);

/**
 * The model document as JSON.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum QcohStatus qcoh_model_to_json(const struct QcohModel *model, char **out);

/**
 * Runs the flatness check to `order` and stores whether it passed.
 *
 * # Safety
 * `model` must be a live handle; `passed` must be writable.
 */
enum QcohStatus qcoh_check_flatness(const struct QcohModel *model, uint32_t order, bool *passed);

/**
 * Runs the associativity check over all basis triples.
 *
 * # Safety
 * `model` must be a live handle; `passed` must be writable.
 */
enum QcohStatus qcoh_check_associativity(const struct QcohModel *model,
                                         uint32_t order,
                                         bool *passed);

/**
 * Evaluates a relation such as `a^5 - 4*q*a` under the quantum product.
 *
 * # Safety
 * `model` must be a live handle, `relation` NUL-terminated, `is_zero` writable.
 */
enum QcohStatus qcoh_eval_relation(const struct QcohModel *model,
                                   const char *relation,
                                   uint32_t order,
                                   bool *is_zero);

/**
 * Solves the first-order system to `order` and returns the J-function.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum QcohStatus qcoh_jfunction_solve(const struct QcohModel *model,
                                     uint32_t order,
                                     struct QcohJFunction **out);

/**
 * The hypergeometric closed form for `cp<m>`, `f3` or `sigma1`.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum QcohStatus qcoh_jfunction_closed_form(const struct QcohModel *model,
                                           uint32_t order,
                                           struct QcohJFunction **out);

/**
 * # Safety
 * `j` must come from this library or be null.
 */
void qcoh_jfunction_free(struct QcohJFunction *j);

/**
 * Whether two J-functions agree termwise.
 *
 * # Safety
 * `a` and `b` must be live handles; `equal` must be writable.
 */
enum QcohStatus qcoh_jfunction_equal(const struct QcohJFunction *a,
                                     const struct QcohJFunction *b,
                                     bool *equal);

/**
 * Applies an operator such as `D1^2 - q1` and stores whether it annihilates `j`.
 *
 * # Safety
 * `j` must be a live handle, `operator` NUL-terminated, `annihilated` writable.
 */
enum QcohStatus qcoh_jfunction_apply(const struct QcohJFunction *j,
                                     const char *operator_,
                                     bool *annihilated);

/**
 * The series as JSON records `{degree, coeff}`.
 *
 * # Safety
 * `j` must be a live handle; `out` must be writable.
 */
enum QcohStatus qcoh_jfunction_to_json(const struct QcohJFunction *j, char **out);

/**
 * Descendent invariants up to total degree `max_degree`, as a JSON array.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum QcohStatus qcoh_descendents_json(const struct QcohModel *model,
                                      uint32_t max_degree,
                                      char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QCOH_H */
