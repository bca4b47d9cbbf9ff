#ifndef SIGMA_ARTIN_H
#define SIGMA_ARTIN_H

#include <stdbool.h>
#include <stdint.h>

typedef enum SaAnswer {
  SA_ANSWER_IN = 0,
  SA_ANSWER_OUT = 1,
  SA_ANSWER_UNKNOWN = 2,
} SaAnswer;

/*
 Result of every fallible call.
 */
typedef enum SaStatus {
  SA_STATUS_OK = 0,
  /*
   Null pointer or invalid argument.
   */
  SA_STATUS_USAGE = 1,
  /*
   Malformed or invalid input document.
   */
  SA_STATUS_VALIDATION = 2,
  /*
   An internal invariant failed.
   */
  SA_STATUS_INTERNAL = 3,
} SaStatus;

/*
 A defining graph together with a character.
 */
typedef struct SaProblem SaProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parse a JSON document with `vertices`, `edges` and `character`.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SaStatus sa_problem_from_json(const char *json, struct SaProblem **out);

/*
 Release a handle from `sa_problem_from_json`; null is ignored.

 # Safety
 `problem` must come from `sa_problem_from_json` and not be used afterwards.
 */
void sa_problem_destroy(struct SaProblem *problem);

/*
 Membership of `[χ]` in the homological invariant `Σ^n(A_Γ, Z)`.

 # Safety
 `problem` must be a live handle and `out` a valid pointer.
 */
enum SaStatus sa_sigma_verdict(const struct SaProblem *problem,
                               uint32_t n,
                               bool assume_k_pi_1,
                               enum SaAnswer *out);

/*
 Whether `ker χ` is of type `FP_n`.

 # Safety
 `problem` must be a live handle and `out` a valid pointer.
 */
enum SaStatus sa_kernel_finiteness(const struct SaProblem *problem,
                                   uint32_t n,
                                   bool assume_k_pi_1,
                                   enum SaAnswer *out);

/*
 Full report for degrees `1..=n_max` as a JSON string owned by the caller.

 # Safety
 `problem` must be a live handle and `out` a valid pointer.
 */
enum SaStatus sa_report_json(const struct SaProblem *problem, uint32_t n_max, char **out);

/*
 Release a string returned by this library; null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void sa_string_free(char *s);

/*
 Message of the last failed call on this thread, or null. Valid until the
 next failing call on the same thread.
 */
const char *sa_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIGMA_ARTIN_H */
