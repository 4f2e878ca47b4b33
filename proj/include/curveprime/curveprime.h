/* C interface to libcurveprime. Big integers cross the boundary as decimal
 * strings. Every call returning cp_status leaves a message for
 * cp_last_error() on failure; strings returned by accessors live as long as
 * the handle they came from. */
#ifndef CURVEPRIME_H
#define CURVEPRIME_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CP_API __declspec(dllexport)
#else
#define CP_API __attribute__((visibility("default")))
#endif

typedef enum {
  CP_OK = 0,
  CP_ERR_INVALID_ARGUMENT = 1, /* malformed or missing input */
  CP_ERR_HYPOTHESIS = 2,       /* input outside the test's hypotheses */
  CP_ERR_INTERNAL = 3
} cp_status;

typedef enum { CP_CERTIFIED_PRIME = 0, CP_COMPOSITE = 1, CP_NOT_CERTIFIED = 2 } cp_verdict;

typedef enum { CP_ORACLE_PRIME = 0, CP_ORACLE_COMPOSITE = 1, CP_ORACLE_PROBABLE_PRIME = 2 } cp_oracle_kind;

typedef struct cp_result cp_result;
typedef struct cp_oracle_result cp_oracle_result;

typedef struct {
  int collect_trace; /* nonzero: keep per-step values */
  int closed_form;   /* nonzero: L family uses the closed-form sqrt(5) where defined */
} cp_options;

CP_API const char* cp_version(void);
CP_API const char* cp_last_error(void);

/* family is "A", "S", "L" or "mersenne"; keys/values are count parameter
 * pairs (A: m, n; S: p, n; L: n, h, F; mersenne: p). options may be NULL. */
CP_API cp_status cp_run(const char* family, const char* const* keys, const char* const* values, size_t count,
                        const cp_options* options, cp_result** out);

CP_API cp_status cp_test_A(const char* m, unsigned n, const cp_options* options, cp_result** out);
CP_API cp_status cp_test_S(const char* p, unsigned n, const cp_options* options, cp_result** out);
/* divisor is "u;v" over Q, e.g. "x+1;3"; NULL selects that default. */
CP_API cp_status cp_test_L(unsigned n, const char* h, const char* divisor, const cp_options* options,
                           cp_result** out);
CP_API cp_status cp_test_mersenne(unsigned p, const cp_options* options, cp_result** out);

CP_API cp_verdict cp_result_verdict(const cp_result* r);
CP_API const char* cp_result_outcome(const cp_result* r); /* certified_prime | composite | not_certified */
CP_API const char* cp_result_value(const cp_result* r);   /* the number tested */
CP_API const char* cp_result_witness(const cp_result* r); /* factor, or NULL */
CP_API const char* cp_result_reason(const cp_result* r);
CP_API uint64_t cp_result_steps(const cp_result* r);
CP_API size_t cp_result_trace_size(const cp_result* r);
CP_API const char* cp_result_trace_at(const cp_result* r, size_t i); /* NULL when out of range */
CP_API void cp_result_free(cp_result* r);

/* The number a run would test, written to a string owned by the caller via cp_string_free. */
CP_API cp_status cp_family_value(const char* family, const char* const* keys, const char* const* values,
                                 size_t count, char** out);
CP_API void cp_string_free(char* s);

/* Smallest exponent a search starts from: A needs 4m < 2^n (param = m), S needs
 * p < 2^n (param = p), L starts at 3, mersenne at 3 (param ignored, may be NULL). */
CP_API cp_status cp_search_start(const char* family, const char* param, unsigned* n);

/* Prefilter for A(m, n): 0 clean, 3 or 5 when that prime divides A. */
CP_API cp_status cp_prefilter_A(const char* m, unsigned n, int* divisor);

/* Independent oracle; never part of a certificate. */
CP_API cp_status cp_oracle_check(const char* n, cp_oracle_result** out);
CP_API cp_oracle_kind cp_oracle_verdict(const cp_oracle_result* r);
CP_API const char* cp_oracle_factor(const cp_oracle_result* r); /* NULL when none */
CP_API const char* cp_oracle_describe(const cp_oracle_result* r);
CP_API void cp_oracle_free(cp_oracle_result* r);

/* Self-test: calls report once per check; writes the number of failed checks.
 * fixtures_json may be NULL for the embedded fixtures. */
typedef void (*cp_selftest_report)(const char* name, int passed, const char* detail, void* user);
CP_API cp_status cp_selftest(int quick, const char* fixtures_json, cp_selftest_report report, void* user,
                             int* failures);
CP_API const char* cp_selftest_fixtures(void);

#ifdef __cplusplus
}
#endif

#endif
