/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#ifndef EFSMT_EFSMT_H
#define EFSMT_EFSMT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define EFSMT_API __attribute__((visibility("default")))
#else
#define EFSMT_API
#endif

typedef enum efsmt_status {
	EFSMT_OK = 0,
	EFSMT_ERR_USAGE,	/* bad argument or API misuse */
	EFSMT_ERR_PARSE,
	EFSMT_ERR_CONFIG,	/* strategy or backend does not fit the problem */
	EFSMT_ERR_UNSUPPORTED,
	EFSMT_ERR_ENCODING,
	EFSMT_ERR_DEGENERATE,
	EFSMT_ERR_INTERNAL,
} efsmt_status;

typedef enum efsmt_verdict {
	EFSMT_VALID = 0,
	EFSMT_INVALID = 1,
	EFSMT_UNKNOWN = 2,
} efsmt_verdict;

typedef struct efsmt_problem efsmt_problem;
typedef struct efsmt_report efsmt_report;

/* Strings are borrowed; NULL keeps the default. */
typedef struct efsmt_config {
	const char *strategy;		/* la-la, la-bernstein, fixed-fixed, auto */
	const char *step;		/* rational grid step, e.g. "1/32" */
	unsigned max_iterations;
	int extrapolate;
	unsigned depth;			/* Bernstein subdivision depth */
	const char *backend;		/* "internal" or "external:<command>" */
	int trace;
	int verify;
	int projection;
	unsigned long seed;		/* reserved */
} efsmt_config;

EFSMT_API const char *efsmt_version(void);

/* Message of the last failed call on this thread, "" if none. */
EFSMT_API const char *efsmt_last_error(void);
/* 1-based position of the last parse error, 0 when not a parse error. */
EFSMT_API int efsmt_last_error_line(void);
EFSMT_API int efsmt_last_error_column(void);

EFSMT_API void efsmt_config_init(efsmt_config *cfg);

/* Parses a problem file (or preset) and expands presets. 'step' may be
 * NULL; otherwise it is the default grid step of presets taking one. */
EFSMT_API efsmt_status efsmt_problem_parse(const char *text, const char *step,
                                           efsmt_problem **out);
EFSMT_API void efsmt_problem_free(efsmt_problem *p);
/* Canonical text of the parsed file. Free with efsmt_string_free. */
EFSMT_API efsmt_status efsmt_problem_print(const efsmt_problem *p, char **out);
/* Canonical text of the expanded problem (presets included). */
EFSMT_API efsmt_status efsmt_problem_print_expanded(const efsmt_problem *p, char **out);
EFSMT_API size_t efsmt_problem_exists_count(const efsmt_problem *p);
EFSMT_API size_t efsmt_problem_forall_count(const efsmt_problem *p);

EFSMT_API efsmt_status efsmt_solve(const efsmt_problem *p, const efsmt_config *cfg,
                                   efsmt_report **out);
EFSMT_API void efsmt_report_free(efsmt_report *r);
EFSMT_API efsmt_verdict efsmt_report_verdict(const efsmt_report *r);
EFSMT_API unsigned efsmt_report_iterations(const efsmt_report *r);
EFSMT_API size_t efsmt_report_witness_size(const efsmt_report *r);
/* Borrowed strings, valid until the report is freed; NULL when out of range. */
EFSMT_API const char *efsmt_report_witness_name(const efsmt_report *r, size_t i);
EFSMT_API const char *efsmt_report_witness_value(const efsmt_report *r, size_t i);
/* Human-readable text, or one s-expression when 'sexp' is non-zero. */
EFSMT_API efsmt_status efsmt_report_render(const efsmt_report *r, int sexp, char **out);

/* Runs a benchmark suite ("paper") and renders its table. 'all_ok' receives
 * 1 when every problem met its expected verdict. */
EFSMT_API efsmt_status efsmt_bench(const char *suite, const efsmt_config *cfg, char **out,
                                   int *all_ok);

/* Preset names and argument summaries, one per line. */
EFSMT_API efsmt_status efsmt_presets(char **out);

EFSMT_API void efsmt_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* EFSMT_EFSMT_H */
