#ifndef FOLRED_H
#define FOLRED_H

/* C interface to the folred toolkit: exact reduction of singularities and
 * formal classification of holomorphic foliation germs on surfaces.
 *
 * All strings are NUL-terminated UTF-8. Strings returned by the library
 * must be released with folred_string_free, germ handles with
 * folred_germ_free. The library never takes ownership of caller strings. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handle around a parsed foliation germ. */
typedef struct FolredGerm FolredGerm;

#define FOLRED_OK 0
/* Hard failure: bad input, unrepresentable data, internal error. */
#define FOLRED_ERR 2
/* Resource-limit failure: depth or order ran out before an answer. */
#define FOLRED_ERR_LIMIT 3

/* Parses one 1-form expression (e.g. "x*dy + y*dx" or "d(y + x^3)") at the
 * given truncation order. Returns NULL on failure; if err is non-NULL it
 * receives the error message. */
FolredGerm *folred_germ_parse(const char *text, size_t order, char **err);

/* Releases a germ handle. NULL is ignored. */
void folred_germ_free(FolredGerm *germ);

/* Canonical printed expression of the germ, reparseable by
 * folred_germ_parse. Returns NULL on a NULL handle. */
char *folred_germ_expression(const FolredGerm *germ);

/* Linear classification of the germ as a JSON document with fields
 * "tag", "lambda", "trace", "det". Returns NULL on failure; if err is
 * non-NULL it receives the error message. */
char *folred_germ_classify_json(const FolredGerm *germ, char **err);

/* One-shot pipeline run. pipeline is one of: "classify", "seidenberg",
 * "pair-reduce", "normal-form", "holonomy", "conjugacy-decide",
 * "verify-conjugacy". input holds one expression per line (or separated by
 * semicolons). On success *out receives the JSON report and the call
 * returns FOLRED_OK; on failure *out receives the error message prefixed
 * by its code (e.g. "E_PARSE: ...") and the call returns FOLRED_ERR or
 * FOLRED_ERR_LIMIT. */
int folred_run_json(const char *pipeline, const char *input, size_t order,
                    size_t depth_limit, char **out);

/* Releases a string returned by any folred function. NULL is ignored. */
void folred_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* FOLRED_H */
