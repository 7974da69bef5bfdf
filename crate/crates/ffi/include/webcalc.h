#ifndef WEBCALC_H
#define WEBCALC_H

#include <stddef.h>
#include <stdint.h>

// Status codes returned by every function.
typedef enum WebcalcStatus {
  WEBCALC_STATUS_OK = 0,
  WEBCALC_STATUS_NULL_POINTER = 1,
  WEBCALC_STATUS_INVALID_UTF8 = 2,
  WEBCALC_STATUS_INVALID_INPUT = 3,
  WEBCALC_STATUS_ASSERTION_FAILED = 4,
  WEBCALC_STATUS_INTERNAL = 5,
  WEBCALC_STATUS_BUFFER_TOO_SMALL = 6,
  WEBCALC_STATUS_PANIC = 7,
} WebcalcStatus;

// Opaque algebra handle.
typedef struct WebcalcAlgebra WebcalcAlgebra;

// Opaque report handle.
typedef struct WebcalcReport WebcalcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *webcalc_version(void);

// Copies the last error message of this thread into `buf`.
//
// # Safety
// `buf` must be valid for `len` bytes or null; `needed` must be null or valid.
enum WebcalcStatus webcalc_last_error(char *buf, size_t len, size_t *needed);

// Loads a builtin algebra (`trivial`, `cyclic(3)`, ...) or a JSON file path.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be valid for writes.
enum WebcalcStatus webcalc_algebra_load(const char *spec, struct WebcalcAlgebra **out);

// Parses an algebra from JSON text.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be valid for writes.
enum WebcalcStatus webcalc_algebra_from_json(const char *json, struct WebcalcAlgebra **out);

// Releases an algebra handle. Null is ignored.
//
// # Safety
// `alg` must come from this library and not be used afterwards.
void webcalc_algebra_free(struct WebcalcAlgebra *alg);

// Graded dimension of the algebra.
//
// # Safety
// Pointers must be valid.
enum WebcalcStatus webcalc_algebra_dim(const struct WebcalcAlgebra *alg, size_t *even, size_t *odd);

// Number of axiom violations (0 for a valid good pair).
//
// # Safety
// Pointers must be valid.
enum WebcalcStatus webcalc_algebra_validate(const struct WebcalcAlgebra *alg, size_t *violations);

// Dimension of the Schur algebra of degree d on n strands.
//
// # Safety
// Pointers must be valid.
enum WebcalcStatus webcalc_schur_dim(const struct WebcalcAlgebra *alg,
                                     size_t n,
                                     size_t d,
                                     size_t *out);

// Runs one CLI subcommand (without the program name or `--algebra`) against
// the algebra, e.g. `{"howe", "check", "--m", "1", "--n", "2", "--d", "2"}`.
// A report is produced even when its verdict fails; in that case the status
// is `AssertionFailed` and `*out` is still set.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; `out` must be valid.
enum WebcalcStatus webcalc_run(const struct WebcalcAlgebra *alg,
                               const char *const *argv,
                               size_t argc,
                               struct WebcalcReport **out);

// Whether every asserted verdict of the report holds (1) or not (0).
//
// # Safety
// Pointers must be valid.
enum WebcalcStatus webcalc_report_passed(const struct WebcalcReport *rep, int32_t *passed);

// Copies the JSON report into `buf`; call with a null buffer to query the size.
//
// # Safety
// `buf` must be valid for `len` bytes or null; `needed` must be null or valid.
enum WebcalcStatus webcalc_report_json(const struct WebcalcReport *rep,
                                       char *buf,
                                       size_t len,
                                       size_t *needed);

// Copies the one-line summary into `buf`.
//
// # Safety
// As for [`webcalc_report_json`].
enum WebcalcStatus webcalc_report_summary(const struct WebcalcReport *rep,
                                          char *buf,
                                          size_t len,
                                          size_t *needed);

// Releases a report handle. Null is ignored.
//
// # Safety
// `rep` must come from this library and not be used afterwards.
void webcalc_report_free(struct WebcalcReport *rep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEBCALC_H */
