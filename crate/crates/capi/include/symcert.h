#ifndef SYMCERT_H
#define SYMCERT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum ScStatus {
  /**
   * Success.
   */
  ScStatusOk = 0,
  /**
   * A pointer argument was null or a flag value was not recognized.
   */
  ScStatusInvalidArgument = 1,
  /**
   * The input document failed to parse or validate.
   */
  ScStatusParse = 2,
  /**
   * The analysis could not run (e.g. degenerate generator draw).
   */
  ScStatusAnalysis = 3,
} ScStatus;

/**
 * Opaque handle to a parsed state-space system.
 */
typedef struct ScSystem ScSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the underlying toolkit; storage is static, do not free.
 */
const char *sc_version(void);

/**
 * Parse a SystemDocument JSON string into an opaque handle.
 */
enum ScStatus sc_system_parse_json(const char *json, struct ScSystem **out);

/**
 * Release a system handle. Null is a no-op.
 */
void sc_system_free(struct ScSystem *sys);

/**
 * Release a string returned by an analysis call. Null is a no-op.
 */
void sc_string_free(char *s);

/**
 * Run certificate searches; `property` as in the CLI (`all`, `reciprocal`,
 * ...). Writes a ReportDocument JSON string to `out_json`.
 */
enum ScStatus sc_certify_json(const struct ScSystem *sys, const char *property, char **out_json);

/**
 * Run a canonical-form transformation; `form` as in the CLI.
 */
enum ScStatus sc_canonicalize_json(const struct ScSystem *sys, const char *form, char **out_json);

/**
 * Hankel spectral report. Pass `horizon <= 0` to use the default grid.
 */
enum ScStatus sc_hankel_json(const struct ScSystem *sys,
                             double horizon,
                             double step,
                             char **out_json);

/**
 * Subspace test on a SubspaceDocument JSON string; `test` as in the CLI.
 */
enum ScStatus sc_geometry_json(const char *subspace_json, const char *test, char **out_json);

/**
 * Generate a structured random system; writes a SystemDocument JSON
 * string with the ground-truth certificate embedded.
 */
enum ScStatus sc_generate_json(const char *kind,
                               uintptr_t n,
                               uintptr_t m,
                               uint64_t seed,
                               char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMCERT_H */
