#ifndef FOLIA_H
#define FOLIA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call. The nonzero codes below 6 agree with the exit codes of
// the `folia` command.
typedef enum FoliaStatus {
  FOLIA_STATUS_OK = 0,
  // Input text or JSON could not be parsed.
  FOLIA_STATUS_PARSE = 2,
  // Input parsed but is not acceptable.
  FOLIA_STATUS_VALIDATION = 3,
  // A computation gave up: degree ceiling, field extension needed.
  FOLIA_STATUS_ABORT = 4,
  // An internal consistency check failed.
  FOLIA_STATUS_INTERNAL = 5,
  // A required pointer argument was null.
  FOLIA_STATUS_NULL_ARGUMENT = 6,
  // A string argument was not UTF-8.
  FOLIA_STATUS_INVALID_UTF8 = 7,
  // The library panicked; the handle arguments are left untouched.
  FOLIA_STATUS_PANIC = 8,
} FoliaStatus;

// A foliation of the projective plane.
typedef struct FoliaForm FoliaForm;

// The record of a reduction run, possibly partial.
typedef struct FoliaTranscript FoliaTranscript;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or an empty string after
// a successful one. Valid until the next call on this thread; do not free.
const char *folia_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void folia_string_free(char *s);

// Parses a form such as `"y dx - x dy + 0 dz"`; `#` starts a comment.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum FoliaStatus folia_form_parse(const char *text, struct FoliaForm **out);

// Releases a form. Null is ignored.
//
// # Safety
// `form` must come from this library and not have been freed.
void folia_form_free(struct FoliaForm *form);

// # Safety
// `form` must be a live handle and `out` writable.
enum FoliaStatus folia_form_degree(const struct FoliaForm *form, uint32_t *out);

// Writes the form in the syntax [`folia_form_parse`] accepts.
//
// # Safety
// `form` must be a live handle and `out` writable.
enum FoliaStatus folia_form_render(const struct FoliaForm *form, char **out);

// Singular points with Milnor numbers and the Darboux check, as JSON.
//
// # Safety
// `form` must be a live handle and `out` writable.
enum FoliaStatus folia_form_singular_json(const struct FoliaForm *form, char **out);

// Pulls a form back by one of the quadratic maps `"phi"`, `"I1"`, `"I2"`.
// When `factor_out` is not null it receives the polynomial factor removed
// from the pulled-back coefficients.
//
// # Safety
// `form` must be a live handle, `map` a NUL-terminated string, `out`
// writable and `factor_out` null or writable.
enum FoliaStatus folia_form_pullback(const struct FoliaForm *form,
                                     const char *map,
                                     struct FoliaForm **out,
                                     char **factor_out);

// Reduces a form to one with at most one singular point. A
// `degree_ceiling` of 0 selects the default. On [`FoliaStatus::Abort`] and
// most other failures `out` still receives the steps completed so far;
// it is left untouched only for null-argument errors and panics.
//
// # Safety
// `form` must be a live handle and `out` writable.
enum FoliaStatus folia_reduce(const struct FoliaForm *form,
                              uint32_t degree_ceiling,
                              struct FoliaTranscript **out);

// Releases a transcript. Null is ignored.
//
// # Safety
// `t` must come from this library and not have been freed.
void folia_transcript_free(struct FoliaTranscript *t);

// # Safety
// `t` must be a live handle and `out` writable.
enum FoliaStatus folia_transcript_step_count(const struct FoliaTranscript *t, size_t *out);

// A copy of the last form in the transcript.
//
// # Safety
// `t` must be a live handle and `out` writable.
enum FoliaStatus folia_transcript_final_form(const struct FoliaTranscript *t,
                                             struct FoliaForm **out);

// The transcript as JSON, in the format `folia reduce --json` prints.
//
// # Safety
// `t` must be a live handle and `out` writable.
enum FoliaStatus folia_transcript_json(const struct FoliaTranscript *t, char **out);

// Checks a JSON transcript by recomputing every step; on success `out`
// receives the final form. `out` may be null to only check.
//
// # Safety
// `json` must be a NUL-terminated string and `out` null or writable.
enum FoliaStatus folia_replay(const char *json, struct FoliaForm **out);

// Status code as a static string, e.g. `"validation"`.
const char *folia_status_name(enum FoliaStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOLIA_H */
