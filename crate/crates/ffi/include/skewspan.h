#ifndef SKEWSPAN_H
#define SKEWSPAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SkewspanKind {
  SKEWSPAN_KIND_MONOIDALE = 0,
  SKEWSPAN_KIND_CATEGORY = 1,
  SKEWSPAN_KIND_R_STRUCTURE = 2,
  SKEWSPAN_KIND_MONOID = 3,
} SkewspanKind;

typedef enum SkewspanStatus {
  SKEWSPAN_STATUS_OK = 0,
  SKEWSPAN_STATUS_VERIFICATION_FAILED = 1,
  SKEWSPAN_STATUS_INVALID_INPUT = 2,
  SKEWSPAN_STATUS_NULL_POINTER = 3,
  SKEWSPAN_STATUS_UTF8 = 4,
  SKEWSPAN_STATUS_WRONG_KIND = 5,
  SKEWSPAN_STATUS_INTERNAL = 6,
} SkewspanStatus;

/*
 Opaque handle to a parsed instance.
 */
typedef struct SkewspanInstance SkewspanInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses instance-file JSON into a new handle.

 # Safety
 `json` must be a NUL-terminated string; `out` must point to writable storage.
 */
enum SkewspanStatus skewspan_parse(const char *json, struct SkewspanInstance **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `inst` must come from this library and not have been freed.
 */
void skewspan_free(struct SkewspanInstance *inst);

/*
 # Safety
 `inst` must be a live handle; `out` must point to writable storage.
 */
enum SkewspanStatus skewspan_kind(const struct SkewspanInstance *inst, enum SkewspanKind *out);

/*
 Runs both axiom checkers. Returns `VerificationFailed` when some axiom
 fails or the instance is not well-formed. The JSON report is written to
 `report` unless it is null.

 # Safety
 `inst` must be a live handle; `report` is null or points to writable storage.
 */
enum SkewspanStatus skewspan_verify(const struct SkewspanInstance *inst, char **report);

/*
 Compares a monoidale with `build(extract(.))`; the report goes to `report`.

 # Safety
 As for [`skewspan_verify`].
 */
enum SkewspanStatus skewspan_roundtrip(const struct SkewspanInstance *inst, char **report);

/*
 The (C, R) form of a verified monoidale, as a new handle.

 # Safety
 `inst` must be a live handle; `out` must point to writable storage.
 */
enum SkewspanStatus skewspan_extract(const struct SkewspanInstance *inst,
                                     struct SkewspanInstance **out);

/*
 The monoidale of an R-structure, as a new handle.

 # Safety
 As for [`skewspan_extract`].
 */
enum SkewspanStatus skewspan_build(const struct SkewspanInstance *inst,
                                   struct SkewspanInstance **out);

/*
 The monoidale of a monoid, as a new handle.

 # Safety
 As for [`skewspan_extract`].
 */
enum SkewspanStatus skewspan_from_monoid(const struct SkewspanInstance *inst,
                                         struct SkewspanInstance **out);

/*
 Dec of a category, as a new handle.

 # Safety
 As for [`skewspan_extract`].
 */
enum SkewspanStatus skewspan_dec(const struct SkewspanInstance *inst,
                                 struct SkewspanInstance **out);

/*
 Serializes a handle back to instance-file JSON.

 # Safety
 `inst` must be a live handle; `out` must point to writable storage.
 */
enum SkewspanStatus skewspan_to_json(const struct SkewspanInstance *inst, char **out);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void skewspan_string_free(char *s);

/*
 Message for the last failing call on this thread, or null. The pointer
 stays valid until the next call into the library on the same thread.
 */
const char *skewspan_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEWSPAN_H */
