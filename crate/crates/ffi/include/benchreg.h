#ifndef BENCHREG_H
#define BENCHREG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BrFormat {
  BR_FORMAT_TURTLE = 0,
  BR_FORMAT_TRIG = 1,
  BR_FORMAT_N_TRIPLES = 2,
  BR_FORMAT_N_QUADS = 3,
} BrFormat;

// Result codes. Zero is success.
typedef enum BrStatus {
  BR_STATUS_OK = 0,
  BR_STATUS_NULL_ARGUMENT = 1,
  BR_STATUS_INVALID_UTF8 = 2,
  BR_STATUS_INVALID_ARGUMENT = 3,
  BR_STATUS_PARSE_ERROR = 4,
  BR_STATUS_FORMAT_CAPABILITY = 5,
  BR_STATUS_COMPLEXITY_LIMIT = 6,
  BR_STATUS_NOT_FOUND = 7,
  BR_STATUS_NOT_ACCEPTABLE = 8,
  BR_STATUS_PANIC = 99,
} BrStatus;

// An RDF dataset.
typedef struct BrDataset BrDataset;

// A parsed permanent-URL redirect table.
typedef struct BrRedirectTable BrRedirectTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next library call on the same thread.
const char *br_last_error(void);

// Parses `len` bytes of `format`. `base` may be NULL.
//
// # Safety
// `data` must point to `len` readable bytes, `base` must be NULL or a
// NUL-terminated string, and `out_dataset` must be writable.
enum BrStatus br_dataset_parse(const uint8_t *data,
                               size_t len,
                               enum BrFormat format,
                               const char *base,
                               struct BrDataset **out_dataset);

// Number of quads in the dataset.
//
// # Safety
// `dataset` must be a live handle and `out_len` writable.
enum BrStatus br_dataset_len(const struct BrDataset *dataset, size_t *out_len);

// Writes the dataset in `format`. The buffer is released with `br_bytes_free`.
//
// # Safety
// `dataset` must be a live handle; `out_data` and `out_len` writable.
enum BrStatus br_dataset_serialize(const struct BrDataset *dataset,
                                   enum BrFormat format,
                                   uint8_t **out_data,
                                   size_t *out_len);

// Sets `*out_equal` to whether the two datasets are equal up to blank node
// renaming.
//
// # Safety
// Both handles must be live; `out_equal` writable.
enum BrStatus br_dataset_isomorphic(const struct BrDataset *a,
                                    const struct BrDataset *b,
                                    bool *out_equal);

// # Safety
// `dataset` must be NULL or a handle not yet freed.
void br_dataset_free(struct BrDataset *dataset);

// Lowercase hex SHA-256 of the input, written as 64 characters plus NUL
// into `out_hex`, which must hold at least 65 bytes.
//
// # Safety
// `data` must point to `len` readable bytes and `out_hex` to 65 writable bytes.
enum BrStatus br_sha256_hex(const uint8_t *data, size_t len, char *out_hex);

// Validates dataset metadata held in a Turtle document against the default
// curator policy. `subject` names the described dataset. `*out_json` receives
// `{"conforms": bool, "violations": [...]}`; release it with `br_string_free`.
// Missing or mistyped fields are reported as violations, not as a failure.
//
// # Safety
// `turtle` must point to `len` readable bytes, `subject` and `base` must be
// NUL-terminated (`base` may be NULL), `out_json` writable.
enum BrStatus br_validate_metadata(const uint8_t *turtle,
                                   size_t len,
                                   const char *base,
                                   const char *subject,
                                   char **out_json);

// Parses a redirect table. `default_version` is what `{version}` means when
// a request asks for `current` or `dev`.
//
// # Safety
// Both strings must be NUL-terminated; `out_table` writable.
enum BrStatus br_redirects_parse(const char *table,
                                 const char *default_version,
                                 struct BrRedirectTable **out_table);

// Resolves a request path. `*out_target` is released with `br_string_free`.
// Returns `BR_STATUS_NOT_FOUND` when no pattern matches.
//
// # Safety
// `table` must be a live handle, `path` NUL-terminated, `out_target` writable.
enum BrStatus br_redirects_resolve(const struct BrRedirectTable *table,
                                   const char *path,
                                   char **out_target);

// # Safety
// `table` must be NULL or a handle not yet freed.
void br_redirects_free(struct BrRedirectTable *table);

// Picks the representation the server would send for an `Accept` header
// (NULL means no header). `*out_media_type` points at a static string and
// must not be freed. Returns `BR_STATUS_NOT_ACCEPTABLE` when nothing fits.
//
// # Safety
// `accept` must be NULL or NUL-terminated; `out_media_type` writable.
enum BrStatus br_negotiate(const char *accept, const char **out_media_type);

// # Safety
// `data` and `len` must come from `br_dataset_serialize`, or `data` be NULL.
void br_bytes_free(uint8_t *data, size_t len);

// # Safety
// `s` must be NULL or a string returned by this library.
void br_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BENCHREG_H */
