#ifndef IGBAND_H
#define IGBAND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IgStatus {
  IG_STATUS_OK = 0,
  IG_STATUS_NULL_POINTER = 1,
  IG_STATUS_INVALID_UTF8 = 2,
  /**
   * The band text or name was rejected.
   */
  IG_STATUS_INVALID_BAND = 3,
  /**
   * A word named an unknown letter or was empty.
   */
  IG_STATUS_INVALID_WORD = 4,
  IG_STATUS_PANIC = 5,
} IgStatus;

typedef enum IgVerdict {
  IG_VERDICT_EQUAL = 0,
  IG_VERDICT_NOT_EQUAL = 1,
  /**
   * The search budget ran out.
   */
  IG_VERDICT_INCONCLUSIVE = 2,
} IgVerdict;

/**
 * A parsed band with its decomposition and classification.
 */
typedef struct IgBand IgBand;

/**
 * Structural properties of a band.
 */
typedef struct IgClassification {
  size_t size;
  size_t num_classes;
  bool is_semilattice;
  bool is_rectangular;
  bool is_chain;
  bool is_normal;
  bool is_regular_band;
  bool is_locally_large;
} IgClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a band from Cayley-table text into `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IgStatus igband_parse(const char *text, struct IgBand **out);

/**
 * Loads one of the bands shipped with the library by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IgStatus igband_bundled(const char *name, struct IgBand **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `band` must come from this library and not be used afterwards.
 */
void igband_free(struct IgBand *band);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `band` must be null or a live handle.
 */
size_t igband_size(const struct IgBand *band);

/**
 * # Safety
 * `band` must be a live handle and `out` a valid pointer.
 */
enum IgStatus igband_classify(const struct IgBand *band, struct IgClassification *out);

/**
 * Normal form of `word` (space-separated element names) under leftmost
 * contraction, as a new string in `*out`.
 *
 * # Safety
 * `band` must be a live handle, `word` a NUL-terminated string and `out`
 * a valid pointer.
 */
enum IgStatus igband_normal_form(const struct IgBand *band, const char *word, char **out);

/**
 * Almost normal form of `word`, blocks separated by `|`.
 *
 * # Safety
 * As for [`igband_normal_form`].
 */
enum IgStatus igband_anf(const struct IgBand *band, const char *word, char **out);

/**
 * Decides whether two words are equal in `IG(B)`.
 *
 * `max_len` of 0 means the longest input plus four. When `certificate`
 * is non-null it receives the derivation text for an equal verdict and
 * null otherwise.
 *
 * # Safety
 * `band` must be a live handle, the words NUL-terminated strings,
 * `verdict` a valid pointer and `certificate` null or valid.
 */
enum IgStatus igband_equal(const struct IgBand *band,
                           const char *word1,
                           const char *word2,
                           size_t max_len,
                           size_t max_states,
                           enum IgVerdict *verdict,
                           char **certificate);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void igband_string_free(char *s);

/**
 * The message of the last failed call on this thread, or null. Valid
 * until the next failing call on the same thread.
 */
const char *igband_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IGBAND_H */
