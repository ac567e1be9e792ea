#ifndef SERIALCOB_H
#define SERIALCOB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ScStatus {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  SC_STATUS_INVALID_UTF8 = 2,
  SC_STATUS_PARSE_ERROR = 3,
  SC_STATUS_VALIDATION_ERROR = 4,
  SC_STATUS_EXCEEDED_CAP = 5,
  SC_STATUS_PANIC = 6,
} ScStatus;

/*
 Which cobordism calculus to use: without or with floating endpoints.
 */
typedef enum ScMode {
  SC_MODE_C = 0,
  SC_MODE_C_TILDE = 1,
} ScMode;

/*
 A skein category built from a pair.
 */
typedef struct ScCategory ScCategory;

/*
 An interval series together with a symmetric circle series.
 */
typedef struct ScPair ScPair;

/*
 A linear representation of a recognizable series.
 */
typedef struct ScRep ScRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a representation from JSON text.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ScStatus sc_rep_from_json(const char *json, struct ScRep **out);

/*
 # Safety
 `rep` must come from this library and not be used afterwards. Null is ignored.
 */
void sc_rep_free(struct ScRep *rep);

/*
 # Safety
 Pointers must be valid.
 */
enum ScStatus sc_rep_dim(const struct ScRep *rep, size_t *out);

/*
 Evaluates on a word written as dot-separated letters (`"e"` for the
 empty word). The value is returned as `"p/q"` or `"p"`.

 # Safety
 Pointers must be valid; the returned string is freed with [`sc_string_free`].
 */
enum ScStatus sc_rep_eval(const struct ScRep *rep, const char *word, char **out);

/*
 # Safety
 Pointers must be valid; the new handle is freed with [`sc_rep_free`].
 */
enum ScStatus sc_rep_minimize(const struct ScRep *rep, struct ScRep **out);

/*
 # Safety
 Pointers must be valid; the returned string is freed with [`sc_string_free`].
 */
enum ScStatus sc_rep_to_json(const struct ScRep *rep, char **out);

/*
 # Safety
 Pointers must be valid.
 */
enum ScStatus sc_rep_equivalent(const struct ScRep *a, const struct ScRep *b, bool *out);

/*
 # Safety
 Pointers must be valid.
 */
enum ScStatus sc_rep_is_symmetric(const struct ScRep *rep, bool *out);

/*
 Builds a pair. Either series may be null and then stands for zero, but
 not both. The circle series must be symmetric.

 # Safety
 Non-null pointers must be valid; the handle is freed with [`sc_pair_free`].
 */
enum ScStatus sc_pair_new(const struct ScRep *bullet,
                          const struct ScRep *circ,
                          struct ScPair **out);

/*
 # Safety
 `pair` must come from this library and not be used afterwards. Null is ignored.
 */
void sc_pair_free(struct ScPair *pair);

/*
 Builds the skein category of a pair. Both series are Hankel-probed with
 `cap` first, and `SC_STATUS_EXCEEDED_CAP` is returned if either does
 not stabilize.

 # Safety
 Pointers must be valid; the handle is freed with [`sc_category_free`].
 */
enum ScStatus sc_category_new(const struct ScPair *pair,
                              enum ScMode mode,
                              size_t cap,
                              struct ScCategory **out);

/*
 # Safety
 `cat` must come from this library and not be used afterwards. Null is ignored.
 */
void sc_category_free(struct ScCategory *cat);

/*
 The algebra dimension `d` and the one-sided dimensions `ell`, `r`.

 # Safety
 Pointers must be valid.
 */
enum ScStatus sc_category_dims(const struct ScCategory *cat, size_t *d, size_t *ell, size_t *r);

/*
 Dimension of the skein hom space between two sign sequences such as `"+-"`.

 # Safety
 Pointers must be valid.
 */
enum ScStatus sc_category_hom_dim(const struct ScCategory *cat,
                                  const char *source,
                                  const char *target,
                                  uint64_t *out);

/*
 Dimension of the hom space modulo negligible morphisms.

 # Safety
 Pointers must be valid.
 */
enum ScStatus sc_category_quotient_dim(const struct ScCategory *cat,
                                       const char *source,
                                       const char *target,
                                       size_t *out);

/*
 Number of undecorated diagram shapes between two sign sequences.

 # Safety
 Pointers must be valid.
 */
enum ScStatus sc_matching_count(const char *source,
                                const char *target,
                                enum ScMode mode,
                                size_t *out);

/*
 A copy of the last error message on this thread, or null if the last
 call succeeded.
 */
char *sc_last_error_message(void);

/*
 # Safety
 `s` must be a string returned by this library, or null.
 */
void sc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SERIALCOB_H */
