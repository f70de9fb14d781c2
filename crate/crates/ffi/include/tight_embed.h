#ifndef TIGHT_EMBED_H
#define TIGHT_EMBED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TeStatus {
  TE_STATUS_OK = 0,
  /**
   * Malformed or out-of-contract input, including null pointers.
   */
  TE_STATUS_INVALID_INPUT = 2,
  /**
   * The object was built but its certification failed.
   */
  TE_STATUS_VERIFY_FAILED = 3,
  TE_STATUS_INTERNAL = 4,
} TeStatus;

/**
 * Modulus classes for [`te_modulus_check`].
 */
typedef enum TeClass {
  TE_CLASS_PHI = 0,
  TE_CLASS_P = 1,
  TE_CLASS_OMEGA = 2,
} TeClass;

/**
 * An `l_p` block-sum embedding with its sandwich report.
 */
typedef struct TeLpEmbedding TeLpEmbedding;

/**
 * A modulus curve.
 */
typedef struct TeModulus TeModulus;

/**
 * A finite metric space or `l_p` point set.
 */
typedef struct TeSpace TeSpace;

/**
 * An `l_inf` coordinate embedding with its sandwich report.
 */
typedef struct TeStableEmbedding TeStableEmbedding;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `te_*` call on the same thread.
 */
const char *te_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *te_version(void);

/**
 * # Safety
 * `s` must come from a `te_*` function returning `char*` and not be freed yet.
 */
void te_string_free(char *s);

/**
 * Parse a modulus JSON description.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum TeStatus te_modulus_from_json(const char *json, struct TeModulus **out);

/**
 * Evaluate the curve at `t >= 0`.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum TeStatus te_modulus_eval(const struct TeModulus *m, double t, double *out);

/**
 * Certify class membership on the default grid; `pass` receives the
 * verdict and the status is `TE_STATUS_OK` either way.
 *
 * # Safety
 * `m` must be a live handle and `pass` a valid pointer.
 */
enum TeStatus te_modulus_check(const struct TeModulus *m, enum TeClass class_, bool *pass);

/**
 * Regularize a curve of class `P` or `Omega` into a new handle.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum TeStatus te_modulus_regularize(const struct TeModulus *m,
                                    enum TeClass class_,
                                    struct TeModulus **out);

/**
 * Serialize a curve to JSON; free the result with `te_string_free`.
 *
 * # Safety
 * `m` must be a live handle and `out` a valid pointer.
 */
enum TeStatus te_modulus_to_json(const struct TeModulus *m, char **out);

/**
 * # Safety
 * `m` must be null or a handle not freed yet.
 */
void te_modulus_free(struct TeModulus *m);

/**
 * Parse a space: `{"type":"points",...}` or `{"type":"matrix",...}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum TeStatus te_space_from_json(const char *json, struct TeSpace **out);

/**
 * Number of points.
 *
 * # Safety
 * `s` must be a live handle.
 */
size_t te_space_len(const struct TeSpace *s);

/**
 * # Safety
 * `s` must be null or a handle not freed yet.
 */
void te_space_free(struct TeSpace *s);

/**
 * Build and certify the `l_p` block-sum embedding of a point set.
 *
 * `modulus` is either a curve in Phi (dominated internally) or a
 * `log2_dominated` curve. `eta <= 0` selects the default
 * `max(100, 2 / (1 - 16 r) + 1)`; `outer_s` may be `INFINITY`. Returns
 * `TE_STATUS_VERIFY_FAILED` with a valid `*out` when the sandwich fails.
 *
 * # Safety
 * Handles must be live and `out` a valid pointer.
 */
enum TeStatus te_lp_embed(const struct TeSpace *points,
                          const struct TeModulus *modulus,
                          double eta,
                          double r,
                          double outer_s,
                          struct TeLpEmbedding **out);

/**
 * Whether every pair passed the sandwich.
 *
 * # Safety
 * `e` must be a live handle.
 */
bool te_lp_embedding_pass(const struct TeLpEmbedding *e);

/**
 * `||f(x_i) - f(x_j)||` in the block space.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum TeStatus te_lp_embedding_distance(const struct TeLpEmbedding *e,
                                       size_t i,
                                       size_t j,
                                       double *out);

/**
 * Embedding file JSON (input, plan, values, report); free with
 * `te_string_free`.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum TeStatus te_lp_embedding_to_json(const struct TeLpEmbedding *e, char **out);

/**
 * # Safety
 * `e` must be null or a handle not freed yet.
 */
void te_lp_embedding_free(struct TeLpEmbedding *e);

/**
 * Build and certify the `l_inf` coordinate embedding of a space. `rho`
 * and `omega` are regularized first. Returns `TE_STATUS_VERIFY_FAILED`
 * with a valid `*out` when the certification fails.
 *
 * # Safety
 * Handles must be live and `out` a valid pointer.
 */
enum TeStatus te_stable_embed(const struct TeSpace *space,
                              size_t basepoint,
                              const struct TeModulus *rho,
                              const struct TeModulus *omega,
                              struct TeStableEmbedding **out);

/**
 * # Safety
 * `e` must be a live handle.
 */
bool te_stable_embedding_pass(const struct TeStableEmbedding *e);

/**
 * Largest `N_omega` over the coordinates.
 *
 * # Safety
 * `e` must be a live handle.
 */
double te_stable_embedding_max_n_omega(const struct TeStableEmbedding *e);

/**
 * Sup-norm distance between the images of points `i` and `j`.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum TeStatus te_stable_embedding_distance(const struct TeStableEmbedding *e,
                                           size_t i,
                                           size_t j,
                                           double *out);

/**
 * Embedding file JSON (input, moduli, coordinates, table, report); free
 * with `te_string_free`.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum TeStatus te_stable_embedding_to_json(const struct TeStableEmbedding *e, char **out);

/**
 * # Safety
 * `e` must be null or a handle not freed yet.
 */
void te_stable_embedding_free(struct TeStableEmbedding *e);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TIGHT_EMBED_H */
