#ifndef GLG_H
#define GLG_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum GlgStatus {
  GLG_STATUS_OK = 0,
  GLG_STATUS_NULL_POINTER = 1,
  /**
   * Malformed graph6, edge list or UTF-8.
   */
  GLG_STATUS_PARSE = 2,
  GLG_STATUS_INVALID_ARGUMENT = 3,
  /**
   * A game did not terminate within its step cap.
   */
  GLG_STATUS_CAP_EXCEEDED = 4,
  /**
   * Internal error; the library state is unaffected.
   */
  GLG_STATUS_PANIC = 5,
} GlgStatus;

/**
 * Named families.
 */
typedef enum GlgFamily {
  GLG_FAMILY_PATH = 0,
  GLG_FAMILY_COMPLETE = 1,
  GLG_FAMILY_STAR = 2,
  GLG_FAMILY_CYCLE = 3,
} GlgFamily;

/**
 * Opaque graph handle.
 */
typedef struct GlgGraph GlgGraph;

/**
 * Summary of one game.
 */
typedef struct GlgGameResult {
  size_t complexity;
  /**
   * 1 if the game died, 0 if it cycled.
   */
  uint8_t halted;
  /**
   * Step of death, or step where the cycle was entered.
   */
  size_t entry;
  /**
   * Step where the earlier pattern recurred; 0 for a game that died.
   */
  size_t repeat_at;
} GlgGameResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call on the same thread.
 */
const char *glg_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void glg_string_free(char *s);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void glg_graph_free(struct GlgGraph *g);

/**
 * Decode one graph6 record.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum GlgStatus glg_graph_from_graph6(const char *text, struct GlgGraph **out);

/**
 * Parse an edge list: a header `n m` then `m` lines `u v`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum GlgStatus glg_graph_from_edge_list(const char *text, struct GlgGraph **out);

/**
 * Build a graph on `n` vertices from `m` pairs stored as
 * `edges[2i], edges[2i + 1]`.
 *
 * # Safety
 * `edges` must point to `2 * m` values (may be null when `m` is 0); `out`
 * must be writable.
 */
enum GlgStatus glg_graph_from_edges(size_t n, const size_t *edges, size_t m, struct GlgGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum GlgStatus glg_graph_family(enum GlgFamily family, size_t n, struct GlgGraph **out);

/**
 * Uniform sample from G(n, m), reproducible from `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum GlgStatus glg_graph_random(size_t n, size_t m, uint64_t seed, struct GlgGraph **out);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t glg_graph_n(const struct GlgGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t glg_graph_m(const struct GlgGraph *g);

/**
 * graph6 record of `g`, without a trailing newline.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GlgStatus glg_graph_to_graph6(const struct GlgGraph *g, char **out);

/**
 * Play the single-seed game from vertex `seed` under rule `(a, d, r)`.
 * `cap` 0 selects `min(2^n + 1, 10^6)`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GlgStatus glg_simulate(const struct GlgGraph *g,
                            size_t seed,
                            uint32_t a,
                            uint32_t d,
                            uint32_t r,
                            size_t cap,
                            struct GlgGameResult *out);

/**
 * Feature vector of `g` over `k` steps under the default rule, as the text
 * line `n k b v1 v2 ...`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GlgStatus glg_features(const struct GlgGraph *g, size_t k, bool normalize, char **out);

/**
 * One-sided isomorphism test. Sets `*non_isomorphic` to 1 with the
 * separating step in `*step` (0 for differing vertex or edge counts), or to
 * 0 when all `k` steps agree.
 *
 * # Safety
 * `g` and `h` must be live handles; the out pointers must be writable.
 */
enum GlgStatus glg_iso_test(const struct GlgGraph *g,
                            const struct GlgGraph *h,
                            size_t k,
                            uint8_t *non_isomorphic,
                            size_t *step);

/**
 * Euclidean distance between the `k`-step feature vectors of `g` and `h`.
 *
 * # Safety
 * `g` and `h` must be live handles; `out` must be writable.
 */
enum GlgStatus glg_distance(const struct GlgGraph *g,
                            const struct GlgGraph *h,
                            size_t k,
                            bool normalize,
                            double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GLG_H */
