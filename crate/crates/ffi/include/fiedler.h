#ifndef FIEDLER_H
#define FIEDLER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum FiedlerStatus {
  FIEDLER_STATUS_OK = 0,
  FIEDLER_STATUS_NULL_POINTER = 1,
  FIEDLER_STATUS_INVALID_ARGUMENT = 2,
  FIEDLER_STATUS_PARSE_ERROR = 3,
  FIEDLER_STATUS_INVALID_GRAPH = 4,
  FIEDLER_STATUS_DISCONNECTED = 5,
  FIEDLER_STATUS_NUMERICAL = 6,
  FIEDLER_STATUS_BUFFER_TOO_SMALL = 7,
  FIEDLER_STATUS_PANIC = 8,
} FiedlerStatus;

/**
 * Opaque graph handle.
 */
typedef struct FiedlerGraph FiedlerGraph;

typedef struct FiedlerOptimizerConfig {
  double tolerance;
  size_t max_iterations;
  size_t restarts;
  uint64_t seed;
  double degeneracy_threshold;
} FiedlerOptimizerConfig;

typedef struct FiedlerOptimizationSummary {
  double lambda2;
  double total_resistance;
  double product;
  size_t iterations;
  double gradient_norm;
  bool converged;
  bool used_fallback;
  bool degenerate_fiedler;
} FiedlerOptimizationSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses the text graph format (`n <count>`, `e <i> <j> [<w>]`, 1-based).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FiedlerStatus fiedler_graph_parse(const char *text, struct FiedlerGraph **out);

/**
 * Builds a graph from `m` edges `(us[k], vs[k], weights[k])` on `n` vertices.
 *
 * # Safety
 * The three arrays must hold `m` elements each; `out` must be valid.
 */
enum FiedlerStatus fiedler_graph_from_edges(size_t n,
                                            size_t m,
                                            const size_t *us,
                                            const size_t *vs,
                                            const double *weights,
                                            struct FiedlerGraph **out);

/**
 * Path on `n` vertices with `n - 1` edge weights; a null `weights` means all ones.
 *
 * # Safety
 * `weights` is null or holds `n - 1` values; `out` must be valid.
 */
enum FiedlerStatus fiedler_graph_path(size_t n, const double *weights, struct FiedlerGraph **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must come from a constructor in this library and not be freed twice.
 */
void fiedler_graph_free(struct FiedlerGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` is null or a live handle.
 */
size_t fiedler_graph_vertex_count(const struct FiedlerGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` is null or a live handle.
 */
size_t fiedler_graph_edge_count(const struct FiedlerGraph *g);

/**
 * Copies edge weights in input order.
 *
 * # Safety
 * `g` is a live handle; `out` holds `len` doubles.
 */
enum FiedlerStatus fiedler_graph_weights(const struct FiedlerGraph *g, double *out, size_t len);

/**
 * Laplacian eigenvalues in ascending order (`n` values).
 *
 * # Safety
 * `g` is a live handle; `out` holds `len` doubles.
 */
enum FiedlerStatus fiedler_eigenvalues(const struct FiedlerGraph *g, double *out, size_t len);

/**
 * # Safety
 * `g` is a live handle; `out` is valid.
 */
enum FiedlerStatus fiedler_algebraic_connectivity(const struct FiedlerGraph *g, double *out);

/**
 * Unit Fiedler vector (`n` values), signed so its first clearly nonzero entry is negative.
 *
 * # Safety
 * `g` is a live handle; `out` holds `len` doubles.
 */
enum FiedlerStatus fiedler_fiedler_vector(const struct FiedlerGraph *g, double *out, size_t len);

/**
 * Effective resistance between vertices `i` and `j`.
 *
 * # Safety
 * `g` is a live handle; `out` is valid.
 */
enum FiedlerStatus fiedler_effective_resistance(const struct FiedlerGraph *g,
                                                size_t i,
                                                size_t j,
                                                double *out);

/**
 * Sum of effective resistances over unordered vertex pairs.
 *
 * # Safety
 * `g` is a live handle; `out` is valid.
 */
enum FiedlerStatus fiedler_total_resistance(const struct FiedlerGraph *g, double *out);

/**
 * `λ₂ · R_tot`, invariant under scaling all weights.
 *
 * # Safety
 * `g` is a live handle; `out` is valid.
 */
enum FiedlerStatus fiedler_product_objective(const struct FiedlerGraph *g, double *out);

struct FiedlerOptimizerConfig fiedler_optimizer_config_default(void);

/**
 * Maximizes `λ₂` at the unweighted graph's total resistance.
 *
 * Writes the optimal weights (one per edge, input order) and, if `summary` is
 * not null, the run summary. A null `config` uses the defaults. A run that
 * stops without converging still returns `FIEDLER_STATUS_OK`; check `summary.converged`.
 *
 * # Safety
 * `g` is a live handle, `config` and `summary` are null or valid, and
 * `weights_out` holds `len` doubles.
 */
enum FiedlerStatus fiedler_optimize(const struct FiedlerGraph *g,
                                    const struct FiedlerOptimizerConfig *config,
                                    double *weights_out,
                                    size_t len,
                                    struct FiedlerOptimizationSummary *summary);

/**
 * Static description of a status code.
 */
const char *fiedler_status_string(enum FiedlerStatus status);

/**
 * Copies the calling thread's last error message, NUL-terminated and truncated
 * to fit. Returns the full message length excluding the NUL, so a caller can
 * pass a null buffer first to size one.
 *
 * # Safety
 * `buf` is null or holds `len` bytes.
 */
size_t fiedler_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIEDLER_H */
