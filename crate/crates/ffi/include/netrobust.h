#ifndef NETROBUST_H
#define NETROBUST_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NrStatus {
  NR_OK = 0,
  NR_INVALID_ARGUMENT = 1,
  NR_DATA_ERROR = 2,
  NR_NUMERICAL_ERROR = 3,
  NR_NULL_POINTER = 4,
  NR_BUFFER_TOO_SMALL = 5,
  NR_PANIC = 6,
} NrStatus;

typedef enum NrFormat {
  NR_FORMAT_PLAIN = 0,
  NR_FORMAT_KONECT = 1,
  NR_FORMAT_SNAP = 2,
} NrFormat;

typedef enum NrMetric {
  NR_METRIC_DEGREE = 0,
  NR_METRIC_H_INDEX = 1,
  NR_METRIC_CORENESS = 2,
  NR_METRIC_EIGENVECTOR = 3,
  NR_METRIC_KATZ = 4,
} NrMetric;

typedef enum NrModel {
  /**
   * Every node survives with probability `p`.
   */
  NR_MODEL_UNIFORM = 0,
  /**
   * Survival probability is degree over twice the edge count.
   */
  NR_MODEL_BEST_CONNECTED = 1,
} NrModel;

/**
 * Opaque graph handle.
 */
typedef struct NrGraph NrGraph;

/**
 * Parameters of a single removal trial.
 */
typedef struct NrTrialSpec {
  double tau;
  enum NrMetric metric;
  enum NrModel model;
  /**
   * Only read for `NR_MODEL_UNIFORM`.
   */
  double p;
  /**
   * Rank by expected failure score instead of sampling.
   */
  bool deterministic;
  uint64_t seed;
  /**
   * Only read for `NR_METRIC_KATZ`.
   */
  double katz_alpha;
} NrTrialSpec;

typedef struct NrTrialResult {
  size_t requested_count;
  size_t actually_removed;
  double lambda_tilde;
  size_t lcc_tilde;
  double rho;
  double gamma;
} NrTrialResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *nr_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nr_version(void);

enum NrStatus nr_graph_load(const char *path, enum NrFormat format, struct NrGraph **out);

/**
 * Builds a graph from `edge_count` pairs stored flat in `edges`
 * (`2 * edge_count` entries). Self-loops and duplicates are dropped.
 */
enum NrStatus nr_graph_from_edges(size_t node_count,
                                  const uint32_t *edges,
                                  size_t edge_count,
                                  struct NrGraph **out);

enum NrStatus nr_graph_erdos_renyi(size_t n, double p, uint64_t seed, struct NrGraph **out);

enum NrStatus nr_graph_barabasi_albert(size_t n,
                                       size_t m_attach,
                                       uint64_t seed,
                                       struct NrGraph **out);

/**
 * Releases a handle; null is ignored.
 */
void nr_graph_free(struct NrGraph *g);

/**
 * Zero for a null handle.
 */
size_t nr_graph_node_count(const struct NrGraph *g);

/**
 * Zero for a null handle.
 */
size_t nr_graph_edge_count(const struct NrGraph *g);

enum NrStatus nr_graph_degree(const struct NrGraph *g, size_t node, size_t *out);

/**
 * New graph without the listed nodes, reindexed in increasing order of
 * the surviving indices.
 */
enum NrStatus nr_graph_delete_nodes(const struct NrGraph *g,
                                    const uint32_t *nodes,
                                    size_t len,
                                    struct NrGraph **out);

/**
 * Writes one score per node into `out`, which must hold `node_count` values.
 */
enum NrStatus nr_centrality(const struct NrGraph *g,
                            enum NrMetric kind,
                            double katz_alpha,
                            double *out,
                            size_t out_len);

enum NrStatus nr_spectral_radius(const struct NrGraph *g, double *out);

enum NrStatus nr_lcc_size(const struct NrGraph *g, size_t *out);

enum NrStatus nr_run_trial(const struct NrGraph *g,
                           const struct NrTrialSpec *spec,
                           struct NrTrialResult *out);

/**
 * Greedy NetShield selection of `k` nodes. `out_nodes` receives them in
 * selection order and must hold `k` entries. `shield_value` and
 * `eigen_drop` may be null.
 */
enum NrStatus nr_netshield_select(const struct NrGraph *g,
                                  size_t k,
                                  uint32_t *out_nodes,
                                  size_t out_len,
                                  double *shield_value,
                                  double *eigen_drop);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETROBUST_H */
