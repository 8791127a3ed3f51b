#ifndef RMEMOA_H
#define RMEMOA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bound component meaning "no limit".
 */
#define RME_UNBOUNDED UINT64_MAX

typedef enum RmeStatus {
  RME_STATUS_OK = 0,
  RME_STATUS_NULL_POINTER = 1,
  RME_STATUS_INVALID_ARGUMENT = 2,
  RME_STATUS_IO_ERROR = 3,
  RME_STATUS_PARSE_ERROR = 4,
  RME_STATUS_SEARCH_ERROR = 5,
  RME_STATUS_OUT_OF_RANGE = 6,
  RME_STATUS_PANIC = 7,
} RmeStatus;

/**
 * Opaque graph handle.
 */
typedef struct RmeGraph RmeGraph;

/**
 * Opaque search result handle.
 */
typedef struct RmeResult RmeResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Valid until the next
 * failing call on the same thread; never NULL.
 */
const char *rme_last_error(void);

/**
 * Creates an empty graph.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum RmeStatus rme_graph_new(size_t vertex_count,
                             size_t num_objectives,
                             uint32_t start,
                             uint32_t goal,
                             struct RmeGraph **out);

/**
 * Reads an instance file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RmeStatus rme_graph_read(const char *path, struct RmeGraph **out);

/**
 * Adds a directed edge with `len` cost components.
 *
 * # Safety
 * `graph` must come from this library; `cost` must point to `len` values.
 */
enum RmeStatus rme_graph_add_edge(struct RmeGraph *graph,
                                  uint32_t from,
                                  uint32_t to,
                                  const uint64_t *cost,
                                  size_t len);

/**
 * Number of objectives of a graph, or 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or come from this library.
 */
size_t rme_graph_num_objectives(const struct RmeGraph *graph);

/**
 * # Safety
 * `graph` must be NULL or come from this library and not be used afterwards.
 */
void rme_graph_free(struct RmeGraph *graph);

/**
 * Searches for the Pareto-optimal solutions of `graph`. `c` and `d` hold
 * `len` components each, which must equal the objective count. A
 * non-positive `time_limit_seconds` means no limit.
 *
 * # Safety
 * `graph` must come from this library; `c`, `d` must point to `len`
 * values; `out` must be a valid pointer.
 */
enum RmeStatus rme_solve(const struct RmeGraph *graph,
                         const uint64_t *c,
                         const uint64_t *d,
                         size_t len,
                         double time_limit_seconds,
                         struct RmeResult **out);

/**
 * # Safety
 * `result` must be NULL or come from [`rme_solve`].
 */
size_t rme_result_solution_count(const struct RmeResult *result);

/**
 * 1 if the search hit its time limit, 0 otherwise.
 *
 * # Safety
 * `result` must be NULL or come from [`rme_solve`].
 */
int32_t rme_result_timed_out(const struct RmeResult *result);

/**
 * Peak number of labels stored at once during the search.
 *
 * # Safety
 * `result` must be NULL or come from [`rme_solve`].
 */
uint64_t rme_result_max_stored_labels(const struct RmeResult *result);

/**
 * # Safety
 * `result` must be NULL or come from [`rme_solve`].
 */
uint64_t rme_result_expansions(const struct RmeResult *result);

/**
 * Copies the cost of solution `index` into `out`, which holds `len` values.
 *
 * # Safety
 * `result` must come from [`rme_solve`]; `out` must point to `len` values.
 */
enum RmeStatus rme_result_cost(const struct RmeResult *result,
                               size_t index,
                               uint64_t *out,
                               size_t len);

/**
 * Number of vertices on the path of solution `index`, or 0 if out of range.
 *
 * # Safety
 * `result` must be NULL or come from [`rme_solve`].
 */
size_t rme_result_path_len(const struct RmeResult *result, size_t index);

/**
 * Copies the vertex sequence of solution `index` into `out`, which holds
 * `len` values; `len` must equal [`rme_result_path_len`].
 *
 * # Safety
 * `result` must come from [`rme_solve`]; `out` must point to `len` values.
 */
enum RmeStatus rme_result_path(const struct RmeResult *result,
                               size_t index,
                               uint32_t *out,
                               size_t len);

/**
 * # Safety
 * `result` must be NULL or come from [`rme_solve`] and not be used afterwards.
 */
void rme_result_free(struct RmeResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RMEMOA_H */
