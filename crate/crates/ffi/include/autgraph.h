/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef AUTGRAPH_H
#define AUTGRAPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. The first five match the command line exit codes.
typedef enum AgStatus {
  AG_STATUS_OK = 0,
  // A check ran and its conclusion was refuted.
  AG_STATUS_REFUTED = 1,
  AG_STATUS_PARSE_ERROR = 2,
  AG_STATUS_INVARIANT_VIOLATION = 3,
  AG_STATUS_PRECONDITION_FAILED = 4,
  AG_STATUS_NULL_POINTER = 5,
  AG_STATUS_INVALID_ARGUMENT = 6,
  AG_STATUS_PANIC = 7,
} AgStatus;

// An undirected simple graph.
typedef struct AgGraph AgGraph;

// A permutation group with its order and generators.
typedef struct AgGroup AgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a family graph from a spec such as `"johnson:5,2"`.
//
// # Safety
// `spec` must be a nul-terminated string and `out` a writable pointer.
enum AgStatus ag_graph_from_family(const char *spec, struct AgGraph **out);

// Parses a graph in the text (`n m` header plus edge lines) or JSON format.
//
// # Safety
// `text` must be a nul-terminated string and `out` a writable pointer.
enum AgStatus ag_graph_from_text(const char *text, struct AgGraph **out);

// # Safety
// `graph` must be null or a handle from this library not yet freed.
void ag_graph_free(struct AgGraph *graph);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t ag_graph_vertex_count(const struct AgGraph *graph);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t ag_graph_edge_count(const struct AgGraph *graph);

// The canonical text encoding; free with [`ag_string_free`].
//
// # Safety
// `graph` must be a live handle and `out` a writable pointer.
enum AgStatus ag_graph_to_text(const struct AgGraph *graph, char **out);

// # Safety
// `graph` must be a live handle and `out` a writable pointer.
enum AgStatus ag_automorphism_group(const struct AgGraph *graph, struct AgGroup **out);

// # Safety
// `group` must be null or a handle from this library not yet freed.
void ag_group_free(struct AgGroup *group);

// The group order in decimal; free with [`ag_string_free`].
//
// # Safety
// `group` must be a live handle and `out` a writable pointer.
enum AgStatus ag_group_order_string(const struct AgGroup *group, char **out);

// Number of points acted on, or 0 for a null handle.
//
// # Safety
// `group` must be null or a live handle.
size_t ag_group_degree(const struct AgGroup *group);

// Number of stored generators, or 0 for a null handle.
//
// # Safety
// `group` must be null or a live handle.
size_t ag_group_generator_count(const struct AgGroup *group);

// Copies the image list of generator `index` into `images`, which must
// hold `len >= degree` entries.
//
// # Safety
// `group` must be a live handle and `images` valid for `len` writes.
enum AgStatus ag_group_generator(const struct AgGroup *group,
                                 size_t index,
                                 size_t *images,
                                 size_t len);

// Stability verdict as JSON; free with [`ag_string_free`]. Fails with
// `PreconditionFailed` on disconnected graphs.
//
// # Safety
// `graph` must be a live handle and `out` a writable pointer.
enum AgStatus ag_stability_json(const struct AgGraph *graph, char **out);

// Runs every applicable check for a family spec and writes the reports as
// a JSON array. Returns `Refuted` (with the array still written) when any
// report is refuted.
//
// # Safety
// `spec` must be a nul-terminated string and `out` a writable pointer.
enum AgStatus ag_verify_family_json(const char *spec, char **out);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void ag_string_free(char *s);

// Message for the last failed call on this thread, or an empty string.
// Valid until the next call into the library on the same thread.
const char *ag_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AUTGRAPH_H */
