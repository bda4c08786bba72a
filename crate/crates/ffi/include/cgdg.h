#ifndef CGDG_H
#define CGDG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CgdgStatus {
  CGDG_STATUS_OK = 0,
  CGDG_STATUS_NULL_POINTER = 1,
  CGDG_STATUS_INVALID_ARGUMENT = 2,
  CGDG_STATUS_INVALID_INSTANCE = 3,
  CGDG_STATUS_INVALID_SHAPE = 4,
  CGDG_STATUS_GENERAL_POSITION = 5,
  CGDG_STATUS_PARSE = 6,
  CGDG_STATUS_GENERATION_FAILED = 7,
  /*
   A caller buffer is too small; the required size was still written.
   */
  CGDG_STATUS_BUFFER_TOO_SMALL = 8,
  CGDG_STATUS_INTERNAL = 9,
} CgdgStatus;

/*
 Constructed graph together with its instance.
 */
typedef struct CgdgGraph CgdgGraph;

/*
 Point set with constraint segments.
 */
typedef struct CgdgInstance CgdgInstance;

/*
 Convex shape defining the distance function.
 */
typedef struct CgdgShape CgdgShape;

/*
 Shape constants and the two stretch bounds derived from them.
 */
typedef struct CgdgConstants {
  double alpha;
  double kappa;
  double center_x;
  double center_y;
  double bound_triangulation;
  double bound_general;
} CgdgConstants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null if none failed.
 The pointer stays valid until the next failing call on this thread.
 */
const char *cgdg_last_error_message(void);

/*
 Build an instance from `n` interleaved `x, y` pairs and `m` index pairs.

 # Safety
 `xy` must point to `2 * n` doubles and `constraints` to `2 * m` indices
 (it may be null when `m == 0`); `out` must be writable.
 */
enum CgdgStatus cgdg_instance_new(const double *xy,
                                  size_t n,
                                  const size_t *constraints,
                                  size_t m,
                                  struct CgdgInstance **out);

/*
 Parse an instance from a nul-terminated JSON document.

 # Safety
 `json` must be a valid nul-terminated string and `out` writable.
 */
enum CgdgStatus cgdg_instance_from_json(const char *json, struct CgdgInstance **out);

/*
 Seeded random instance in the unit square.

 # Safety
 `out` must be writable.
 */
enum CgdgStatus cgdg_instance_generate(uint64_t seed,
                                       size_t n,
                                       size_t constraints,
                                       struct CgdgInstance **out);

/*
 # Safety
 `inst` must be null or a handle from this library not yet freed.
 */
void cgdg_instance_free(struct CgdgInstance *inst);

/*
 # Safety
 `inst` must be a live handle.
 */
size_t cgdg_instance_len(const struct CgdgInstance *inst);

/*
 Named shape: `square`, `rect:L:S`, `equilateral` or `ngon:K`.

 # Safety
 `name` must be a valid nul-terminated string and `out` writable.
 */
enum CgdgStatus cgdg_shape_named(const char *name, struct CgdgShape **out);

/*
 Convex polygon from `k` interleaved counterclockwise vertices and an interior origin.

 # Safety
 `xy` must point to `2 * k` doubles and `out` must be writable.
 */
enum CgdgStatus cgdg_shape_polygon(const double *xy,
                                   size_t k,
                                   double origin_x,
                                   double origin_y,
                                   struct CgdgShape **out);

/*
 # Safety
 `shape` must be null or a handle from this library not yet freed.
 */
void cgdg_shape_free(struct CgdgShape *shape);

/*
 Shape constants searched with `resolution` boundary samples (64 is a good default).

 # Safety
 `shape` must be a live handle and `out` writable.
 */
enum CgdgStatus cgdg_shape_constants(const struct CgdgShape *shape,
                                     size_t resolution,
                                     struct CgdgConstants *out);

/*
 Build the graph of `inst` under `shape`. With `lenient` non-zero,
 degenerate pairs are dropped instead of failing the build.

 # Safety
 `inst` and `shape` must be live handles and `out` writable.
 */
enum CgdgStatus cgdg_graph_build(const struct CgdgInstance *inst,
                                 const struct CgdgShape *shape,
                                 int32_t lenient,
                                 struct CgdgGraph **out);

/*
 # Safety
 `graph` must be null or a handle from this library not yet freed.
 */
void cgdg_graph_free(struct CgdgGraph *graph);

/*
 # Safety
 `graph` must be a live handle.
 */
size_t cgdg_graph_edge_count(const struct CgdgGraph *graph);

/*
 Copy the edges as `u, v` index pairs into `buf`, which holds `capacity`
 pairs. `written` receives the number of edges, even when the buffer is too small.

 # Safety
 `buf` must point to `2 * capacity` writable indices and `written` must be writable.
 */
enum CgdgStatus cgdg_graph_edges(const struct CgdgGraph *graph,
                                 size_t *buf,
                                 size_t capacity,
                                 size_t *written);

/*
 1 if `uv` is an edge, 0 otherwise (including out-of-range indices).

 # Safety
 `graph` must be a live handle.
 */
int32_t cgdg_graph_has_edge(const struct CgdgGraph *graph, size_t u, size_t v);

/*
 Largest ratio of graph distance to visibility-graph distance.
 A disconnected visible pair makes the ratio infinite.

 # Safety
 `graph` must be a live handle and `out` writable.
 */
enum CgdgStatus cgdg_graph_max_stretch(const struct CgdgGraph *graph, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CGDG_H */
