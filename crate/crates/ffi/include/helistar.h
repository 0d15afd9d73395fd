#ifndef HELISTAR_H
#define HELISTAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

/**
 * Status codes. The first four match the command-line exit codes.
 */
typedef enum HelistarStatus {
  HELISTAR_STATUS_OK = 0,
  HELISTAR_STATUS_VERIFY_FAILED = 1,
  HELISTAR_STATUS_INVALID_ARGUMENT = 2,
  HELISTAR_STATUS_NO_RESULT = 3,
  HELISTAR_STATUS_IO = 4,
  HELISTAR_STATUS_NULL_POINTER = 5,
  HELISTAR_STATUS_PANIC = 6,
} HelistarStatus;

typedef enum HelistarVertexFigure {
  HELISTAR_VERTEX_FIGURE_SIMPLE = 0,
  HELISTAR_VERTEX_FIGURE_CROSSED = 1,
  HELISTAR_VERTEX_FIGURE_INDETERMINATE = 2,
} HelistarVertexFigure;

/**
 * Opaque list of solved branches.
 */
typedef struct HelistarBranchSet HelistarBranchSet;

/**
 * Opaque finite mesh.
 */
typedef struct HelistarMesh HelistarMesh;

typedef struct HelistarSolverOptions {
  double theta_min;
  double theta_max;
  size_t grid_points;
  double bisection_tol;
  double residual_tol;
  double min_a;
  double min_b;
} HelistarSolverOptions;

/**
 * One branch with its classification.
 */
typedef struct HelistarBranch {
  size_t branch_index;
  /**
   * Star label, 0 when not defined.
   */
  uint32_t winding_m;
  double theta;
  double radius;
  double rise;
  double residual;
  bool intersecting;
  enum HelistarVertexFigure vertex_figure;
} HelistarBranch;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into this library from the same thread.
 */
const char *helistar_last_error_message(void);

/**
 * Library version, a static NUL-terminated string.
 */
const char *helistar_version(void);

/**
 * # Safety
 * `out` must be NULL or point to writable memory for one options struct.
 */
enum HelistarStatus helistar_solver_options_default(struct HelistarSolverOptions *out);

/**
 * Solve band `(strips, shift)`. `opts` may be NULL for defaults. On
 * success `*out` owns a new branch set, possibly empty.
 *
 * # Safety
 * `opts` must be NULL or valid; `out` must be a valid pointer.
 */
enum HelistarStatus helistar_solve(uint32_t strips,
                                   uint32_t shift,
                                   const struct HelistarSolverOptions *opts,
                                   struct HelistarBranchSet **out);

/**
 * # Safety
 * `set` must be NULL or a live handle.
 */
size_t helistar_branch_set_len(const struct HelistarBranchSet *set);

/**
 * Copy branch `index` (0-based) into `*out`.
 *
 * # Safety
 * `set` must be a live handle and `out` valid.
 */
enum HelistarStatus helistar_branch_set_get(const struct HelistarBranchSet *set,
                                            size_t index,
                                            struct HelistarBranch *out);

/**
 * # Safety
 * `set` must be NULL or a handle not yet freed.
 */
void helistar_branch_set_free(struct HelistarBranchSet *set);

/**
 * Mesh of branch `index` (0-based) over `periods` periods.
 *
 * # Safety
 * `set` must be a live handle and `out` valid.
 */
enum HelistarStatus helistar_mesh_realize(const struct HelistarBranchSet *set,
                                          size_t index,
                                          uint32_t periods,
                                          struct HelistarMesh **out);

/**
 * Stack of `rings` regular `gon`-gons joined by antiprism bands.
 *
 * # Safety
 * `out` must be valid.
 */
enum HelistarStatus helistar_antiprism(uint32_t gon, uint32_t rings, struct HelistarMesh **out);

/**
 * # Safety
 * `mesh` must be NULL or a live handle.
 */
size_t helistar_mesh_vertex_count(const struct HelistarMesh *mesh);

/**
 * # Safety
 * `mesh` must be NULL or a live handle.
 */
size_t helistar_mesh_face_count(const struct HelistarMesh *mesh);

/**
 * # Safety
 * `mesh` must be NULL or a live handle.
 */
size_t helistar_mesh_edge_count(const struct HelistarMesh *mesh);

/**
 * Copy `x y z` triples into `buf`, which holds `len` doubles
 * (at least 3 × vertex count).
 *
 * # Safety
 * `mesh` must be a live handle and `buf` writable for `len` doubles.
 */
enum HelistarStatus helistar_mesh_copy_vertices(const struct HelistarMesh *mesh,
                                                double *buf,
                                                size_t len);

/**
 * Copy 0-based, outward-oriented face triples into `buf` of `len` entries
 * (at least 3 × face count).
 *
 * # Safety
 * `mesh` must be a live handle and `buf` writable for `len` entries.
 */
enum HelistarStatus helistar_mesh_copy_faces(const struct HelistarMesh *mesh,
                                             uint32_t *buf,
                                             size_t len);

/**
 * Uniformity check on the interior of the mesh. Returns `OK` or
 * `VERIFY_FAILED`.
 *
 * # Safety
 * `mesh` must be a live handle.
 */
enum HelistarStatus helistar_mesh_verify(const struct HelistarMesh *mesh);

/**
 * Write the mesh as OBJ to `path`; `frame` selects `l` records.
 *
 * # Safety
 * `mesh` must be a live handle and `path` a NUL-terminated string.
 */
enum HelistarStatus helistar_mesh_write_obj(const struct HelistarMesh *mesh,
                                            const char *path,
                                            bool frame);

/**
 * # Safety
 * `mesh` must be NULL or a handle not yet freed.
 */
void helistar_mesh_free(struct HelistarMesh *mesh);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HELISTAR_H */
