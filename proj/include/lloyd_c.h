/*
 * Copyright 2026 The lloydclust Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LLOYD_C_H_
#define LLOYD_C_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LC_API __declspec(dllexport)
#else
#define LC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* All node and cluster indices crossing this interface are 0-based. */

typedef struct lc_graph lc_graph;
typedef struct lc_matrix lc_matrix;
typedef struct lc_clustering lc_clustering;
typedef struct lc_hierarchy lc_hierarchy;

typedef enum lc_status {
  LC_OK = 0,
  LC_INVALID_ARGUMENT,
  LC_INVALID_SIZE,
  LC_NEGATIVE_WEIGHT,
  LC_SELF_LOOP,
  LC_MALFORMED_OFFSETS,
  LC_NOT_SQUARE,
  LC_PARSE_ERROR,
  LC_IO_ERROR,
  LC_EMPTY_SEED_SET,
  LC_INVALID_SEED,
  LC_DUPLICATE_CENTER,
  LC_UNREACHABLE_NODE,
  LC_DISCONNECTED_CLUSTER,
  LC_UNASSIGNED_NODE,
  LC_INFINITE_DISTANCE,
  LC_SINGULAR_DIAGONAL,
  LC_RANK_DEFICIENT_CLUSTER,
  LC_SINGULAR_COARSE_SOLVE,
  LC_DIVERGENT_RHO,
  LC_TOO_LARGE,
  LC_NOT_SPD,
  LC_OUT_OF_MEMORY,
  LC_INTERNAL_ERROR
} lc_status;

typedef enum lc_method {
  LC_METHOD_STANDARD = 0,
  LC_METHOD_BALANCED,
  LC_METHOD_REBALANCED,
  LC_METHOD_GREEDY,
  LC_METHOD_MIS2
} lc_method;

typedef enum lc_stencil { LC_STENCIL_FIVE_POINT = 0, LC_STENCIL_NINE_POINT } lc_stencil;

typedef enum lc_strength { LC_STRENGTH_UNIT = 0, LC_STRENGTH_ABS_OFFDIAG } lc_strength;

typedef enum lc_property {
  LC_PROPERTY_NONE = 0,
  LC_PROPERTY_COVERING,
  LC_PROPERTY_CONNECTED,
  LC_PROPERTY_CENTERED
} lc_property;

LC_API const char* lc_version(void);
LC_API const char* lc_status_string(lc_status status);
/* Message of the most recent failure on the calling thread. */
LC_API const char* lc_last_error(void);
LC_API void lc_string_free(char* s);

/* ---- matrices ---- */

LC_API lc_status lc_matrix_load_mtx(const char* path, lc_matrix** out);
LC_API lc_status lc_matrix_path_laplacian(int32_t n, lc_matrix** out);
LC_API lc_status lc_matrix_grid_laplacian(int32_t nx, int32_t ny, lc_stencil stencil,
                                          lc_matrix** out);
LC_API lc_status lc_matrix_from_csr(int32_t rows, int32_t cols, const int64_t* offsets,
                                    const int32_t* indices, const double* values, lc_matrix** out);
LC_API lc_status lc_matrix_write_mtx(const lc_matrix* m, const char* path);
LC_API int32_t lc_matrix_rows(const lc_matrix* m);
LC_API int32_t lc_matrix_cols(const lc_matrix* m);
LC_API int64_t lc_matrix_nnz(const lc_matrix* m);
LC_API void lc_matrix_free(lc_matrix* m);

/* ---- graphs ---- */

LC_API lc_status lc_graph_path(int32_t n, double weight, lc_graph** out);
LC_API lc_status lc_graph_grid(int32_t nx, int32_t ny, lc_stencil stencil, lc_graph** out);
/* Validated construction; the first violated invariant is reported. */
LC_API lc_status lc_graph_from_csr(int32_t n, const int64_t* offsets, const int32_t* indices,
                                   const double* weights, lc_graph** out);
/* Edge lengths 1 / (strength + padding) on the off-diagonal nonzeros of m. */
LC_API lc_status lc_graph_from_matrix(const lc_matrix* m, lc_strength strength, double padding,
                                      lc_graph** out);
LC_API lc_status lc_graph_validate(const lc_graph* g);
LC_API int32_t lc_graph_num_nodes(const lc_graph* g);
LC_API int64_t lc_graph_num_edges(const lc_graph* g);
LC_API lc_status lc_graph_write_edges_csv(const lc_graph* g, const char* path);
LC_API void lc_graph_free(lc_graph* g);

/* ---- clustering ---- */

typedef struct lc_cluster_options {
  int32_t t_max;            /* Lloyd iteration cap */
  int32_t t_bf_max;         /* Bellman-Ford sweep cap; 0 means the node count */
  double tol;               /* relative tolerance of the tie test */
  int32_t tiebreak;         /* nonzero enables size tie-breaking */
  int32_t rebalance_sweeps; /* outer rebalance cap */
} lc_cluster_options;

typedef struct lc_validation {
  int32_t valid;
  lc_property failed;
  int32_t cluster; /* -1 if not applicable */
  int32_t node;    /* -1 if not applicable */
  char message[256];
} lc_validation;

typedef struct lc_stats {
  int32_t clusters;
  int32_t zero_diameter_count;
  int32_t min_size;
  int32_t max_size;
  double max_diameter;
  double diameter_std;
  double size_std;
  double energy;
  double energy_delta;
  double delta;
} lc_stats;

LC_API void lc_cluster_options_default(lc_cluster_options* options);
LC_API lc_status lc_method_parse(const char* name, lc_method* out);
LC_API const char* lc_method_name(lc_method method);
/* Nonzero if the method starts from user-supplied seeds. */
LC_API int32_t lc_method_takes_seeds(lc_method method);

/* k distinct nodes in ascending order, determined by (seed, stream). */
LC_API lc_status lc_random_centers(int32_t n, int32_t k, uint64_t seed, uint64_t stream,
                                   int32_t* out);

/* Seeds are ignored by greedy and MIS(2); options may be NULL for defaults. */
LC_API lc_status lc_cluster(const lc_graph* g, lc_method method, const int32_t* seeds,
                            int32_t n_seeds, const lc_cluster_options* options,
                            lc_clustering** out);
LC_API int32_t lc_clustering_num_nodes(const lc_clustering* c);
LC_API int32_t lc_clustering_num_clusters(const lc_clustering* c);
LC_API void lc_clustering_membership(const lc_clustering* c, int32_t* out);
LC_API void lc_clustering_centers(const lc_clustering* c, int32_t* out);
LC_API int32_t lc_clustering_iterations(const lc_clustering* c);
LC_API int32_t lc_clustering_rebalance_sweeps(const lc_clustering* c);
LC_API int32_t lc_clustering_converged(const lc_clustering* c);
LC_API int32_t lc_clustering_cap_reached(const lc_clustering* c);
LC_API lc_status lc_clustering_validate(const lc_graph* g, const lc_clustering* c,
                                        lc_validation* out);
/* diameters and sizes may be NULL; otherwise they hold num_clusters entries. */
LC_API lc_status lc_clustering_stats(const lc_graph* g, const lc_clustering* c, lc_stats* out,
                                     double* diameters, int32_t* sizes);
/* CSV "node,cluster,is_center" with 1-based indices. */
LC_API lc_status lc_clustering_write_csv(const lc_clustering* c, const char* path);
LC_API void lc_clustering_free(lc_clustering* c);

/* ---- algebraic multigrid ---- */

typedef struct lc_amg_options {
  int32_t levels;
  lc_method method;
  double points_per_cluster;
  uint64_t seed;
  lc_strength strength;
  double padding;
  int32_t coarse_size_floor;
  int32_t t_max;
  int32_t rebalance_sweeps;
  double relax_omega;
} lc_amg_options;

typedef struct lc_amg_report {
  double rho;
  double chi;
  double wpd; /* infinity when rho >= 1 */
  int32_t iterations;
  int32_t converged;
} lc_amg_report;

LC_API void lc_amg_options_default(lc_amg_options* options);
LC_API lc_status lc_amg_setup(const lc_matrix* a, const lc_amg_options* options,
                              lc_hierarchy** out);
LC_API int32_t lc_hierarchy_num_levels(const lc_hierarchy* h);
LC_API int32_t lc_hierarchy_level_size(const lc_hierarchy* h, int32_t level);
LC_API int64_t lc_hierarchy_level_nnz(const lc_hierarchy* h, int32_t level);
LC_API int32_t lc_hierarchy_num_warnings(const lc_hierarchy* h);
LC_API const char* lc_hierarchy_warning(const lc_hierarchy* h, int32_t index);
/* Cycles on A u = 0 from a seeded random start. residuals may be NULL,
   otherwise it holds max_iters + 1 entries and n_residuals receives the count.
   Returns LC_DIVERGENT_RHO, with the report filled in, when rho >= 1. */
LC_API lc_status lc_amg_solve_report(const lc_hierarchy* h, uint64_t seed, int32_t max_iters,
                                     double rtol, int32_t nu, lc_amg_report* out,
                                     double* residuals, int32_t* n_residuals);
/* Approximation constant of the first coarsening. per_cluster may be NULL;
   otherwise it holds lc_hierarchy_level_size(h, 1) entries. */
LC_API lc_status lc_amg_beta(const lc_hierarchy* h, double* beta, double* per_cluster);
LC_API void lc_hierarchy_free(lc_hierarchy* h);

/* ---- experiments (CSV text, released with lc_string_free) ---- */

LC_API lc_status lc_experiment_tiebreak(const lc_graph* g, double fraction, int32_t runs,
                                        uint64_t seed, const lc_cluster_options* options,
                                        char** rows_csv, char** summary_csv);
LC_API lc_status lc_experiment_compare(const lc_graph* g, double fraction, int32_t runs,
                                       uint64_t seed, const lc_cluster_options* options,
                                       char** rows_csv, char** summary_csv);
LC_API lc_status lc_experiment_sweep(const lc_matrix* a, const double* points_per_cluster,
                                     int32_t n_points, int32_t runs, uint64_t seed,
                                     const lc_amg_options* options, int32_t nu, char** csv);
LC_API lc_status lc_experiment_seed_demo(int32_t worst_case, uint64_t seed, int32_t n_node,
                                         int32_t n_cluster, int32_t t_max,
                                         int32_t rebalance_sweeps, char** csv,
                                         double* optimal_energy);

#ifdef __cplusplus
}
#endif

#endif /* LLOYD_C_H_ */
