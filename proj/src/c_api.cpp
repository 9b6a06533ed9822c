// Copyright 2026 The lloydclust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lloyd_c.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "lloyd/amg.hpp"
#include "lloyd/error.hpp"
#include "lloyd/experiments.hpp"
#include "lloyd/graph.hpp"
#include "lloyd/methods.hpp"
#include "lloyd/metrics.hpp"
#include "lloyd/sparse.hpp"

struct lc_graph {
  lloyd::WeightedGraph g;
};

struct lc_matrix {
  lloyd::SparseMatrix a;
};

struct lc_clustering {
  lloyd::MethodResult result;
};

struct lc_hierarchy {
  lloyd::Hierarchy h;
};

namespace {

thread_local std::string last_error;

lc_status fail(lc_status status, const std::string& message) {
  last_error = message;
  return status;
}

lc_status to_status(lloyd::ErrorCode code) {
  return static_cast<lc_status>(static_cast<int>(code) + 1);
}

template <class F>
lc_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const lloyd::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LC_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(LC_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(LC_INTERNAL_ERROR, "unknown failure");
  }
}

lc_status null_argument(const char* name) {
  return fail(LC_INVALID_ARGUMENT, std::string(name) + " must not be null");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lloyd::Stencil to_stencil(lc_stencil s) {
  return s == LC_STENCIL_NINE_POINT ? lloyd::Stencil::kNinePoint : lloyd::Stencil::kFivePoint;
}

lloyd::Strength to_strength(lc_strength s) {
  return s == LC_STRENGTH_UNIT ? lloyd::Strength::kUnit : lloyd::Strength::kAbsOffdiag;
}

lc_status check_method(lc_method m) {
  if (m < LC_METHOD_STANDARD || m > LC_METHOD_MIS2) {
    return fail(LC_INVALID_ARGUMENT, "unknown clustering method");
  }
  return LC_OK;
}

lloyd::MethodOptions to_method_options(const lc_cluster_options* o) {
  lc_cluster_options d;
  lc_cluster_options_default(&d);
  if (!o) o = &d;
  lloyd::MethodOptions out;
  out.t_max = o->t_max;
  out.t_bf_max = o->t_bf_max;
  out.tol = o->tol;
  out.tiebreak = o->tiebreak != 0;
  out.rebalance_sweeps = o->rebalance_sweeps;
  if (out.t_max < 1) throw lloyd::Error(lloyd::ErrorCode::kInvalidArgument, "t_max must be at least 1");
  if (out.t_bf_max < 0) throw lloyd::Error(lloyd::ErrorCode::kInvalidArgument, "t_bf_max must not be negative");
  if (!(out.tol >= 0.0)) throw lloyd::Error(lloyd::ErrorCode::kInvalidArgument, "tol must not be negative");
  if (out.rebalance_sweeps < 0) {
    throw lloyd::Error(lloyd::ErrorCode::kInvalidArgument, "rebalance_sweeps must not be negative");
  }
  return out;
}

lloyd::AmgOptions to_amg_options(const lc_amg_options* o) {
  lc_amg_options d;
  lc_amg_options_default(&d);
  if (!o) o = &d;
  if (check_method(o->method) != LC_OK) {
    throw lloyd::Error(lloyd::ErrorCode::kInvalidArgument, "unknown clustering method");
  }
  lloyd::AmgOptions out;
  out.levels = o->levels;
  out.method = static_cast<lloyd::ClusterMethod>(o->method);
  out.points_per_cluster = o->points_per_cluster;
  out.seed = o->seed;
  out.strength = to_strength(o->strength);
  out.padding = o->padding;
  out.coarse_size_floor = o->coarse_size_floor;
  out.clustering.t_max = o->t_max;
  out.clustering.rebalance_sweeps = o->rebalance_sweeps;
  out.relax_omega = o->relax_omega;
  return out;
}

}  // namespace

extern "C" {

const char* lc_version(void) { return "1.0.0"; }

const char* lc_status_string(lc_status status) {
  if (status == LC_OK) return "ok";
  if (status == LC_OUT_OF_MEMORY) return "out_of_memory";
  if (status == LC_INTERNAL_ERROR) return "internal_error";
  if (status > LC_OK && status < LC_OUT_OF_MEMORY) {
    return lloyd::to_string(static_cast<lloyd::ErrorCode>(static_cast<int>(status) - 1));
  }
  return "unknown_status";
}

const char* lc_last_error(void) { return last_error.c_str(); }

void lc_string_free(char* s) { std::free(s); }

lc_status lc_matrix_load_mtx(const char* path, lc_matrix** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new lc_matrix{lloyd::load_matrix_market(path)};
    return LC_OK;
  });
}

lc_status lc_matrix_path_laplacian(int32_t n, lc_matrix** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new lc_matrix{lloyd::path_laplacian(n)};
    return LC_OK;
  });
}

lc_status lc_matrix_grid_laplacian(int32_t nx, int32_t ny, lc_stencil stencil, lc_matrix** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new lc_matrix{lloyd::grid_laplacian(nx, ny, to_stencil(stencil))};
    return LC_OK;
  });
}

lc_status lc_matrix_from_csr(int32_t rows, int32_t cols, const int64_t* offsets,
                             const int32_t* indices, const double* values, lc_matrix** out) {
  if (!offsets) return null_argument("offsets");
  if (!out) return null_argument("out");
  if (rows < 0 || cols < 0) return fail(LC_INVALID_SIZE, "dimensions must not be negative");
  return guarded([&] {
    if (offsets[0] != 0) return fail(LC_MALFORMED_OFFSETS, "offsets must start at 0");
    std::vector<Eigen::Triplet<double>> entries;
    for (int32_t i = 0; i < rows; ++i) {
      if (offsets[i + 1] < offsets[i]) {
        return fail(LC_MALFORMED_OFFSETS, "offsets decrease at row " + std::to_string(i + 1));
      }
      for (int64_t e = offsets[i]; e < offsets[i + 1]; ++e) {
        if (indices[e] < 0 || indices[e] >= cols) {
          return fail(LC_INVALID_ARGUMENT, "column index out of range in row " + std::to_string(i + 1));
        }
        entries.emplace_back(i, indices[e], values[e]);
      }
    }
    lloyd::SparseMatrix a(rows, cols);
    a.setFromTriplets(entries.begin(), entries.end());
    *out = new lc_matrix{std::move(a)};
    return LC_OK;
  });
}

lc_status lc_matrix_write_mtx(const lc_matrix* m, const char* path) {
  if (!m) return null_argument("matrix");
  if (!path) return null_argument("path");
  return guarded([&] {
    lloyd::write_matrix_market(m->a, path);
    return LC_OK;
  });
}

int32_t lc_matrix_rows(const lc_matrix* m) { return m ? static_cast<int32_t>(m->a.rows()) : 0; }
int32_t lc_matrix_cols(const lc_matrix* m) { return m ? static_cast<int32_t>(m->a.cols()) : 0; }
int64_t lc_matrix_nnz(const lc_matrix* m) { return m ? m->a.nonZeros() : 0; }
void lc_matrix_free(lc_matrix* m) { delete m; }

lc_status lc_graph_path(int32_t n, double weight, lc_graph** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new lc_graph{lloyd::path_graph(n, weight)};
    return LC_OK;
  });
}

lc_status lc_graph_grid(int32_t nx, int32_t ny, lc_stencil stencil, lc_graph** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new lc_graph{lloyd::grid_graph(nx, ny, to_stencil(stencil))};
    return LC_OK;
  });
}

lc_status lc_graph_from_csr(int32_t n, const int64_t* offsets, const int32_t* indices,
                            const double* weights, lc_graph** out) {
  if (!offsets) return null_argument("offsets");
  if (!out) return null_argument("out");
  if (n < 0) return fail(LC_INVALID_SIZE, "node count must not be negative");
  return guarded([&] {
    std::vector<lloyd::EdgeOffset> off(offsets, offsets + n + 1);
    const auto m = static_cast<std::size_t>(std::max<int64_t>(0, off.back()));
    if (m > 0 && (!indices || !weights)) return null_argument("indices and weights");
    std::vector<lloyd::NodeId> cols(indices, indices + m);
    std::vector<double> w(weights, weights + m);
    *out = new lc_graph{lloyd::WeightedGraph::from_csr(n, std::move(off), std::move(cols), std::move(w))};
    return LC_OK;
  });
}

lc_status lc_graph_from_matrix(const lc_matrix* m, lc_strength strength, double padding,
                               lc_graph** out) {
  if (!m) return null_argument("matrix");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new lc_graph{lloyd::strength_to_distance(m->a, to_strength(strength), padding)};
    return LC_OK;
  });
}

lc_status lc_graph_validate(const lc_graph* g) {
  if (!g) return null_argument("graph");
  return guarded([&] {
    if (auto issue = lloyd::validate_graph(g->g)) return fail(to_status(issue->code), issue->message);
    return LC_OK;
  });
}

int32_t lc_graph_num_nodes(const lc_graph* g) { return g ? g->g.num_nodes() : 0; }
int64_t lc_graph_num_edges(const lc_graph* g) { return g ? g->g.num_edges() : 0; }

lc_status lc_graph_write_edges_csv(const lc_graph* g, const char* path) {
  if (!g) return null_argument("graph");
  if (!path) return null_argument("path");
  return guarded([&] {
    lloyd::write_edge_list_csv(g->g, path);
    return LC_OK;
  });
}

void lc_graph_free(lc_graph* g) { delete g; }

void lc_cluster_options_default(lc_cluster_options* options) {
  if (!options) return;
  const lloyd::MethodOptions d;
  options->t_max = d.t_max;
  options->t_bf_max = d.t_bf_max;
  options->tol = d.tol;
  options->tiebreak = d.tiebreak ? 1 : 0;
  options->rebalance_sweeps = d.rebalance_sweeps;
}

lc_status lc_method_parse(const char* name, lc_method* out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  const auto m = lloyd::parse_cluster_method(name);
  if (!m) return fail(LC_INVALID_ARGUMENT, std::string("unknown clustering method '") + name + "'");
  *out = static_cast<lc_method>(*m);
  return LC_OK;
}

const char* lc_method_name(lc_method method) {
  if (check_method(method) != LC_OK) return "unknown";
  return lloyd::to_string(static_cast<lloyd::ClusterMethod>(method));
}

int32_t lc_method_takes_seeds(lc_method method) {
  return lloyd::takes_seeds(static_cast<lloyd::ClusterMethod>(method)) ? 1 : 0;
}

lc_status lc_random_centers(int32_t n, int32_t k, uint64_t seed, uint64_t stream, int32_t* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto centers = lloyd::random_centers(n, k, seed, stream);
    std::copy(centers.begin(), centers.end(), out);
    return LC_OK;
  });
}

lc_status lc_cluster(const lc_graph* g, lc_method method, const int32_t* seeds, int32_t n_seeds,
                     const lc_cluster_options* options, lc_clustering** out) {
  if (!g) return null_argument("graph");
  if (!out) return null_argument("out");
  if (check_method(method) != LC_OK) return LC_INVALID_ARGUMENT;
  if (n_seeds < 0 || (n_seeds > 0 && !seeds)) return fail(LC_INVALID_ARGUMENT, "invalid seed array");
  return guarded([&] {
    const auto opts = to_method_options(options);
    std::span<const int32_t> s(seeds, static_cast<std::size_t>(n_seeds));
    *out = new lc_clustering{
        lloyd::run_cluster_method(g->g, static_cast<lloyd::ClusterMethod>(method), s, opts)};
    return LC_OK;
  });
}

int32_t lc_clustering_num_nodes(const lc_clustering* c) {
  return c ? static_cast<int32_t>(c->result.membership.size()) : 0;
}

int32_t lc_clustering_num_clusters(const lc_clustering* c) {
  return c ? static_cast<int32_t>(c->result.centers.size()) : 0;
}

void lc_clustering_membership(const lc_clustering* c, int32_t* out) {
  if (c && out) std::copy(c->result.membership.begin(), c->result.membership.end(), out);
}

void lc_clustering_centers(const lc_clustering* c, int32_t* out) {
  if (c && out) std::copy(c->result.centers.begin(), c->result.centers.end(), out);
}

int32_t lc_clustering_iterations(const lc_clustering* c) { return c ? c->result.iterations : 0; }
int32_t lc_clustering_rebalance_sweeps(const lc_clustering* c) {
  return c ? c->result.rebalance_sweeps : 0;
}
int32_t lc_clustering_converged(const lc_clustering* c) { return c && c->result.converged; }
int32_t lc_clustering_cap_reached(const lc_clustering* c) { return c && c->result.cap_reached; }

lc_status lc_clustering_validate(const lc_graph* g, const lc_clustering* c, lc_validation* out) {
  if (!g) return null_argument("graph");
  if (!c) return null_argument("clustering");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto check = lloyd::validate_clustering(g->g, c->result.membership, c->result.centers);
    out->valid = check.valid ? 1 : 0;
    out->failed = static_cast<lc_property>(check.failed);
    out->cluster = check.cluster;
    out->node = check.node;
    std::snprintf(out->message, sizeof(out->message), "%s", check.message.c_str());
    return LC_OK;
  });
}

lc_status lc_clustering_stats(const lc_graph* g, const lc_clustering* c, lc_stats* out,
                              double* diameters, int32_t* sizes) {
  if (!g) return null_argument("graph");
  if (!c) return null_argument("clustering");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto s = lloyd::cluster_stats(g->g, c->result.membership, c->result.centers);
    out->clusters = static_cast<int32_t>(s.size.size());
    out->zero_diameter_count = s.zero_diameter_count;
    out->min_size = s.size.empty() ? 0 : *std::min_element(s.size.begin(), s.size.end());
    out->max_size = s.size.empty() ? 0 : *std::max_element(s.size.begin(), s.size.end());
    out->max_diameter =
        s.diameter.empty() ? 0.0 : *std::max_element(s.diameter.begin(), s.diameter.end());
    out->diameter_std = s.diameter_std;
    out->size_std = s.size_std;
    out->energy = s.energy;
    out->energy_delta = s.energy_delta;
    out->delta = s.delta;
    if (diameters) std::copy(s.diameter.begin(), s.diameter.end(), diameters);
    if (sizes) std::copy(s.size.begin(), s.size.end(), sizes);
    return LC_OK;
  });
}

lc_status lc_clustering_write_csv(const lc_clustering* c, const char* path) {
  if (!c) return null_argument("clustering");
  if (!path) return null_argument("path");
  return guarded([&] {
    std::FILE* f = std::fopen(path, "w");
    if (!f) return fail(LC_IO_ERROR, std::string("cannot open ") + path + " for writing");
    std::vector<char> is_center(c->result.membership.size(), 0);
    for (auto v : c->result.centers) is_center[static_cast<std::size_t>(v)] = 1;
    std::fputs("node,cluster,is_center\n", f);
    for (std::size_t i = 0; i < c->result.membership.size(); ++i) {
      std::fprintf(f, "%zu,%d,%d\n", i + 1, c->result.membership[i] + 1, is_center[i]);
    }
    if (std::fclose(f) != 0) return fail(LC_IO_ERROR, std::string("failed writing ") + path);
    return LC_OK;
  });
}

void lc_clustering_free(lc_clustering* c) { delete c; }

void lc_amg_options_default(lc_amg_options* options) {
  if (!options) return;
  const lloyd::AmgOptions d;
  options->levels = d.levels;
  options->method = static_cast<lc_method>(d.method);
  options->points_per_cluster = d.points_per_cluster;
  options->seed = d.seed;
  options->strength = d.strength == lloyd::Strength::kUnit ? LC_STRENGTH_UNIT : LC_STRENGTH_ABS_OFFDIAG;
  options->padding = d.padding;
  options->coarse_size_floor = d.coarse_size_floor;
  options->t_max = d.clustering.t_max;
  options->rebalance_sweeps = d.clustering.rebalance_sweeps;
  options->relax_omega = d.relax_omega;
}

lc_status lc_amg_setup(const lc_matrix* a, const lc_amg_options* options, lc_hierarchy** out) {
  if (!a) return null_argument("matrix");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto opts = to_amg_options(options);
    auto h = opts.levels == 1 ? lloyd::single_level(a->a) : lloyd::sa_setup(a->a, opts);
    *out = new lc_hierarchy{std::move(h)};
    return LC_OK;
  });
}

int32_t lc_hierarchy_num_levels(const lc_hierarchy* h) {
  return h ? static_cast<int32_t>(h->h.num_levels()) : 0;
}

int32_t lc_hierarchy_level_size(const lc_hierarchy* h, int32_t level) {
  if (!h || level < 0 || level >= lc_hierarchy_num_levels(h)) return 0;
  return static_cast<int32_t>(h->h.levels[static_cast<std::size_t>(level)].a.rows());
}

int64_t lc_hierarchy_level_nnz(const lc_hierarchy* h, int32_t level) {
  if (!h || level < 0 || level >= lc_hierarchy_num_levels(h)) return 0;
  return h->h.levels[static_cast<std::size_t>(level)].a.nonZeros();
}

int32_t lc_hierarchy_num_warnings(const lc_hierarchy* h) {
  return h ? static_cast<int32_t>(h->h.warnings.size()) : 0;
}

const char* lc_hierarchy_warning(const lc_hierarchy* h, int32_t index) {
  if (!h || index < 0 || index >= lc_hierarchy_num_warnings(h)) return nullptr;
  return h->h.warnings[static_cast<std::size_t>(index)].c_str();
}

lc_status lc_amg_solve_report(const lc_hierarchy* h, uint64_t seed, int32_t max_iters,
                              double rtol, int32_t nu, lc_amg_report* out, double* residuals,
                              int32_t* n_residuals) {
  if (!h) return null_argument("hierarchy");
  if (!out) return null_argument("out");
  return guarded([&] {
    if (nu < 1) return fail(LC_INVALID_ARGUMENT, "nu must be at least 1");
    const auto report = lloyd::convergence_factor(h->h, seed, max_iters, rtol, nu);
    out->rho = report.rho;
    out->chi = lloyd::cycle_complexity(h->h, nu);
    out->iterations = report.iterations;
    out->converged = report.converged ? 1 : 0;
    if (residuals) std::copy(report.residuals.begin(), report.residuals.end(), residuals);
    if (n_residuals) *n_residuals = static_cast<int32_t>(report.residuals.size());
    out->wpd = std::numeric_limits<double>::infinity();
    out->wpd = lloyd::work_per_digit(out->chi, out->rho);
    return LC_OK;
  });
}

lc_status lc_amg_beta(const lc_hierarchy* h, double* beta, double* per_cluster) {
  if (!h) return null_argument("hierarchy");
  if (!beta) return null_argument("beta");
  return guarded([&] {
    if (h->h.num_levels() < 2) {
      return fail(LC_INVALID_ARGUMENT, "beta needs a hierarchy with at least two levels");
    }
    const auto& fine = h->h.levels.front();
    const auto report = lloyd::beta_localization(fine.a, fine.z, fine.membership);
    *beta = report.beta;
    if (per_cluster) std::copy(report.per_cluster.begin(), report.per_cluster.end(), per_cluster);
    return LC_OK;
  });
}

void lc_hierarchy_free(lc_hierarchy* h) { delete h; }

lc_status lc_experiment_tiebreak(const lc_graph* g, double fraction, int32_t runs, uint64_t seed,
                                 const lc_cluster_options* options, char** rows_csv,
                                 char** summary_csv) {
  if (!g) return null_argument("graph");
  if (!rows_csv || !summary_csv) return null_argument("output");
  return guarded([&] {
    const auto t = lloyd::tiebreak_experiment(g->g, fraction, runs, seed, to_method_options(options));
    *rows_csv = duplicate(t.rows_csv());
    *summary_csv = duplicate(t.summary_csv());
    return LC_OK;
  });
}

lc_status lc_experiment_compare(const lc_graph* g, double fraction, int32_t runs, uint64_t seed,
                                const lc_cluster_options* options, char** rows_csv,
                                char** summary_csv) {
  if (!g) return null_argument("graph");
  if (!rows_csv || !summary_csv) return null_argument("output");
  return guarded([&] {
    const auto t = lloyd::compare_experiment(g->g, fraction, runs, seed, to_method_options(options));
    *rows_csv = duplicate(t.rows_csv());
    *summary_csv = duplicate(t.summary_csv());
    return LC_OK;
  });
}

lc_status lc_experiment_sweep(const lc_matrix* a, const double* points_per_cluster,
                              int32_t n_points, int32_t runs, uint64_t seed,
                              const lc_amg_options* options, int32_t nu, char** csv) {
  if (!a) return null_argument("matrix");
  if (!csv) return null_argument("csv");
  if (n_points < 0 || (n_points > 0 && !points_per_cluster)) {
    return fail(LC_INVALID_ARGUMENT, "invalid points-per-cluster list");
  }
  return guarded([&] {
    lloyd::SweepOptions s;
    if (n_points > 0) s.points_per_cluster.assign(points_per_cluster, points_per_cluster + n_points);
    s.runs = runs;
    s.seed = seed;
    s.amg = to_amg_options(options);
    s.nu = nu;
    if (s.amg.levels < 2) return fail(LC_INVALID_ARGUMENT, "a sweep needs at least two levels");
    *csv = duplicate(lloyd::sweep_experiment(a->a, s).csv());
    return LC_OK;
  });
}

lc_status lc_experiment_seed_demo(int32_t worst_case, uint64_t seed, int32_t n_node,
                                  int32_t n_cluster, int32_t t_max, int32_t rebalance_sweeps,
                                  char** csv, double* optimal_energy) {
  if (!csv) return null_argument("csv");
  return guarded([&] {
    const auto demo =
        lloyd::seed_demo(worst_case != 0, seed, n_node, n_cluster, t_max, rebalance_sweeps);
    *csv = duplicate(demo.csv());
    if (optimal_energy) *optimal_energy = demo.optimal_energy;
    return LC_OK;
  });
}

}  // extern "C"
