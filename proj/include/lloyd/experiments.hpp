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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lloyd/amg.hpp"
#include "lloyd/graph.hpp"
#include "lloyd/methods.hpp"
#include "lloyd/sparse.hpp"

namespace lloyd {

/// Run r of an experiment keyed by master seed S draws its centers from
/// random_centers(n, k, S, r), so any subset of runs can be reproduced alone.
struct RunRow {
  int run = 0;
  std::string variant;
  int clusters = 0;
  int zero_diameter = 0;
  double diameter_std = 0.0;
  double size_std = 0.0;
  double energy = 0.0;
  int iterations = 0;
};

struct VariantSummary {
  std::string variant;
  int runs = 0;
  double zero_fraction = 0.0;  // runs with at least one zero-diameter cluster
  double mean_zero_diameter = 0.0;
  double mean_diameter_std = 0.0;
  double mean_size_std = 0.0;
  double mean_energy = 0.0;
};

struct ExperimentTable {
  std::vector<RunRow> rows;
  std::vector<VariantSummary> summary;

  const VariantSummary& variant(const std::string& name) const;
  std::string rows_csv() const;
  std::string summary_csv() const;
};

/// Number of clusters for a fraction of the nodes, rounded down, at least 1.
NodeId clusters_for_fraction(NodeId n_node, double fraction);

/// Balanced Lloyd with and without tie-breaking from identical seedings.
ExperimentTable tiebreak_experiment(const WeightedGraph& g, double fraction, int runs,
                                    std::uint64_t seed, const MethodOptions& base = {});

/// Standard, balanced and rebalanced Lloyd from identical seedings.
ExperimentTable compare_experiment(const WeightedGraph& g, double fraction, int runs,
                                   std::uint64_t seed, const MethodOptions& base = {});

struct SweepRow {
  double points_per_cluster = 0.0;
  int run = 0;
  int coarse_size = 0;
  double rho = 0.0;
  double chi = 0.0;
  double wpd = 0.0;  // infinity when rho >= 1
  int iterations = 0;
  bool converged = false;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::string csv() const;
};

struct SweepOptions {
  std::vector<double> points_per_cluster{3, 5, 8, 10, 12, 15, 19};
  int runs = 5;
  std::uint64_t seed = 0;
  AmgOptions amg;
  int max_iters = 100;
  double rtol = 1e-10;
  int nu = 2;
};

/// Two-level SA over a range of cluster sizes: rho, chi and WPD per run.
SweepTable sweep_experiment(const SparseMatrix& a, const SweepOptions& options);

struct TracePoint {
  int step = 0;
  std::string phase;  // "seed", "lloyd" or "rebalance"
  double energy = 0.0;
};

struct SeedDemo {
  std::vector<NodeId> initial_centers;
  std::vector<TracePoint> balanced;
  std::vector<TracePoint> rebalanced;
  double optimal_energy = 0.0;
  std::string csv() const;
};

/// Path of `n_node` unit edges split into `n_cluster` clusters, seeded either
/// with the first n_cluster nodes or at random.
SeedDemo seed_demo(bool worst_case, std::uint64_t seed, NodeId n_node = 30,
                   NodeId n_cluster = 10, int t_max = 100, int rebalance_sweeps = 4);

/// Minimum energy of a path split into k contiguous clusters centered at their
/// midpoints.
double optimal_path_energy(NodeId n_node, NodeId n_cluster);

}  // namespace lloyd
