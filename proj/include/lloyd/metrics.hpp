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
#include <span>
#include <vector>

#include "lloyd/clustering.hpp"
#include "lloyd/graph.hpp"

namespace lloyd {

/// Sum of squared distances. Throws kInfiniteDistance on an infinite entry.
double energy_h(std::span<const double> distance);

/// Size-penalty coefficient (Delta_min / N)^2, Delta_min being the smallest gap
/// between distinct edge weights. With fewer than two distinct weights,
/// Delta_min falls back to min_weight / N.
double compute_delta(const WeightedGraph& g);

/// energy_h(distance) + delta * sum(size^2)
double energy_h_delta(std::span<const double> distance, std::span<const std::int32_t> size,
                      double delta);

struct ClusterStats {
  std::vector<double> diameter;
  std::vector<std::int32_t> size;
  std::int32_t zero_diameter_count = 0;
  double diameter_std = 0.0;  // population standard deviations
  double size_std = 0.0;
  double energy = 0.0;
  double energy_delta = 0.0;
  double delta = 0.0;
};

/// Statistics of a quiescent balanced state; energies use state.distance.
ClusterStats cluster_stats(const WeightedGraph& g, const ClusterState& st,
                           const IntraClusterPaths& paths);

/// Statistics of an arbitrary clustering; distances are measured inside each
/// cluster from its center. Throws kDisconnectedCluster.
ClusterStats cluster_stats(const WeightedGraph& g, std::span<const ClusterId> membership,
                           std::span<const NodeId> centers);

/// Distances from each node to its own center along paths inside the cluster.
std::vector<double> center_distances(const IntraClusterPaths& paths,
                                     std::span<const ClusterId> membership,
                                     std::span<const NodeId> centers);

}  // namespace lloyd
