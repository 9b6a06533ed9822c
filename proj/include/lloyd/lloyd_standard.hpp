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

#include <span>
#include <vector>

#include "lloyd/clustering.hpp"
#include "lloyd/graph.hpp"

namespace lloyd {

struct NearestSeed {
  std::vector<ClusterId> membership;  // index into the seed list
  std::vector<double> distance;
  int sweeps = 0;
};

/// Multi-source Bellman-Ford. Every seed starts at distance zero; edges are
/// swept in ascending (row, storage) order and relaxed on strict improvement
/// only, so the seed that reaches a node first keeps it on ties.
/// Throws kEmptySeedSet, kInvalidSeed, or kUnreachableNode.
NearestSeed bellman_ford(const WeightedGraph& g, std::span<const NodeId> seeds);

struct InteriorCenters {
  std::vector<NodeId> centers;
  std::vector<NodeId> border;  // ascending
  bool no_border = false;      // single cluster: highest-index nodes returned
};

/// Picks, for each cluster, the node farthest from the set of border nodes
/// (endpoints of edges that cross clusters).
InteriorCenters most_interior_nodes(const WeightedGraph& g, std::span<const ClusterId> membership,
                                    ClusterId num_clusters);

struct StandardLloydResult {
  std::vector<ClusterId> membership;
  std::vector<NodeId> centers;
  std::vector<double> distance;  // from the last assignment step
  int iterations = 0;
  bool converged = false;
};

StandardLloydResult lloyd_cluster(const WeightedGraph& g, std::span<const NodeId> initial_centers,
                                  int t_max);

}  // namespace lloyd
