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

#include "lloyd/clustering.hpp"
#include "lloyd/graph.hpp"

namespace lloyd {

struct BalancedOptions {
  int t_max = 5;
  int t_bf_max = 0;  // full edge sweeps; 0 selects num_nodes()
  double tol = 1e-12;
  bool tiebreak = true;
  TraceHook trace;
};

/// Fresh state: every center owns itself at distance zero, all other nodes
/// unassigned. Throws kDuplicateCenter / kInvalidSeed.
ClusterState balanced_initialization(std::span<const NodeId> centers, NodeId n_node);

struct SweepReport {
  int sweeps = 0;
  bool changed = false;
  bool cap_reached = false;
};

/// Size-aware Bellman-Ford. Besides strict improvements, a node that is
/// equally close to a neighbouring cluster moves there when that cluster is
/// smaller by at least two and the node is no other node's predecessor.
/// Updates the state in place.
SweepReport balanced_bellman_ford(const WeightedGraph& g, ClusterState& st, int t_bf_max,
                                  double tol = 1e-12, bool tiebreak = true,
                                  const TraceHook& trace = {});

/// All-pairs shortest paths inside each cluster (Floyd-Warshall on the induced
/// subgraph). Throws kDisconnectedCluster if some pair is unreachable.
IntraClusterPaths clustered_floyd_warshall(const WeightedGraph& g,
                                           std::span<const ClusterId> membership,
                                           ClusterId num_clusters);

/// Moves each center to the node with the strictly smallest sum of squared
/// in-cluster distances; on a move, d/p/n of that cluster are reloaded from the
/// new center's row. Returns whether any center moved.
bool center_nodes(ClusterState& st, const IntraClusterPaths& paths);

struct BalancedResult {
  ClusterState state;
  IntraClusterPaths paths;
  int iterations = 0;
  bool converged = false;
  bool cap_reached = false;  // some Bellman-Ford call stopped at t_bf_max
};

BalancedResult balanced_lloyd_cluster(const WeightedGraph& g, std::span<const NodeId> initial_centers,
                                      const BalancedOptions& options = {});

namespace detail {
bool approximately_equal(double lhs, double rhs, double tol);
}

}  // namespace lloyd
