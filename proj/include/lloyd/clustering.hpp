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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lloyd/graph.hpp"

namespace lloyd {

/// Per-node and per-cluster bookkeeping shared by the balanced algorithms.
///
/// membership[i]       cluster of node i, or kNoCluster
/// distance[i]         path length from the cluster center (kInfinity if unassigned)
/// predecessor[i]      previous node on that path (the center points at itself)
/// predecessor_count[i] number of nodes whose predecessor is i
/// centers[a], size[a] center node and node count of cluster a
struct ClusterState {
  std::vector<ClusterId> membership;
  std::vector<NodeId> centers;
  std::vector<double> distance;
  std::vector<NodeId> predecessor;
  std::vector<std::int32_t> predecessor_count;
  std::vector<std::int32_t> size;

  NodeId num_nodes() const noexcept { return static_cast<NodeId>(membership.size()); }
  ClusterId num_clusters() const noexcept { return static_cast<ClusterId>(centers.size()); }

  bool operator==(const ClusterState&) const = default;
};

/// Dense all-pairs tables for every cluster, indexed by position in the
/// cluster's node list.
struct IntraClusterPaths {
  struct Block {
    std::vector<NodeId> nodes;
    std::vector<double> dist;  // row-major nodes.size()^2, dist[i*s + j] is i -> j
    std::vector<NodeId> pred;  // predecessor of j on the path i -> j, or kNoNode

    std::size_t order() const noexcept { return nodes.size(); }
    double d(std::size_t i, std::size_t j) const { return dist[i * nodes.size() + j]; }
    NodeId p(std::size_t i, std::size_t j) const { return pred[i * nodes.size() + j]; }
  };

  std::vector<Block> clusters;
  std::vector<std::int32_t> local_index;  // position of each node in its block

  /// Within-cluster distance i -> j; both nodes must lie in cluster a.
  double distance(ClusterId a, NodeId i, NodeId j) const {
    return clusters[a].d(local_index[i], local_index[j]);
  }
};

/// Node lists V_a in ascending node order.
std::vector<std::vector<NodeId>> cluster_nodes(std::span<const ClusterId> membership,
                                               ClusterId num_clusters);

enum class ClusteringProperty { kNone, kCovering, kConnected, kCentered };

struct ClusteringCheck {
  bool valid = true;
  ClusteringProperty failed = ClusteringProperty::kNone;
  ClusterId cluster = kNoCluster;
  NodeId node = kNoNode;
  std::string message;

  explicit operator bool() const noexcept { return valid; }
};

/// Checks that (membership, centers) is a non-overlapping covering with
/// connected clusters, each holding its own center. Connectivity follows edges
/// both ways when the graph pattern is symmetric and requires strong
/// connectivity otherwise.
ClusteringCheck validate_clustering(const WeightedGraph& g, std::span<const ClusterId> membership,
                                    std::span<const NodeId> centers);

enum class TraceEvent {
  kBellmanFordSweep,  // after each full edge sweep of the balanced Bellman-Ford
  kCenterUpdate,      // after center_nodes
  kLloydIteration,    // after one complete assign/recenter iteration
  kRebalance,         // centers chosen by rebalance, before re-clustering
};

using TraceHook = std::function<void(TraceEvent, const ClusterState&)>;

}  // namespace lloyd
