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

#include "lloyd/clustering.hpp"

#include <deque>

namespace lloyd {

std::vector<std::vector<NodeId>> cluster_nodes(std::span<const ClusterId> membership,
                                               ClusterId num_clusters) {
  std::vector<std::vector<NodeId>> nodes(static_cast<std::size_t>(num_clusters));
  for (std::size_t i = 0; i < membership.size(); ++i) {
    const ClusterId a = membership[i];
    if (a >= 0 && a < num_clusters) nodes[a].push_back(static_cast<NodeId>(i));
  }
  return nodes;
}

namespace {

// Marks every node of cluster a reachable from start, walking out-edges or
// in-edges.
std::size_t reach_within(const WeightedGraph& g, std::span<const ClusterId> membership,
                         ClusterId a, NodeId start, bool incoming, std::vector<char>& seen) {
  std::deque<NodeId> queue{start};
  seen[start] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    const NodeId i = queue.front();
    queue.pop_front();
    for (NodeId j : incoming ? g.in_neighbors(i) : g.neighbors(i)) {
      if (membership[j] == a && !seen[j]) {
        seen[j] = 1;
        ++count;
        queue.push_back(j);
      }
    }
  }
  return count;
}

}  // namespace

ClusteringCheck validate_clustering(const WeightedGraph& g, std::span<const ClusterId> membership,
                                    std::span<const NodeId> centers) {
  ClusteringCheck check;
  auto fail = [&](ClusteringProperty p, ClusterId a, NodeId i, std::string msg) {
    check.valid = false;
    check.failed = p;
    check.cluster = a;
    check.node = i;
    check.message = std::move(msg);
    return check;
  };

  const NodeId n = g.num_nodes();
  const auto k = static_cast<ClusterId>(centers.size());
  if (static_cast<NodeId>(membership.size()) != n) {
    return fail(ClusteringProperty::kCovering, kNoCluster, kNoNode,
                "membership length differs from node count");
  }
  for (NodeId i = 0; i < n; ++i) {
    if (membership[i] < 0 || membership[i] >= k) {
      return fail(ClusteringProperty::kCovering, membership[i], i,
                  "node " + std::to_string(i + 1) + " has no valid cluster");
    }
  }

  auto nodes = cluster_nodes(membership, k);
  for (ClusterId a = 0; a < k; ++a) {
    const NodeId c = centers[a];
    if (c < 0 || c >= n || membership[c] != a) {
      return fail(ClusteringProperty::kCentered, a, c,
                  "center of cluster " + std::to_string(a + 1) + " lies outside the cluster");
    }
  }

  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (ClusterId a = 0; a < k; ++a) {
    const auto& v = nodes[a];
    const NodeId c = centers[a];
    bool connected = true;
    if (g.symmetric_pattern()) {
      connected = reach_within(g, membership, a, c, false, seen) == v.size();
    } else {
      connected = reach_within(g, membership, a, c, false, seen) == v.size();
      for (NodeId i : v) seen[i] = 0;
      connected = connected && reach_within(g, membership, a, c, true, seen) == v.size();
    }
    for (NodeId i : v) seen[i] = 0;
    if (!connected) {
      return fail(ClusteringProperty::kConnected, a, c,
                  "cluster " + std::to_string(a + 1) + " is not connected");
    }
  }
  return check;
}

}  // namespace lloyd
