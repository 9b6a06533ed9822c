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

#include "lloyd/graph.hpp"

namespace lloyd {

struct BaselineClustering {
  std::vector<ClusterId> membership;
  std::vector<NodeId> centers;
};

/// Two-pass greedy aggregation. Pass 1 makes a cluster of every node whose
/// whole neighbourhood is still free; pass 2 attaches leftovers to the
/// neighbour with the largest edge weight (lowest cluster index on ties) or
/// starts a new cluster from the leftover and its free neighbours.
BaselineClustering greedy_cluster(const WeightedGraph& g);

/// Sequential distance-2 maximal independent set, ascending node order,
/// hop distance.
std::vector<NodeId> mis2(const WeightedGraph& g);

BaselineClustering mis2_cluster(const WeightedGraph& g);

/// Clusters around the given centers. Throws kUnassignedNode if two rounds of
/// propagation leave a node without a cluster.
BaselineClustering mis2_cluster(const WeightedGraph& g, std::span<const NodeId> centers);

}  // namespace lloyd
