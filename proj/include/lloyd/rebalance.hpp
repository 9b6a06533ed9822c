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
#include "lloyd/lloyd_balanced.hpp"

namespace lloyd {

/// Energy increase if each cluster were dissolved into its neighbours: every
/// node rejoins through the cheapest edge k -> j leaving the cluster,
/// d_k + W(k, j) + D(j, i). Clusters with no outside neighbour get kInfinity.
std::vector<double> elimination_penalty(const WeightedGraph& g, const ClusterState& st,
                                        const IntraClusterPaths& paths);

struct SplitProposal {
  std::vector<double> improvement;
  std::vector<NodeId> first;   // c1
  std::vector<NodeId> second;  // c2
};

/// Best two-center split of each cluster by exhaustive search over ordered
/// center pairs; improvement = current energy - split energy.
SplitProposal split_improvement(const ClusterState& st, const IntraClusterPaths& paths);

/// Clears modifiable[a] and the flag of every cluster touching cluster a.
void mark_unavailable(ClusterId a, std::span<const ClusterId> membership,
                      std::span<const NodeId> cluster_nodes, const WeightedGraph& g,
                      std::vector<char>& modifiable);

struct RebalanceStep {
  ClusterId eliminated;
  ClusterId split;
  double penalty;
  double improvement;
};

struct RebalanceResult {
  std::vector<NodeId> centers;
  std::vector<RebalanceStep> accepted;
  std::vector<double> penalty;
  SplitProposal split;
};

/// Pairs the cheapest eliminations with the most profitable splits while the
/// pair lowers the energy. Only centers are returned; memberships are rebuilt
/// by the next balanced clustering.
RebalanceResult rebalance(const WeightedGraph& g, const ClusterState& st,
                          const IntraClusterPaths& paths);

struct RebalancedOptions : BalancedOptions {
  int rebalance_sweeps = 4;
};

struct RebalancedResult : BalancedResult {
  int rebalance_sweeps = 0;  // rebalance calls that changed the centers
  std::vector<RebalanceStep> steps;
};

RebalancedResult rebalanced_lloyd_cluster(const WeightedGraph& g,
                                          std::span<const NodeId> initial_centers,
                                          const RebalancedOptions& options = {});

}  // namespace lloyd
