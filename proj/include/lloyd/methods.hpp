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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lloyd/clustering.hpp"
#include "lloyd/graph.hpp"

namespace lloyd {

enum class ClusterMethod { kStandard, kBalanced, kRebalanced, kGreedy, kMis2 };

const char* to_string(ClusterMethod method) noexcept;
std::optional<ClusterMethod> parse_cluster_method(std::string_view name);

/// Greedy and MIS(2) choose their own centers and cluster count.
constexpr bool takes_seeds(ClusterMethod method) noexcept {
  return method == ClusterMethod::kStandard || method == ClusterMethod::kBalanced ||
         method == ClusterMethod::kRebalanced;
}

struct MethodOptions {
  int t_max = 5;
  int t_bf_max = 0;  // 0: num_nodes()
  double tol = 1e-12;
  bool tiebreak = true;
  int rebalance_sweeps = 4;
  TraceHook trace;
};

struct MethodResult {
  std::vector<ClusterId> membership;
  std::vector<NodeId> centers;
  int iterations = 0;
  int rebalance_sweeps = 0;
  bool converged = true;
  bool cap_reached = false;
};

/// Runs one clustering algorithm. `seeds` is ignored by greedy and MIS(2).
MethodResult run_cluster_method(const WeightedGraph& g, ClusterMethod method,
                                std::span<const NodeId> seeds, const MethodOptions& options = {});

/// k distinct nodes drawn uniformly without replacement, in ascending order.
/// The stream is fully determined by (seed, stream).
std::vector<NodeId> random_centers(NodeId n_node, NodeId k, std::uint64_t seed,
                                   std::uint64_t stream = 0);

}  // namespace lloyd
