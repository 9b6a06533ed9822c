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

#include "lloyd/methods.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "lloyd/baselines.hpp"
#include "lloyd/lloyd_standard.hpp"
#include "lloyd/rebalance.hpp"

namespace lloyd {

const char* to_string(ClusterMethod method) noexcept {
  switch (method) {
    case ClusterMethod::kStandard: return "standard";
    case ClusterMethod::kBalanced: return "balanced";
    case ClusterMethod::kRebalanced: return "rebalanced";
    case ClusterMethod::kGreedy: return "greedy";
    case ClusterMethod::kMis2: return "mis2";
  }
  return "unknown";
}

std::optional<ClusterMethod> parse_cluster_method(std::string_view name) {
  for (auto m : {ClusterMethod::kStandard, ClusterMethod::kBalanced, ClusterMethod::kRebalanced,
                 ClusterMethod::kGreedy, ClusterMethod::kMis2}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

MethodResult run_cluster_method(const WeightedGraph& g, ClusterMethod method,
                                std::span<const NodeId> seeds, const MethodOptions& options) {
  MethodResult out;
  RebalancedOptions balanced;
  balanced.t_max = options.t_max;
  balanced.t_bf_max = options.t_bf_max;
  balanced.tol = options.tol;
  balanced.tiebreak = options.tiebreak;
  balanced.rebalance_sweeps = options.rebalance_sweeps;
  balanced.trace = options.trace;

  switch (method) {
    case ClusterMethod::kStandard: {
      auto r = lloyd_cluster(g, seeds, options.t_max);
      out.membership = std::move(r.membership);
      out.centers = std::move(r.centers);
      out.iterations = r.iterations;
      out.converged = r.converged;
      break;
    }
    case ClusterMethod::kBalanced: {
      auto r = balanced_lloyd_cluster(g, seeds, balanced);
      out.membership = std::move(r.state.membership);
      out.centers = std::move(r.state.centers);
      out.iterations = r.iterations;
      out.converged = r.converged;
      out.cap_reached = r.cap_reached;
      break;
    }
    case ClusterMethod::kRebalanced: {
      auto r = rebalanced_lloyd_cluster(g, seeds, balanced);
      out.membership = std::move(r.state.membership);
      out.centers = std::move(r.state.centers);
      out.iterations = r.iterations;
      out.rebalance_sweeps = r.rebalance_sweeps;
      out.converged = r.converged;
      out.cap_reached = r.cap_reached;
      break;
    }
    case ClusterMethod::kGreedy: {
      auto r = greedy_cluster(g);
      out.membership = std::move(r.membership);
      out.centers = std::move(r.centers);
      break;
    }
    case ClusterMethod::kMis2: {
      auto r = mis2_cluster(g);
      out.membership = std::move(r.membership);
      out.centers = std::move(r.centers);
      break;
    }
  }
  return out;
}

std::vector<NodeId> random_centers(NodeId n_node, NodeId k, std::uint64_t seed,
                                   std::uint64_t stream) {
  if (k < 1 || k > n_node) {
    throw Error(ErrorCode::kInvalidArgument, "cluster count must lie in [1, num_nodes]");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<NodeId> all(static_cast<std::size_t>(n_node));
  std::iota(all.begin(), all.end(), 0);
  std::vector<NodeId> picked;
  picked.reserve(static_cast<std::size_t>(k));
  std::sample(all.begin(), all.end(), std::back_inserter(picked), k, rng);
  return picked;
}

}  // namespace lloyd
