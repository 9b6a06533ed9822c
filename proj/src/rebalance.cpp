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

#include "lloyd/rebalance.hpp"

#include <algorithm>
#include <numeric>

namespace lloyd {

std::vector<double> elimination_penalty(const WeightedGraph& g, const ClusterState& st,
                                        const IntraClusterPaths& paths) {
  const auto& m = st.membership;
  const auto& d = st.distance;
  std::vector<double> penalty(static_cast<std::size_t>(st.num_clusters()), 0.0);

  // Cheapest entry cost into each node j from outside its cluster.
  std::vector<double> entry(m.size(), kInfinity);
  for (std::size_t j = 0; j < m.size(); ++j) {
    auto sources = g.in_neighbors(static_cast<NodeId>(j));
    auto w = g.in_weights(static_cast<NodeId>(j));
    for (std::size_t e = 0; e < sources.size(); ++e) {
      if (m[sources[e]] != m[j]) entry[j] = std::min(entry[j], d[sources[e]] + w[e]);
    }
  }

  for (ClusterId a = 0; a < st.num_clusters(); ++a) {
    const auto& block = paths.clusters[a];
    const std::size_t s = block.order();
    double total = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      double best = kInfinity;
      for (std::size_t j = 0; j < s; ++j) {
        best = std::min(best, entry[block.nodes[j]] + block.d(j, i));
      }
      total += best * best;
    }
    for (NodeId i : block.nodes) total -= d[i] * d[i];
    penalty[a] = total;
  }
  return penalty;
}

SplitProposal split_improvement(const ClusterState& st, const IntraClusterPaths& paths) {
  const auto k = static_cast<std::size_t>(st.num_clusters());
  SplitProposal out;
  out.improvement.assign(k, 0.0);
  out.first.assign(k, kNoNode);
  out.second.assign(k, kNoNode);
  for (std::size_t a = 0; a < k; ++a) {
    const auto& block = paths.clusters[a];
    const std::size_t s = block.order();
    double best = kInfinity;
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        double energy = 0.0;
        for (std::size_t v = 0; v < s && energy < best; ++v) {
          const double r = std::min(block.d(i, v), block.d(j, v));
          energy += r * r;
        }
        if (energy < best) {
          best = energy;
          out.first[a] = block.nodes[i];
          out.second[a] = block.nodes[j];
        }
      }
    }
    double current = 0.0;
    for (NodeId i : block.nodes) current += st.distance[i] * st.distance[i];
    out.improvement[a] = s > 0 ? current - best : 0.0;
  }
  return out;
}

void mark_unavailable(ClusterId a, std::span<const ClusterId> membership,
                      std::span<const NodeId> cluster_nodes, const WeightedGraph& g,
                      std::vector<char>& modifiable) {
  modifiable[a] = 0;
  for (NodeId i : cluster_nodes) {
    for (NodeId j : g.neighbors(i)) {
      if (membership[j] != kNoCluster) modifiable[membership[j]] = 0;
    }
  }
}

namespace {

std::vector<ClusterId> argsort(const std::vector<double>& values) {
  std::vector<ClusterId> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](ClusterId x, ClusterId y) { return values[x] < values[y]; });
  return order;
}

}  // namespace

RebalanceResult rebalance(const WeightedGraph& g, const ClusterState& st,
                          const IntraClusterPaths& paths) {
  RebalanceResult out;
  out.centers = st.centers;
  out.penalty = elimination_penalty(g, st, paths);
  out.split = split_improvement(st, paths);

  const auto k = static_cast<std::ptrdiff_t>(st.num_clusters());
  std::vector<char> modifiable(static_cast<std::size_t>(k), 1);
  const auto by_penalty = argsort(out.penalty);
  const auto by_improvement = argsort(out.split.improvement);

  std::ptrdiff_t il = 0;
  std::ptrdiff_t is = k - 1;
  while (il < k && is >= 0) {
    const ClusterId al = by_penalty[il];
    const ClusterId as = by_improvement[is];
    if (!modifiable[al] || al == as) {
      ++il;
      continue;
    }
    // A split that reuses one node for both halves adds no center.
    if (!modifiable[as] || out.split.first[as] == out.split.second[as]) {
      --is;
      continue;
    }
    if (out.penalty[al] >= out.split.improvement[as]) break;

    mark_unavailable(al, st.membership, paths.clusters[al].nodes, g, modifiable);
    mark_unavailable(as, st.membership, paths.clusters[as].nodes, g, modifiable);
    out.centers[al] = out.split.first[as];
    out.centers[as] = out.split.second[as];
    out.accepted.push_back({al, as, out.penalty[al], out.split.improvement[as]});
  }
  return out;
}

RebalancedResult rebalanced_lloyd_cluster(const WeightedGraph& g,
                                          std::span<const NodeId> initial_centers,
                                          const RebalancedOptions& options) {
  RebalancedResult out;
  static_cast<BalancedResult&>(out) = balanced_lloyd_cluster(g, initial_centers, options);
  bool cap_reached = out.cap_reached;
  for (int t = 0; t < options.rebalance_sweeps; ++t) {
    if (out.state.num_clusters() < 2) break;
    auto step = rebalance(g, out.state, out.paths);
    if (step.centers == out.state.centers) break;
    if (options.trace) {
      ClusterState proposed = out.state;
      proposed.centers = step.centers;
      options.trace(TraceEvent::kRebalance, proposed);
    }
    out.steps.insert(out.steps.end(), step.accepted.begin(), step.accepted.end());
    ++out.rebalance_sweeps;
    static_cast<BalancedResult&>(out) = balanced_lloyd_cluster(g, step.centers, options);
    cap_reached = cap_reached || out.cap_reached;
  }
  out.cap_reached = cap_reached;
  return out;
}

}  // namespace lloyd
