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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "lloyd/clustering.hpp"
#include "lloyd/graph.hpp"

namespace oracle {

using lloyd::ClusterId;
using lloyd::NodeId;
using lloyd::WeightedGraph;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Multi-source Dijkstra; `start[i]` is the initial label (kInf for non-sources).
/// `allowed(i)` restricts the nodes that may be entered.
template <class Allowed>
std::vector<double> dijkstra(const WeightedGraph& g, std::vector<double> start, Allowed allowed) {
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (start[i] < kInf) queue.push({start[i], i});
  }
  while (!queue.empty()) {
    auto [d, i] = queue.top();
    queue.pop();
    if (d > start[i]) continue;
    auto nbr = g.neighbors(i);
    auto w = g.weights(i);
    for (std::size_t e = 0; e < nbr.size(); ++e) {
      const NodeId j = nbr[e];
      if (!allowed(j)) continue;
      if (d + w[e] < start[j]) {
        start[j] = d + w[e];
        queue.push({start[j], j});
      }
    }
  }
  return start;
}

inline std::vector<double> nearest_seed_distance(const WeightedGraph& g,
                                                 const std::vector<NodeId>& seeds) {
  std::vector<double> start(static_cast<std::size_t>(g.num_nodes()), kInf);
  for (NodeId s : seeds) start[s] = 0.0;
  return dijkstra(g, std::move(start), [](NodeId) { return true; });
}

/// Distances from `source` travelling only through nodes of cluster `a`.
inline std::vector<double> within_cluster(const WeightedGraph& g,
                                          const std::vector<ClusterId>& m, ClusterId a,
                                          NodeId source) {
  std::vector<double> start(m.size(), kInf);
  start[source] = 0.0;
  return dijkstra(g, std::move(start), [&](NodeId j) { return m[j] == a; });
}

struct Split {
  double current = 0.0;
  double best = kInf;
};

/// Every ordered center pair of cluster a, distances from Dijkstra.
inline Split exhaustive_split(const WeightedGraph& g, const std::vector<ClusterId>& m,
                              const std::vector<double>& d, ClusterId a) {
  std::vector<NodeId> nodes;
  for (NodeId i = 0; i < static_cast<NodeId>(m.size()); ++i) {
    if (m[i] == a) nodes.push_back(i);
  }
  std::vector<std::vector<double>> dist;
  for (NodeId s : nodes) dist.push_back(within_cluster(g, m, a, s));
  Split out;
  for (NodeId i : nodes) out.current += d[i] * d[i];
  for (std::size_t x = 0; x < nodes.size(); ++x) {
    for (std::size_t y = 0; y < nodes.size(); ++y) {
      double e = 0.0;
      for (NodeId v : nodes) {
        const double r = std::min(dist[x][v], dist[y][v]);
        e += r * r;
      }
      out.best = std::min(out.best, e);
    }
  }
  return out;
}

/// Energy of a clustering restricted to one cluster with the given center.
inline double cluster_energy(const WeightedGraph& g, const std::vector<ClusterId>& m,
                             ClusterId a, NodeId center) {
  const auto dist = within_cluster(g, m, a, center);
  double e = 0.0;
  for (NodeId i = 0; i < static_cast<NodeId>(m.size()); ++i) {
    if (m[i] == a) e += dist[i] * dist[i];
  }
  return e;
}

/// Each node of cluster a reattaches through its cheapest route that enters a
/// once from an outside node k (cost d_k + W_kj) and then stays inside a.
inline double elimination_penalty(const WeightedGraph& g, const std::vector<ClusterId>& m,
                                  const std::vector<double>& d, ClusterId a) {
  std::vector<double> start(m.size(), kInf);
  for (NodeId k = 0; k < static_cast<NodeId>(m.size()); ++k) {
    if (m[k] == a) continue;
    auto nbr = g.neighbors(k);
    auto w = g.weights(k);
    for (std::size_t e = 0; e < nbr.size(); ++e) {
      if (m[nbr[e]] == a) start[nbr[e]] = std::min(start[nbr[e]], d[k] + w[e]);
    }
  }
  const auto reach = dijkstra(g, std::move(start), [&](NodeId j) { return m[j] == a; });
  double total = 0.0;
  bool any = false;
  for (NodeId i = 0; i < static_cast<NodeId>(m.size()); ++i) {
    if (m[i] != a) continue;
    if (reach[i] == kInf) return kInf;
    any = true;
    total += reach[i] * reach[i] - d[i] * d[i];
  }
  return any ? total : 0.0;
}

/// Connected symmetric graph: a random spanning tree plus extra edges, integer
/// weights in [1, max_weight].
inline WeightedGraph random_connected_graph(NodeId n, double extra_fraction, int max_weight,
                                            std::mt19937_64& rng) {
  std::vector<WeightedGraph::Edge> edges;
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  auto add = [&](NodeId i, NodeId j) {
    if (i == j || seen[i][j]) return;
    seen[i][j] = seen[j][i] = true;
    const double w = weight(rng);
    edges.push_back({i, j, w});
    edges.push_back({j, i, w});
  };
  for (NodeId i = 1; i < n; ++i) {
    std::uniform_int_distribution<NodeId> parent(0, i - 1);
    add(i, parent(rng));
  }
  const auto extra = static_cast<int>(extra_fraction * n);
  std::uniform_int_distribution<NodeId> any(0, n - 1);
  for (int e = 0; e < extra; ++e) add(any(rng), any(rng));
  std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
    return std::pair(x.from, x.to) < std::pair(y.from, y.to);
  });
  return WeightedGraph::from_edges(n, edges);
}

/// Predecessor chain from i reaches its center inside its own cluster.
inline bool chain_reaches_center(const lloyd::ClusterState& st, NodeId i) {
  const ClusterId a = st.membership[i];
  NodeId v = i;
  for (NodeId steps = 0; steps <= st.num_nodes(); ++steps) {
    if (st.membership[v] != a) return false;
    if (v == st.centers[a]) return true;
    v = st.predecessor[v];
    if (v < 0) return false;
  }
  return false;
}

}  // namespace oracle
