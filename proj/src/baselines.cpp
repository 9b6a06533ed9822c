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

#include "lloyd/baselines.hpp"

#include <string>

namespace lloyd {

BaselineClustering greedy_cluster(const WeightedGraph& g) {
  const NodeId n = g.num_nodes();
  BaselineClustering out;
  auto& m = out.membership;
  m.assign(static_cast<std::size_t>(n), kNoCluster);

  for (NodeId i = 0; i < n; ++i) {
    if (m[i] != kNoCluster) continue;
    bool free = true;
    for (NodeId j : g.neighbors(i)) free = free && m[j] == kNoCluster;
    if (!free) continue;
    const auto a = static_cast<ClusterId>(out.centers.size());
    m[i] = a;
    for (NodeId j : g.neighbors(i)) m[j] = a;
    out.centers.push_back(i);
  }

  for (NodeId i = 0; i < n; ++i) {
    if (m[i] != kNoCluster) continue;
    auto cols = g.neighbors(i);
    auto w = g.weights(i);
    ClusterId join = kNoCluster;
    double heaviest = 0.0;
    for (std::size_t e = 0; e < cols.size(); ++e) {
      const ClusterId b = m[cols[e]];
      if (b == kNoCluster) continue;
      if (join == kNoCluster || w[e] > heaviest || (w[e] == heaviest && b < join)) {
        join = b;
        heaviest = w[e];
      }
    }
    if (join != kNoCluster) {
      m[i] = join;
      continue;
    }
    const auto a = static_cast<ClusterId>(out.centers.size());
    m[i] = a;
    for (NodeId j : cols) {
      if (m[j] == kNoCluster) m[j] = a;
    }
    out.centers.push_back(i);
  }
  return out;
}

std::vector<NodeId> mis2(const WeightedGraph& g) {
  const NodeId n = g.num_nodes();
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> selected;
  for (NodeId i = 0; i < n; ++i) {
    if (blocked[i]) continue;
    selected.push_back(i);
    blocked[i] = 1;
    // Hop distance, so walk edges in both directions.
    for (auto hop1 : {g.neighbors(i), g.in_neighbors(i)}) {
      for (NodeId j : hop1) {
        blocked[j] = 1;
        for (auto hop2 : {g.neighbors(j), g.in_neighbors(j)}) {
          for (NodeId k : hop2) blocked[k] = 1;
        }
      }
    }
  }
  return selected;
}

BaselineClustering mis2_cluster(const WeightedGraph& g) { return mis2_cluster(g, mis2(g)); }

BaselineClustering mis2_cluster(const WeightedGraph& g, std::span<const NodeId> centers) {
  const NodeId n = g.num_nodes();
  BaselineClustering out;
  out.centers.assign(centers.begin(), centers.end());
  auto& m = out.membership;
  m.assign(static_cast<std::size_t>(n), kNoCluster);

  for (std::size_t a = 0; a < centers.size(); ++a) {
    const NodeId i = centers[a];
    m[i] = static_cast<ClusterId>(a);
    for (NodeId j : g.neighbors(i)) m[j] = static_cast<ClusterId>(a);
  }

  const std::vector<ClusterId> first_pass = m;
  for (NodeId i = 0; i < n; ++i) {
    if (first_pass[i] == kNoCluster) continue;
    for (NodeId j : g.neighbors(i)) {
      if (m[j] == kNoCluster) m[j] = first_pass[i];
    }
  }

  for (NodeId i = 0; i < n; ++i) {
    if (m[i] == kNoCluster) {
      throw Error(ErrorCode::kUnassignedNode,
                  "node " + std::to_string(i + 1) + " is more than two hops from every center");
    }
  }
  return out;
}

}  // namespace lloyd
