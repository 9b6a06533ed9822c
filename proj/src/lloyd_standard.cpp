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

#include "lloyd/lloyd_standard.hpp"

#include <string>

namespace lloyd {

NearestSeed bellman_ford(const WeightedGraph& g, std::span<const NodeId> seeds) {
  if (seeds.empty()) throw Error(ErrorCode::kEmptySeedSet, "bellman_ford needs at least one seed");
  const NodeId n = g.num_nodes();
  NearestSeed out;
  out.membership.assign(static_cast<std::size_t>(n), kNoCluster);
  out.distance.assign(static_cast<std::size_t>(n), kInfinity);
  for (std::size_t a = 0; a < seeds.size(); ++a) {
    const NodeId i = seeds[a];
    if (i < 0 || i >= n) throw Error(ErrorCode::kInvalidSeed, "seed out of range");
    if (out.membership[i] != kNoCluster) {
      throw Error(ErrorCode::kInvalidSeed, "duplicate seed " + std::to_string(i + 1));
    }
    out.distance[i] = 0.0;
    out.membership[i] = static_cast<ClusterId>(a);
  }

  bool done = false;
  while (!done) {
    done = true;
    ++out.sweeps;
    for (NodeId i = 0; i < n; ++i) {
      const double di = out.distance[i];
      if (di == kInfinity) continue;
      auto cols = g.neighbors(i);
      auto w = g.weights(i);
      for (std::size_t e = 0; e < cols.size(); ++e) {
        const NodeId j = cols[e];
        if (di + w[e] < out.distance[j]) {
          out.membership[j] = out.membership[i];
          out.distance[j] = di + w[e];
          done = false;
        }
      }
    }
  }

  for (NodeId i = 0; i < n; ++i) {
    if (out.membership[i] == kNoCluster) {
      throw Error(ErrorCode::kUnreachableNode,
                  "node " + std::to_string(i + 1) + " is unreachable from every seed");
    }
  }
  return out;
}

InteriorCenters most_interior_nodes(const WeightedGraph& g, std::span<const ClusterId> membership,
                                    ClusterId num_clusters) {
  const NodeId n = g.num_nodes();
  InteriorCenters out;
  std::vector<char> on_border(static_cast<std::size_t>(n), 0);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : g.neighbors(i)) {
      if (membership[i] != membership[j]) on_border[i] = on_border[j] = 1;
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    if (on_border[i]) out.border.push_back(i);
  }

  out.centers.assign(static_cast<std::size_t>(num_clusters), kNoNode);
  for (NodeId i = 0; i < n; ++i) out.centers[membership[i]] = i;

  if (out.border.empty()) {
    out.no_border = true;
    return out;
  }

  const auto from_border = bellman_ford(g, out.border).distance;
  for (NodeId i = 0; i < n; ++i) {
    NodeId& c = out.centers[membership[i]];
    if (from_border[i] > from_border[c]) c = i;
  }
  return out;
}

StandardLloydResult lloyd_cluster(const WeightedGraph& g, std::span<const NodeId> initial_centers,
                                  int t_max) {
  if (t_max < 1) throw Error(ErrorCode::kInvalidArgument, "t_max must be at least 1");
  StandardLloydResult out;
  out.centers.assign(initial_centers.begin(), initial_centers.end());
  const auto k = static_cast<ClusterId>(out.centers.size());
  while (out.iterations < t_max) {
    auto assigned = bellman_ford(g, out.centers);
    auto recentered = most_interior_nodes(g, assigned.membership, k);
    ++out.iterations;
    const bool same = recentered.centers == out.centers && assigned.membership == out.membership;
    out.membership = std::move(assigned.membership);
    out.distance = std::move(assigned.distance);
    out.centers = std::move(recentered.centers);
    if (same) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace lloyd
