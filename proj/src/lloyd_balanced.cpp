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

#include "lloyd/lloyd_balanced.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lloyd {

namespace detail {

bool approximately_equal(double lhs, double rhs, double tol) {
  if (lhs == rhs) return true;
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
  return std::abs(lhs - rhs) <= tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

}  // namespace detail

ClusterState balanced_initialization(std::span<const NodeId> centers, NodeId n_node) {
  if (centers.empty()) throw Error(ErrorCode::kEmptySeedSet, "no centers given");
  const auto n = static_cast<std::size_t>(n_node);
  ClusterState st;
  st.membership.assign(n, kNoCluster);
  st.distance.assign(n, kInfinity);
  st.predecessor.assign(n, kNoNode);
  st.predecessor_count.assign(n, 0);
  st.size.assign(centers.size(), 1);
  st.centers.assign(centers.begin(), centers.end());
  for (std::size_t a = 0; a < centers.size(); ++a) {
    const NodeId i = centers[a];
    if (i < 0 || i >= n_node) throw Error(ErrorCode::kInvalidSeed, "center out of range");
    if (st.membership[i] != kNoCluster) {
      throw Error(ErrorCode::kDuplicateCenter, "node " + std::to_string(i + 1) + " is listed twice");
    }
    st.distance[i] = 0.0;
    st.membership[i] = static_cast<ClusterId>(a);
    st.predecessor[i] = i;
    st.predecessor_count[i] = 1;
  }
  return st;
}

SweepReport balanced_bellman_ford(const WeightedGraph& g, ClusterState& st, int t_bf_max, double tol,
                                  bool tiebreak, const TraceHook& trace) {
  if (t_bf_max < 1) throw Error(ErrorCode::kInvalidArgument, "t_bf_max must be at least 1");
  const NodeId n = g.num_nodes();
  auto& m = st.membership;
  auto& d = st.distance;
  auto& p = st.predecessor;
  auto& count = st.predecessor_count;
  auto& s = st.size;

  SweepReport report;
  bool done = false;
  while (!done && report.sweeps < t_bf_max) {
    done = true;
    for (NodeId i = 0; i < n; ++i) {
      if (d[i] == kInfinity) continue;  // unassigned nodes never push
      auto cols = g.neighbors(i);
      auto w = g.weights(i);
      for (std::size_t e = 0; e < cols.size(); ++e) {
        const NodeId j = cols[e];
        const double via_i = d[i] + w[e];
        const std::int32_t size_i = m[i] != kNoCluster ? s[m[i]] : 0;
        const std::int32_t size_j = m[j] != kNoCluster ? s[m[j]] : 0;

        bool move = false;
        if (detail::approximately_equal(via_i, d[j], tol)) {
          move = tiebreak && size_i + 1 < size_j && count[j] == 0;
        } else {
          move = via_i < d[j];
        }
        if (!move) continue;

        if (m[i] != m[j]) {
          s[m[i]] = size_i + 1;
          if (m[j] != kNoCluster) s[m[j]] = size_j - 1;
        }
        m[j] = m[i];
        d[j] = via_i;
        ++count[i];
        if (p[j] != kNoNode) --count[p[j]];
        p[j] = i;
        done = false;
      }
    }
    ++report.sweeps;
    if (!done) report.changed = true;
    if (trace) trace(TraceEvent::kBellmanFordSweep, st);
  }
  report.cap_reached = !done;
  return report;
}

IntraClusterPaths clustered_floyd_warshall(const WeightedGraph& g,
                                           std::span<const ClusterId> membership,
                                           ClusterId num_clusters) {
  IntraClusterPaths paths;
  paths.local_index.assign(membership.size(), -1);
  auto nodes = cluster_nodes(membership, num_clusters);
  paths.clusters.resize(nodes.size());

  for (ClusterId a = 0; a < num_clusters; ++a) {
    auto& block = paths.clusters[a];
    block.nodes = std::move(nodes[a]);
    const std::size_t s = block.nodes.size();
    for (std::size_t li = 0; li < s; ++li) paths.local_index[block.nodes[li]] = static_cast<std::int32_t>(li);

    block.dist.assign(s * s, kInfinity);
    block.pred.assign(s * s, kNoNode);
    for (std::size_t li = 0; li < s; ++li) {
      const NodeId i = block.nodes[li];
      auto cols = g.neighbors(i);
      auto w = g.weights(i);
      for (std::size_t e = 0; e < cols.size(); ++e) {
        if (membership[cols[e]] != a) continue;
        const std::size_t lj = paths.local_index[cols[e]];
        if (w[e] < block.dist[li * s + lj]) {
          block.dist[li * s + lj] = w[e];
          block.pred[li * s + lj] = i;
        }
      }
      block.dist[li * s + li] = 0.0;
      block.pred[li * s + li] = i;
    }

    double* dist = block.dist.data();
    NodeId* pred = block.pred.data();
    for (std::size_t k = 0; k < s; ++k) {
      const double* row_k = dist + k * s;
      for (std::size_t i = 0; i < s; ++i) {
        const double dik = dist[i * s + k];
        if (dik == kInfinity) continue;
        double* row_i = dist + i * s;
        for (std::size_t j = 0; j < s; ++j) {
          if (dik + row_k[j] < row_i[j]) {
            row_i[j] = dik + row_k[j];
            pred[i * s + j] = pred[k * s + j];
          }
        }
      }
    }

    if (std::find(block.dist.begin(), block.dist.end(), kInfinity) != block.dist.end()) {
      throw Error(ErrorCode::kDisconnectedCluster,
                  "cluster " + std::to_string(a + 1) + " is not connected");
    }
  }
  return paths;
}

bool center_nodes(ClusterState& st, const IntraClusterPaths& paths) {
  bool moved = false;
  std::vector<double> q;
  for (ClusterId a = 0; a < st.num_clusters(); ++a) {
    const auto& block = paths.clusters[a];
    const std::size_t s = block.order();
    if (s == 0) continue;
    q.assign(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) q[i] += block.d(i, j) * block.d(i, j);
    }

    std::size_t best = paths.local_index[st.centers[a]];
    for (std::size_t j = 0; j < s; ++j) {
      if (q[j] < q[best]) best = j;
    }
    if (block.nodes[best] == st.centers[a]) continue;

    moved = true;
    st.centers[a] = block.nodes[best];
    for (NodeId j : block.nodes) st.predecessor_count[j] = 0;
    for (std::size_t j = 0; j < s; ++j) {
      const NodeId node = block.nodes[j];
      st.distance[node] = block.d(best, j);
      st.predecessor[node] = block.p(best, j);
      ++st.predecessor_count[st.predecessor[node]];
    }
  }
  return moved;
}

BalancedResult balanced_lloyd_cluster(const WeightedGraph& g, std::span<const NodeId> initial_centers,
                                      const BalancedOptions& options) {
  if (options.t_max < 1) throw Error(ErrorCode::kInvalidArgument, "t_max must be at least 1");
  const int t_bf_max = options.t_bf_max > 0 ? options.t_bf_max : std::max<NodeId>(1, g.num_nodes());

  BalancedResult out;
  out.state = balanced_initialization(initial_centers, g.num_nodes());
  while (out.iterations < options.t_max) {
    const ClusterState before = out.state;
    const auto sweep = balanced_bellman_ford(g, out.state, t_bf_max, options.tol, options.tiebreak,
                                             options.trace);
    out.cap_reached = out.cap_reached || sweep.cap_reached;
    out.paths = clustered_floyd_warshall(g, out.state.membership, out.state.num_clusters());
    center_nodes(out.state, out.paths);
    ++out.iterations;
    if (options.trace) {
      options.trace(TraceEvent::kCenterUpdate, out.state);
      options.trace(TraceEvent::kLloydIteration, out.state);
    }
    if (out.state == before) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace lloyd
