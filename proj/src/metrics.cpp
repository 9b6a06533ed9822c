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

#include "lloyd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lloyd/lloyd_balanced.hpp"

namespace lloyd {

double energy_h(std::span<const double> distance) {
  double h = 0.0;
  for (double d : distance) {
    if (!std::isfinite(d)) throw Error(ErrorCode::kInfiniteDistance, "energy of an unassigned node");
    h += d * d;
  }
  return h;
}

double compute_delta(const WeightedGraph& g) {
  const std::set<double> distinct(g.all_weights().begin(), g.all_weights().end());
  const double n = std::max<NodeId>(1, g.num_nodes());
  double gap = kInfinity;
  for (auto it = distinct.begin(); it != distinct.end(); ++it) {
    auto next = std::next(it);
    if (next != distinct.end()) gap = std::min(gap, *next - *it);
  }
  if (distinct.size() < 2) gap = (distinct.empty() ? 1.0 : *distinct.begin()) / n;
  const double ratio = gap / n;
  return ratio * ratio;
}

double energy_h_delta(std::span<const double> distance, std::span<const std::int32_t> size,
                      double delta) {
  double sizes = 0.0;
  for (std::int32_t s : size) sizes += static_cast<double>(s) * s;
  return energy_h(distance) + delta * sizes;
}

namespace {

template <class T>
double population_std(const std::vector<T>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (T x : v) mean += static_cast<double>(x);
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (T x : v) var += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
  return std::sqrt(var / static_cast<double>(v.size()));
}

ClusterStats shape_stats(const IntraClusterPaths& paths) {
  ClusterStats stats;
  for (const auto& block : paths.clusters) {
    const double diameter =
        block.dist.empty() ? 0.0 : *std::max_element(block.dist.begin(), block.dist.end());
    stats.diameter.push_back(diameter);
    stats.size.push_back(static_cast<std::int32_t>(block.order()));
    if (diameter == 0.0) ++stats.zero_diameter_count;
  }
  stats.diameter_std = population_std(stats.diameter);
  stats.size_std = population_std(stats.size);
  return stats;
}

}  // namespace

ClusterStats cluster_stats(const WeightedGraph& g, const ClusterState& st,
                           const IntraClusterPaths& paths) {
  ClusterStats stats = shape_stats(paths);
  stats.delta = compute_delta(g);
  stats.energy = energy_h(st.distance);
  stats.energy_delta = energy_h_delta(st.distance, stats.size, stats.delta);
  return stats;
}

std::vector<double> center_distances(const IntraClusterPaths& paths,
                                     std::span<const ClusterId> membership,
                                     std::span<const NodeId> centers) {
  std::vector<double> d(membership.size(), kInfinity);
  for (std::size_t i = 0; i < membership.size(); ++i) {
    const ClusterId a = membership[i];
    if (a == kNoCluster) continue;
    d[i] = paths.distance(a, centers[a], static_cast<NodeId>(i));
  }
  return d;
}

ClusterStats cluster_stats(const WeightedGraph& g, std::span<const ClusterId> membership,
                           std::span<const NodeId> centers) {
  const auto paths =
      clustered_floyd_warshall(g, membership, static_cast<ClusterId>(centers.size()));
  ClusterStats stats = shape_stats(paths);
  const auto d = center_distances(paths, membership, centers);
  stats.delta = compute_delta(g);
  stats.energy = energy_h(d);
  stats.energy_delta = energy_h_delta(d, stats.size, stats.delta);
  return stats;
}

}  // namespace lloyd
