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

#include <gtest/gtest.h>

#include <numeric>

#include "lloyd/error.hpp"
#include "lloyd/lloyd_balanced.hpp"
#include "lloyd/metrics.hpp"

namespace lloyd {
namespace {

const double kInf = kInfinity;

TEST(BalancedInit, TwoCenters) {
  std::vector<NodeId> c{0, 3};
  auto st = balanced_initialization(c, 4);
  EXPECT_EQ(st.membership, (std::vector<ClusterId>{0, kNoCluster, kNoCluster, 1}));
  EXPECT_EQ(st.distance, (std::vector<double>{0, kInf, kInf, 0}));
  EXPECT_EQ(st.predecessor, (std::vector<NodeId>{0, kNoNode, kNoNode, 3}));
  EXPECT_EQ(st.predecessor_count, (std::vector<std::int32_t>{1, 0, 0, 1}));
  EXPECT_EQ(st.size, (std::vector<std::int32_t>{1, 1}));
}

TEST(BalancedInit, SecondNode) {
  std::vector<NodeId> c{1};
  auto st = balanced_initialization(c, 2);
  EXPECT_EQ(st.membership, (std::vector<ClusterId>{kNoCluster, 0}));
  EXPECT_EQ(st.size, (std::vector<std::int32_t>{1}));
}

TEST(BalancedInit, Errors) {
  std::vector<NodeId> dup{0, 0};
  try {
    balanced_initialization(dup, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateCenter);
  }
  std::vector<NodeId> bad{4};
  try {
    balanced_initialization(bad, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSeed);
  }
}

TEST(BalancedBellmanFord, PathFour) {
  auto g = path_graph(4);
  std::vector<NodeId> c{0, 3};
  auto st = balanced_initialization(c, 4);
  auto report = balanced_bellman_ford(g, st, 4);
  EXPECT_FALSE(report.cap_reached);
  EXPECT_EQ(st.membership, (std::vector<ClusterId>{0, 0, 1, 1}));
  EXPECT_EQ(st.distance, (std::vector<double>{0, 1, 1, 0}));
  EXPECT_EQ(st.size, (std::vector<std::int32_t>{2, 2}));
}

TEST(BalancedBellmanFord, PathThreeSingleCenter) {
  auto g = path_graph(3);
  std::vector<NodeId> c{0};
  auto st = balanced_initialization(c, 3);
  balanced_bellman_ford(g, st, 3);
  EXPECT_EQ(st.membership, (std::vector<ClusterId>{0, 0, 0}));
  EXPECT_EQ(st.distance, (std::vector<double>{0, 1, 2}));
  EXPECT_EQ(st.predecessor, (std::vector<NodeId>{0, 0, 1}));
  EXPECT_EQ(st.predecessor_count, (std::vector<std::int32_t>{2, 1, 0}));
}

TEST(BalancedBellmanFord, TieMovesLeafToSmallerCluster) {
  WeightedGraph::Edge edges[] = {
      {0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}, {2, 3, 1}, {3, 2, 1},
      {3, 4, 1}, {4, 3, 1}, {0, 5, 1}, {5, 0, 1}, {0, 6, 1}, {6, 0, 1}};
  auto g = WeightedGraph::from_edges(7, edges);
  std::vector<NodeId> c{0, 4};
  auto with = balanced_initialization(c, 7);
  balanced_bellman_ford(g, with, 7, 1e-12, true);
  auto without = balanced_initialization(c, 7);
  balanced_bellman_ford(g, without, 7, 1e-12, false);
  EXPECT_EQ(without.membership[2], 0);
  EXPECT_EQ(with.membership[2], 1);
  EXPECT_EQ(with.size, (std::vector<std::int32_t>{4, 3}));
}

TEST(BalancedBellmanFord, CapReached) {
  auto g = path_graph(10);
  std::vector<NodeId> c{0};
  auto st = balanced_initialization(c, 10);
  auto report = balanced_bellman_ford(g, st, 1);
  EXPECT_EQ(report.sweeps, 1);
  EXPECT_TRUE(report.changed);
}

TEST(ClusteredFloydWarshall, PathOfThree) {
  std::vector<ClusterId> m{0, 0, 0};
  auto paths = clustered_floyd_warshall(path_graph(3), m, 1);
  const auto& b = paths.clusters[0];
  std::vector<double> expect{0, 1, 2, 1, 0, 1, 2, 1, 0};
  EXPECT_EQ(b.dist, expect);
}

TEST(ClusteredFloydWarshall, Singleton) {
  std::vector<ClusterId> m{0, 1};
  auto paths = clustered_floyd_warshall(path_graph(2), m, 2);
  EXPECT_EQ(paths.clusters[1].dist, (std::vector<double>{0}));
  EXPECT_EQ(paths.clusters[1].pred, (std::vector<NodeId>{1}));
}

TEST(ClusteredFloydWarshall, ShortcutThroughMiddle) {
  WeightedGraph::Edge edges[] = {{0, 1, 1}, {0, 2, 10}, {1, 0, 1}, {1, 2, 1}, {2, 0, 10}, {2, 1, 1}};
  auto g = WeightedGraph::from_edges(3, edges);
  std::vector<ClusterId> m{0, 0, 0};
  auto paths = clustered_floyd_warshall(g, m, 1);
  EXPECT_EQ(paths.distance(0, 0, 2), 2.0);
  EXPECT_EQ(paths.clusters[0].p(0, 2), 1);
}

TEST(ClusteredFloydWarshall, StaysInsideCluster) {
  std::vector<ClusterId> m{0, 1, 0};
  try {
    clustered_floyd_warshall(path_graph(3), m, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnectedCluster);
  }
}

TEST(CenterNodes, MovesToMiddle) {
  auto g = path_graph(3);
  std::vector<NodeId> c{0};
  auto st = balanced_initialization(c, 3);
  balanced_bellman_ford(g, st, 3);
  auto paths = clustered_floyd_warshall(g, st.membership, 1);
  EXPECT_TRUE(center_nodes(st, paths));
  EXPECT_EQ(st.centers, (std::vector<NodeId>{1}));
  EXPECT_EQ(st.distance, (std::vector<double>{1, 0, 1}));
  EXPECT_EQ(st.predecessor, (std::vector<NodeId>{1, 1, 1}));
  EXPECT_EQ(st.predecessor_count, (std::vector<std::int32_t>{0, 3, 0}));
}

TEST(CenterNodes, TieKeepsIncumbent) {
  auto g = path_graph(2);
  std::vector<NodeId> c{0};
  auto st = balanced_initialization(c, 2);
  balanced_bellman_ford(g, st, 2);
  auto paths = clustered_floyd_warshall(g, st.membership, 1);
  EXPECT_FALSE(center_nodes(st, paths));
  EXPECT_EQ(st.centers, (std::vector<NodeId>{0}));
}

TEST(CenterNodes, SingletonUnchanged) {
  std::vector<NodeId> c{0, 1};
  auto st = balanced_initialization(c, 2);
  auto before = st;
  std::vector<ClusterId> m{0, 1};
  auto paths = clustered_floyd_warshall(path_graph(2), m, 2);
  EXPECT_FALSE(center_nodes(st, paths));
  EXPECT_EQ(st, before);
}

TEST(BalancedLloyd, PathFour) {
  std::vector<NodeId> c0{0, 3};
  auto r = balanced_lloyd_cluster(path_graph(4), c0);
  EXPECT_EQ(r.state.membership, (std::vector<ClusterId>{0, 0, 1, 1}));
  EXPECT_EQ(r.state.centers, (std::vector<NodeId>{0, 3}));
  EXPECT_TRUE(r.converged);
}

TEST(BalancedLloyd, AllNodesIdentity) {
  auto g = grid_graph(3, 2);
  std::vector<NodeId> c0(6);
  std::iota(c0.begin(), c0.end(), 0);
  auto r = balanced_lloyd_cluster(g, c0);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_TRUE(r.converged);
  for (NodeId i = 0; i < 6; ++i) EXPECT_EQ(r.state.membership[i], i);
}

TEST(BalancedLloyd, WorstCaseIsTrapped) {
  auto g = path_graph(30);
  std::vector<NodeId> c0(10);
  std::iota(c0.begin(), c0.end(), 0);
  BalancedOptions opts;
  opts.t_max = 100;
  auto r = balanced_lloyd_cluster(g, c0, opts);
  EXPECT_TRUE(r.converged);
  const double h = energy_h(r.state.distance);
  EXPECT_LT(h, 2870.0);
  EXPECT_GT(h, 30.0);
  EXPECT_TRUE(validate_clustering(g, r.state.membership, r.state.centers).valid);
}

TEST(BalancedLloyd, TraceHookOrder) {
  std::vector<TraceEvent> events;
  BalancedOptions opts;
  opts.trace = [&](TraceEvent e, const ClusterState&) { events.push_back(e); };
  std::vector<NodeId> c0{0, 3};
  auto r = balanced_lloyd_cluster(path_graph(4), c0, opts);
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(events.front(), TraceEvent::kBellmanFordSweep);
  EXPECT_EQ(events.back(), TraceEvent::kLloydIteration);
  EXPECT_EQ(std::count(events.begin(), events.end(), TraceEvent::kLloydIteration), r.iterations);
}

TEST(ApproximatelyEqual, Relative) {
  EXPECT_TRUE(detail::approximately_equal(1.0, 1.0 + 1e-14, 1e-12));
  EXPECT_FALSE(detail::approximately_equal(1.0, 1.0 + 1e-9, 1e-12));
  EXPECT_TRUE(detail::approximately_equal(0.0, 0.0, 1e-12));
}

}  // namespace
}  // namespace lloyd
