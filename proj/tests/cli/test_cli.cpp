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
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LLOYDCLUST_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::create_directories(CLI_SCRATCH_DIR);
  return fs::path(CLI_SCRATCH_DIR) / name;
}

TEST(Cluster, WorstCasePathRebalanced) {
  auto r = run("cluster --path 30 --nclusters 10 --centers 1..10 --method rebalanced");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["clusters"], 10);
  EXPECT_TRUE(j["valid"].get<bool>());
  EXPECT_LE(j["stats"]["energy"].get<double>(), 30.0);
}

TEST(Cluster, IdentityOnPathFour) {
  auto r = run("cluster --path 4 --nclusters 4 --method balanced --centers 1,2,3,4");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["stats"]["energy"].get<double>(), 0.0);
  EXPECT_EQ(j["centers"], json({1, 2, 3, 4}));
}

TEST(Cluster, GreedyIgnoresClusterCount) {
  const std::string cmd = std::string(LLOYDCLUST_BIN) +
                          " cluster --grid 8 8 --nclusters 6 --seed 1 --method greedy 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string err;
  std::array<char, 1024> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) err.append(buf.data(), got);
  EXPECT_EQ(WEXITSTATUS(pclose(pipe)), 0);
  EXPECT_NE(err.find("warning"), std::string::npos);
}

TEST(Cluster, MembershipCsvIsOneBased) {
  auto csv = scratch("membership.csv");
  auto r = run("cluster --path 4 --centers 1,4 --method balanced --membership-out " + csv.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(read_file(csv), "node,cluster,is_center\n1,1,1\n2,1,0\n3,2,0\n4,2,1\n");
}

TEST(Cluster, Deterministic) {
  const std::string args = "cluster --grid 12 12 --nclusters 14 --seed 5 --method rebalanced";
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  auto other = run("cluster --grid 12 12 --nclusters 14 --seed 6 --method rebalanced");
  EXPECT_NE(a.out, other.out);
}

TEST(Cluster, EveryMethodEmitsValidClustering) {
  for (const char* m : {"standard", "balanced", "rebalanced", "greedy", "mis2"}) {
    auto r = run(std::string("cluster --grid 9 7 --nclusters 6 --seed 2 --method ") + m);
    ASSERT_EQ(r.status, 0) << m;
    EXPECT_TRUE(json::parse(r.out)["valid"].get<bool>()) << m;
  }
}

TEST(Cluster, MatrixMarketInput) {
  auto mtx = scratch("lap.mtx");
  std::ofstream(mtx) << "%%MatrixMarket matrix coordinate real symmetric\n4 4 7\n"
                        "1 1 2\n2 2 2\n3 3 2\n4 4 2\n2 1 -1\n3 2 -1\n4 3 -1\n";
  auto r = run("cluster --mtx " + mtx.string() + " --centers 1,4 --method balanced");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["graph"]["edges"], 6);
  EXPECT_TRUE(j["valid"].get<bool>());
}

TEST(ExitCodes, FlagErrors) {
  EXPECT_EQ(run("cluster --path 30 --bogus").status, 2);
  EXPECT_EQ(run("cluster --path 30 --nclusters 3 --centers 1,2").status, 2);
  EXPECT_EQ(run("cluster --path 30 --centers 1,1 --method balanced").status, 2);
  EXPECT_EQ(run("cluster --path 30 --centers 31 --method balanced").status, 2);
  EXPECT_EQ(run("cluster --path 30 --method kmeans --nclusters 3").status, 2);
  EXPECT_EQ(run("cluster --mtx /nonexistent.mtx --nclusters 2").status, 2);
  EXPECT_EQ(run("").status, 2);
}

TEST(ExitCodes, FailureIsThree) {
  auto mtx = scratch("split.mtx");
  std::ofstream(mtx) << "%%MatrixMarket matrix coordinate real general\n3 3 2\n1 2 -1\n2 1 -1\n";
  EXPECT_EQ(run("cluster --mtx " + mtx.string() + " --centers 1 --method balanced").status, 3);
}

TEST(ExitCodes, DivergenceIsFour) {
  auto mtx = scratch("alternating.mtx");
  {
    std::ofstream out(mtx);
    const int n = 30;
    out << "%%MatrixMarket matrix coordinate real symmetric\n"
        << n << ' ' << n << ' ' << n * (n + 1) / 2 << '\n';
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= i; ++j) out << i << ' ' << j << ' ' << (i == j ? 1.1 : ((i + j) % 2 ? -1.0 : 1.0)) << '\n';
    }
  }
  auto r = run("amg --mtx " + mtx.string() +
               " --levels 2 --method greedy --coarse-floor 1 --max-iters 20");
  EXPECT_EQ(r.status, 4);
  auto j = json::parse(r.out);
  EXPECT_GE(j["rho"].get<double>(), 1.0);
  EXPECT_TRUE(j["wpd"].is_null());
  EXPECT_EQ(run("amg --grid 8 8 --nu 0").status, 2);
}

TEST(Experiment, TiebreakCsv) {
  auto summary = scratch("tiebreak_summary.csv");
  auto r = run("experiment tiebreak --grid 16 16 --frac 0.1 --runs 20 --seed 7 --summary-out " +
               summary.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "run,variant,clusters,zero_diameter,diameter_std,size_std,energy,iterations");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 41);
  auto s = read_file(summary);
  EXPECT_NE(s.find("tiebreak,20,"), std::string::npos);
  EXPECT_NE(s.find("no_tiebreak,20,"), std::string::npos);
  EXPECT_EQ(run("experiment tiebreak --grid 16 16 --frac 0.1 --runs 20 --seed 7 --summary-out " +
                summary.string()).out,
            r.out);
}

TEST(Experiment, SeedDemoWorst) {
  auto r = run("experiment seed-demo --worst");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "algorithm,step,phase,energy");
  EXPECT_EQ(first.substr(first.rfind(',') + 1), "2870");
}

TEST(Experiment, CompareCsv) {
  auto r = run("experiment compare --grid 8 8 --runs 3 --seed 3 --summary-out /dev/null");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 10);
}

TEST(Experiment, SweepCsv) {
  auto r = run("experiment sweep --grid 12 12 --ppc 5,10 --runs 2 --seed 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Amg, TwoLevelRebalanced) {
  auto r = run("amg --grid 64 64 --levels 2 --method rebalanced --points-per-cluster 10 --seed 1");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_LT(j["rho"].get<double>(), 1.0);
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_EQ(j["levels"][1]["size"], 409);
}

TEST(Amg, SingleLevelDirect) {
  auto r = run("amg --grid 8 8 --levels 1");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["iterations"], 1);
  EXPECT_TRUE(j["converged"].get<bool>());
}

TEST(Amg, BetaDecomposition) {
  auto r = run("amg --grid 32 32 --levels 2 --method standard --beta");
  ASSERT_EQ(r.status, 0);
  auto b = json::parse(r.out)["beta"];
  double sum = 0.0;
  for (const auto& v : b["per_cluster"]) sum += v.get<double>();
  const double beta = b["beta"].get<double>();
  EXPECT_LE(std::abs(sum - beta), 1e-8 * beta);
}

TEST(Amg, Deterministic) {
  const std::string args = "amg --grid 24 24 --levels 3 --coarse-floor 10 --seed 3";
  EXPECT_EQ(run(args).out, run(args).out);
}

}  // namespace
