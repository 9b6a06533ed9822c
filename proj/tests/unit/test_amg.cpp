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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "lloyd/amg.hpp"
#include "lloyd/error.hpp"
#include "lloyd/methods.hpp"

namespace lloyd {
namespace {

Eigen::MatrixXd dense(const SparseMatrix& a) { return Eigen::MatrixXd(a); }

Eigen::MatrixXd ones(Eigen::Index n) { return Eigen::MatrixXd::Ones(n, 1); }

SparseMatrix identity(int n) {
  SparseMatrix i(n, n);
  i.setIdentity();
  return i;
}

TEST(TentativeRestriction, Examples) {
  std::vector<ClusterId> m{0, 0, 1, 1};
  Eigen::MatrixXd expect(2, 4);
  expect << 1, 1, 0, 0, 0, 0, 1, 1;
  EXPECT_EQ(dense(tentative_restriction(m, 2)), expect);
  std::vector<ClusterId> one{0};
  EXPECT_EQ(dense(tentative_restriction(one, 1)), Eigen::MatrixXd::Ones(1, 1));
  std::vector<ClusterId> swapped{1, 0};
  Eigen::MatrixXd perm(2, 2);
  perm << 0, 1, 1, 0;
  EXPECT_EQ(dense(tentative_restriction(swapped, 2)), perm);
}

TEST(SpectralRadius, PathLaplacian) {
  const int n = 20;
  const double exact = 1.0 + std::cos(M_PI / (n + 1));
  EXPECT_NEAR(estimate_spectral_radius(path_laplacian(n), 2000), exact, 1e-4);
  EXPECT_LE(estimate_spectral_radius(path_laplacian(n), 30), exact + 1e-12);
}

TEST(SmoothedInterpolation, NoSmoothingReproducesIndicators) {
  auto a = path_laplacian(6);
  std::vector<ClusterId> m{0, 0, 0, 1, 1, 1};
  auto interp = smoothed_interpolation(a, m, ones(6), 0.0);
  Eigen::VectorXd col = dense(interp.z) * Eigen::VectorXd::Ones(2);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(col[i], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_EQ(interp.z.nonZeros(), 6);
}

TEST(SmoothedInterpolation, FillWidensByOneRing) {
  auto a = path_laplacian(4);
  std::vector<ClusterId> m{0, 0, 1, 1};
  auto interp = smoothed_interpolation(a, m, ones(4));
  EXPECT_NEAR(interp.omega, 4.0 / (3.0 * estimate_spectral_radius(a)), 1e-15);
  auto z = dense(interp.z);
  EXPECT_NE(z(2, 0), 0.0);
  EXPECT_NE(z(1, 1), 0.0);
  EXPECT_EQ(z(3, 0), 0.0);
  EXPECT_EQ(z(0, 1), 0.0);
}

TEST(SmoothedInterpolation, IdentityOperator) {
  auto a = identity(4);
  std::vector<ClusterId> m{0, 0, 1, 1};
  const double omega = 0.3;
  auto smooth = dense(smoothed_interpolation(a, m, ones(4), omega).z);
  auto plain = dense(smoothed_interpolation(a, m, ones(4), 0.0).z);
  EXPECT_NEAR((smooth - (1.0 - omega) * plain).norm(), 0.0, 1e-15);
}

TEST(SmoothedInterpolation, Errors) {
  SparseMatrix a = path_laplacian(3);
  a.coeffRef(1, 1) = 0.0;
  std::vector<ClusterId> m{0, 0, 0};
  try {
    smoothed_interpolation(a, m, ones(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularDiagonal);
  }
  Eigen::MatrixXd two(3, 2);
  two << 1, 1, 1, 1, 1, 1;
  std::vector<ClusterId> split{0, 0, 1};
  try {
    smoothed_interpolation(path_laplacian(3), split, two);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficientCluster);
  }
}

AmgOptions options(ClusterMethod method, std::uint64_t seed = 1) {
  AmgOptions o;
  o.method = method;
  o.seed = seed;
  return o;
}

TEST(SaSetup, CoarseSizeTenthOfGrid) {
  auto h = sa_setup(grid_laplacian(64, 64), options(ClusterMethod::kRebalanced));
  ASSERT_EQ(h.num_levels(), 2u);
  EXPECT_EQ(h.levels[1].a.rows(), 409);
}

TEST(SaSetup, GalerkinSymmetry) {
  auto h = sa_setup(grid_laplacian(20, 20), options(ClusterMethod::kBalanced));
  const SparseMatrix& c = h.levels[1].a;
  SparseMatrix diff = SparseMatrix(c.transpose()) - c;
  EXPECT_LE(diff.norm(), 1e-12 * c.norm());
  Eigen::MatrixXd expect = dense(h.levels[0].z).transpose() * dense(h.levels[0].a) * dense(h.levels[0].z);
  EXPECT_LE((expect - dense(c)).norm(), 1e-12 * expect.norm());
}

TEST(SaSetup, IdentityClusteringKeepsSize) {
  auto a = path_laplacian(12);
  AmgOptions o = options(ClusterMethod::kBalanced);
  o.points_per_cluster = 1.0;
  auto h = sa_setup(a, o);
  ASSERT_EQ(h.num_levels(), 2u);
  EXPECT_EQ(h.levels[1].a.rows(), 12);
  EXPECT_FALSE(h.warnings.empty());
}

TEST(SaSetup, GreedyOnPath) {
  auto h = sa_setup(path_laplacian(30), options(ClusterMethod::kGreedy));
  ASSERT_EQ(h.num_levels(), 2u);
  EXPECT_EQ(h.levels[1].a.rows(), 10);
}

TEST(SaSetup, StopsAtFloor) {
  AmgOptions o = options(ClusterMethod::kStandard);
  o.levels = 5;
  auto h = sa_setup(grid_laplacian(32, 32), o);
  EXPECT_LT(h.num_levels(), 5u);
  EXPECT_LE(h.levels.back().a.rows(), o.coarse_size_floor);
}

TEST(VCycle, ZeroIsFixedPoint) {
  auto h = sa_setup(grid_laplacian(16, 16), options(ClusterMethod::kRebalanced));
  Eigen::VectorXd z = Eigen::VectorXd::Zero(256);
  EXPECT_EQ(v_cycle(h, z, z).norm(), 0.0);
}

TEST(VCycle, SingleLevelIsExact) {
  auto a = grid_laplacian(8, 8);
  auto h = single_level(a);
  Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(64, -1.0, 2.0);
  Eigen::VectorXd u = v_cycle(h, Eigen::VectorXd::Zero(64), f);
  EXPECT_LE((a * u - f).norm(), 1e-12 * f.norm());
}

TEST(VCycle, LinearInError) {
  auto a = grid_laplacian(16, 16);
  auto h = sa_setup(a, options(ClusterMethod::kRebalanced));
  Eigen::VectorXd u1 = Eigen::VectorXd::LinSpaced(256, 0.0, 1.0);
  Eigen::VectorXd u2 = Eigen::VectorXd::LinSpaced(256, 1.0, -3.0).array().sin();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(256);
  Eigen::VectorXd sum = v_cycle(h, u1 + u2, f);
  Eigen::VectorXd parts = v_cycle(h, u1, f) + v_cycle(h, u2, f);
  EXPECT_LE((sum - parts).norm(), 1e-12 * parts.norm());
}

TEST(VCycle, ErrorDecreasesEveryCycle) {
  auto a = grid_laplacian(64, 64);
  auto h = sa_setup(a, options(ClusterMethod::kRebalanced));
  Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(4096, 0.0, 50.0).array().sin();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(4096);
  double previous = std::sqrt(u.dot(a * u));
  for (int k = 0; k < 10; ++k) {
    u = v_cycle(h, u, f);
    const double now = std::sqrt(u.dot(a * u));
    EXPECT_LT(now, previous);
    previous = now;
  }
}

TEST(ConvergenceRate, Histories) {
  std::vector<double> geometric;
  for (int k = 0; k <= 12; ++k) geometric.push_back(std::pow(0.5, k));
  EXPECT_NEAR(convergence_rate(geometric), 0.5, 1e-15);
  std::vector<double> flat(10, 3.0);
  EXPECT_EQ(convergence_rate(flat), 1.0);
  std::vector<double> short_history{1.0, 0.25, 0.0625};
  EXPECT_NEAR(convergence_rate(short_history), 0.25, 1e-15);
}

TEST(ConvergenceFactor, TwoLevelRebalanced) {
  auto h = sa_setup(grid_laplacian(64, 64), options(ClusterMethod::kRebalanced));
  auto r = convergence_factor(h, 1, 50, 1e-10);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.rho, 1.0);
  EXPECT_LE(r.iterations, 50);
  EXPECT_EQ(r.residuals.size(), static_cast<std::size_t>(r.iterations + 1));
  EXPECT_LT(r.residuals.back() / r.residuals.front(), 1e-10);
}

TEST(ConvergenceFactor, NeedsMoreThanFiveIterations) {
  auto h = single_level(path_laplacian(4));
  EXPECT_THROW(convergence_factor(h, 1, 5), Error);
}

TEST(ConvergenceFactor, PartialHistoryWhenCapped) {
  auto h = sa_setup(grid_laplacian(32, 32), options(ClusterMethod::kStandard));
  auto r = convergence_factor(h, 1, 6, 1e-10);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 6);
  EXPECT_EQ(r.residuals.size(), 7u);
}

TEST(CycleComplexity, CountingRule) {
  auto h = sa_setup(grid_laplacian(32, 32), options(ClusterMethod::kRebalanced));
  const double a0 = static_cast<double>(h.levels[0].a.nonZeros());
  const double a1 = static_cast<double>(h.levels[1].a.nonZeros());
  const double z = static_cast<double>(h.levels[0].z.nonZeros());
  EXPECT_DOUBLE_EQ(cycle_complexity(h, 1), (3 * a0 + 2 * z + a1) / a0);
  EXPECT_DOUBLE_EQ(cycle_complexity(h, 2), (5 * a0 + 2 * z + a1) / a0);
  EXPECT_EQ(cycle_complexity(single_level(path_laplacian(5)), 2), 1.0);
}

TEST(WorkPerDigit, Examples) {
  EXPECT_DOUBLE_EQ(work_per_digit(10.0, 0.1), 10.0);
  try {
    work_per_digit(10.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivergentRho);
  }
  EXPECT_EQ(work_per_digit(10.0, 0.0), 0.0);
}

TEST(Beta, IdentityInterpolationIsZero) {
  auto a = grid_laplacian(5, 5);
  std::vector<ClusterId> m(25);
  std::iota(m.begin(), m.end(), 0);
  auto r = beta_localization(a, identity(25), m);
  EXPECT_EQ(r.beta, 0.0);
  for (double b : r.per_cluster) EXPECT_EQ(b, 0.0);
}

TEST(Beta, LocalizationSumsToTotal) {
  for (auto method : {ClusterMethod::kStandard, ClusterMethod::kRebalanced, ClusterMethod::kMis2}) {
    auto a = grid_laplacian(12, 12);
    AmgOptions o = options(method, 4);
    o.points_per_cluster = 6.0;
    auto h = sa_setup(a, o);
    auto r = beta_localization(a, h.levels[0].z, h.levels[0].membership);
    EXPECT_GT(r.beta, 0.0);
    const double sum = std::accumulate(r.per_cluster.begin(), r.per_cluster.end(), 0.0);
    EXPECT_LE(std::abs(sum - r.beta), 1e-8 * r.beta);
  }
}

TEST(Beta, RebalancingReducesLargestClusterContribution) {
  auto a = grid_laplacian(23, 23);
  int smaller = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    double largest[2];
    int slot = 0;
    for (auto method : {ClusterMethod::kStandard, ClusterMethod::kRebalanced}) {
      auto h = sa_setup(a, options(method, seed));
      auto r = beta_localization(a, h.levels[0].z, h.levels[0].membership);
      largest[slot++] = *std::max_element(r.per_cluster.begin(), r.per_cluster.end());
    }
    if (largest[1] < largest[0]) ++smaller;
  }
  EXPECT_GT(smaller, 10);
}

TEST(Beta, GeneralizedEigenpair) {
  auto a = path_laplacian(8);
  std::vector<ClusterId> m{0, 0, 0, 1, 1, 1, 2, 2};
  auto z = smoothed_interpolation(a, m, ones(8)).z;
  auto r = beta_localization(a, z, m);
  Eigen::MatrixXd ad = dense(a);
  Eigen::MatrixXd p = dense(z);
  Eigen::MatrixXd d = ad.diagonal().asDiagonal();
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(8, 8) - p * (p.transpose() * d * p).inverse() * p.transpose() * d;
  Eigen::VectorXd lhs = t.transpose() * d * t * r.mode;
  Eigen::VectorXd rhs = r.beta * ad * r.mode;
  EXPECT_LE((lhs - rhs).norm(), 1e-9 * rhs.norm());
}

TEST(Beta, Errors) {
  auto a = path_laplacian(6);
  std::vector<ClusterId> m(6, 0);
  SparseMatrix p = tentative_restriction(m, 1).transpose();
  try {
    beta_localization(a, p, m, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
  SparseMatrix neg = -a;
  try {
    beta_localization(neg, p, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSpd);
  }
}

}  // namespace
}  // namespace lloyd
