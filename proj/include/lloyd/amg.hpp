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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lloyd/graph.hpp"
#include "lloyd/methods.hpp"
#include "lloyd/sparse.hpp"

namespace lloyd {

/// R(a, i) = 1 iff node i belongs to cluster a.
SparseMatrix tentative_restriction(std::span<const ClusterId> membership, ClusterId num_clusters);

/// Largest eigenvalue of D^-1 A (D = diag A) by symmetric power iteration.
double estimate_spectral_radius(const SparseMatrix& a, int iterations = 30);

struct Interpolation {
  SparseMatrix z;
  Eigen::MatrixXd coarse_nullspace;  // per-cluster R factors, stacked
  double omega = 0.0;
};

/// Localizes the near-nullspace columns to each cluster, orthonormalizes them
/// per cluster, and applies one weighted-Jacobi smoothing step
/// Z = (I - omega D^-1 A) Z_tentative. Without `omega`, 4 / (3 rho(D^-1 A)) is
/// used.
Interpolation smoothed_interpolation(const SparseMatrix& a, std::span<const ClusterId> membership,
                                     const Eigen::MatrixXd& near_nullspace,
                                     std::optional<double> omega = std::nullopt,
                                     int power_iterations = 30);

struct AmgOptions {
  int levels = 2;  // total number of levels, fine level included
  ClusterMethod method = ClusterMethod::kRebalanced;
  double points_per_cluster = 10.0;
  std::uint64_t seed = 0;
  Strength strength = Strength::kAbsOffdiag;
  double padding = 0.1;
  MethodOptions clustering;
  int coarse_size_floor = 100;  // levels past the first stop coarsening at this size
  std::optional<double> interp_omega;
  int power_iterations = 30;
  double relax_omega = 2.0 / 3.0;
  Eigen::MatrixXd near_nullspace;  // empty: constant vector
  Eigen::Index dense_coarse_limit = 500;
};

struct AmgLevel {
  SparseMatrix a;
  SparseMatrix z;  // empty on the coarsest level
  std::vector<ClusterId> membership;
  std::vector<NodeId> centers;
  Eigen::VectorXd inv_diag;
};

class Hierarchy {
 public:
  Hierarchy();
  ~Hierarchy();
  Hierarchy(Hierarchy&&) noexcept;
  Hierarchy& operator=(Hierarchy&&) noexcept;

  std::size_t num_levels() const noexcept { return levels.size(); }

  /// Factorizes the coarsest operator; dense below `dense_limit` unknowns.
  void factor_coarsest(Eigen::Index dense_limit = 500);
  Eigen::VectorXd coarse_solve(const Eigen::VectorXd& f) const;

  std::vector<AmgLevel> levels;
  double relax_omega = 2.0 / 3.0;
  std::vector<std::string> warnings;

 private:
  struct CoarseSolver;
  std::unique_ptr<CoarseSolver> solver_;
};

/// Builds a smoothed-aggregation hierarchy, clustering each level's strength
/// graph with the requested method.
Hierarchy sa_setup(const SparseMatrix& a0, const AmgOptions& options);

/// Wraps a single operator as a one-level hierarchy (direct solve).
Hierarchy single_level(const SparseMatrix& a);

/// One V-cycle with `nu` weighted-Jacobi sweeps before and after each
/// coarse-grid correction.
Eigen::VectorXd v_cycle(const Hierarchy& h, const Eigen::VectorXd& u, const Eigen::VectorXd& f,
                        int nu = 2);

struct ConvergenceReport {
  double rho = 1.0;
  std::vector<double> residuals;  // ||r_k||, k = 0..iterations
  int iterations = 0;
  bool converged = false;
};

/// Geometric-mean reduction over the last (up to) five residual norms.
double convergence_rate(std::span<const double> residuals);

/// Cycles on A u = 0 from a seeded random u until ||r|| / ||r0|| < rtol or
/// max_iters cycles.
ConvergenceReport convergence_factor(const Hierarchy& h, std::uint64_t seed, int max_iters = 100,
                                     double rtol = 1e-10, int nu = 2);

/// Nonzeros touched by one cycle, relative to nnz(A_0): per non-coarsest level
/// 2*nu relaxations + one residual on A_l and two products with Z_l, plus
/// nnz(A_L) for the coarse solve.
double cycle_complexity(const Hierarchy& h, int nu = 2);

/// chi / -log10(rho). Throws kDivergentRho for rho >= 1.
double work_per_digit(double chi, double rho);

struct BetaReport {
  double beta = 0.0;
  std::vector<double> per_cluster;
  Eigen::VectorXd mode;
};

/// Approximation-property constant: the largest eigenvalue of
/// T^T D T e = lambda A e with T = I - P (P^T D P)^-1 P^T D, and its split into
/// per-cluster contributions of the numerator. Dense; throws kTooLarge past
/// dense_limit unknowns and kNotSpd if A has no Cholesky factor.
BetaReport beta_localization(const SparseMatrix& a, const SparseMatrix& p,
                             std::span<const ClusterId> membership,
                             Eigen::Index dense_limit = 2000);

}  // namespace lloyd
