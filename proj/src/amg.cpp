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

#include "lloyd/amg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <variant>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "lloyd/error.hpp"

namespace lloyd {

namespace {

using ColMajor = Eigen::SparseMatrix<double, Eigen::ColMajor>;

Eigen::VectorXd checked_diagonal(const SparseMatrix& a) {
  Eigen::VectorXd d = a.diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) {
      throw Error(ErrorCode::kSingularDiagonal,
                  "diagonal entry " + std::to_string(i + 1) + " is not positive");
    }
  }
  return d;
}

void require_square(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kNotSquare, "operator must be square");
}

ClusterId count_clusters(std::span<const ClusterId> membership) {
  ClusterId k = 0;
  for (std::size_t i = 0; i < membership.size(); ++i) {
    if (membership[i] < 0) {
      throw Error(ErrorCode::kUnassignedNode,
                  "node " + std::to_string(i + 1) + " has no cluster");
    }
    k = std::max(k, membership[i] + 1);
  }
  return k;
}

}  // namespace

SparseMatrix tentative_restriction(std::span<const ClusterId> membership, ClusterId num_clusters) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(membership.size());
  for (std::size_t i = 0; i < membership.size(); ++i) {
    const ClusterId a = membership[i];
    if (a < 0 || a >= num_clusters) {
      throw Error(ErrorCode::kUnassignedNode,
                  "node " + std::to_string(i + 1) + " has no cluster");
    }
    entries.emplace_back(a, static_cast<Eigen::Index>(i), 1.0);
  }
  SparseMatrix r(num_clusters, static_cast<Eigen::Index>(membership.size()));
  r.setFromTriplets(entries.begin(), entries.end());
  return r;
}

double estimate_spectral_radius(const SparseMatrix& a, int iterations) {
  require_square(a);
  const Eigen::Index n = a.rows();
  if (n == 0) return 0.0;
  const Eigen::VectorXd scale = checked_diagonal(a).cwiseSqrt().cwiseInverse();

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = uniform(rng);
  x.normalize();

  double lambda = 0.0;
  for (int it = 0; it < std::max(1, iterations); ++it) {
    Eigen::VectorXd y = scale.asDiagonal() * (a * (scale.asDiagonal() * x));
    lambda = x.dot(y);
    const double norm = y.norm();
    if (norm == 0.0) break;
    x = y / norm;
  }
  return std::abs(lambda);
}

Interpolation smoothed_interpolation(const SparseMatrix& a, std::span<const ClusterId> membership,
                                     const Eigen::MatrixXd& near_nullspace,
                                     std::optional<double> omega, int power_iterations) {
  require_square(a);
  const Eigen::Index n = a.rows();
  if (static_cast<Eigen::Index>(membership.size()) != n) {
    throw Error(ErrorCode::kInvalidSize, "membership length does not match the operator");
  }
  Eigen::MatrixXd c = near_nullspace;
  if (c.size() == 0) c = Eigen::MatrixXd::Ones(n, 1);
  if (c.rows() != n) {
    throw Error(ErrorCode::kInvalidSize, "near-nullspace rows do not match the operator");
  }
  const Eigen::Index r = c.cols();
  const ClusterId k = count_clusters(membership);
  const Eigen::VectorXd diag = checked_diagonal(a);

  std::vector<std::vector<Eigen::Index>> members(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < n; ++i) {
    members[static_cast<std::size_t>(membership[static_cast<std::size_t>(i)])].push_back(i);
  }

  Interpolation out;
  out.coarse_nullspace = Eigen::MatrixXd::Zero(k * r, r);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(n * r));
  for (ClusterId cl = 0; cl < k; ++cl) {
    const auto& nodes = members[static_cast<std::size_t>(cl)];
    const auto s = static_cast<Eigen::Index>(nodes.size());
    if (s < r) {
      throw Error(ErrorCode::kRankDeficientCluster,
                  "cluster " + std::to_string(cl + 1) + " has fewer nodes than near-nullspace vectors");
    }
    Eigen::MatrixXd q(s, r);
    for (Eigen::Index i = 0; i < s; ++i) q.row(i) = c.row(nodes[static_cast<std::size_t>(i)]);
    Eigen::MatrixXd rr = Eigen::MatrixXd::Zero(r, r);
    for (Eigen::Index j = 0; j < r; ++j) {
      const double original = q.col(j).norm();
      for (Eigen::Index p = 0; p < j; ++p) {
        const double h = q.col(p).dot(q.col(j));
        rr(p, j) = h;
        q.col(j) -= h * q.col(p);
      }
      const double norm = q.col(j).norm();
      if (!(norm > 1e-12 * std::max(original, 1e-300))) {
        throw Error(ErrorCode::kRankDeficientCluster,
                    "near-nullspace is rank deficient on cluster " + std::to_string(cl + 1));
      }
      rr(j, j) = norm;
      q.col(j) /= norm;
    }
    out.coarse_nullspace.block(cl * r, 0, r, r) = rr;
    for (Eigen::Index i = 0; i < s; ++i) {
      for (Eigen::Index j = 0; j < r; ++j) {
        entries.emplace_back(nodes[static_cast<std::size_t>(i)], cl * r + j, q(i, j));
      }
    }
  }
  SparseMatrix zhat(n, k * r);
  zhat.setFromTriplets(entries.begin(), entries.end());

  out.omega = omega ? *omega : 4.0 / (3.0 * estimate_spectral_radius(a, power_iterations));
  if (out.omega == 0.0) {
    out.z = zhat;
    return out;
  }
  SparseMatrix smoothed = diag.cwiseInverse().asDiagonal() * (a * zhat);
  out.z = zhat - out.omega * smoothed;
  out.z.prune(0.0);
  return out;
}

struct Hierarchy::CoarseSolver {
  std::variant<Eigen::LLT<Eigen::MatrixXd>, Eigen::SimplicialLLT<ColMajor>> factor;
};

Hierarchy::Hierarchy() = default;
Hierarchy::~Hierarchy() = default;
Hierarchy::Hierarchy(Hierarchy&&) noexcept = default;
Hierarchy& Hierarchy::operator=(Hierarchy&&) noexcept = default;

void Hierarchy::factor_coarsest(Eigen::Index dense_limit) {
  if (levels.empty()) throw Error(ErrorCode::kInvalidArgument, "hierarchy has no levels");
  const SparseMatrix& a = levels.back().a;
  auto solver = std::make_unique<CoarseSolver>();
  if (a.rows() < dense_limit) {
    Eigen::LLT<Eigen::MatrixXd> llt(Eigen::MatrixXd(a).selfadjointView<Eigen::Lower>());
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::kSingularCoarseSolve, "coarsest operator is not positive definite");
    }
    solver->factor = std::move(llt);
  } else {
    auto& llt = solver->factor.emplace<Eigen::SimplicialLLT<ColMajor>>();
    llt.compute(ColMajor(a));
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::kSingularCoarseSolve, "coarsest operator is not positive definite");
    }
  }
  solver_ = std::move(solver);
}

Eigen::VectorXd Hierarchy::coarse_solve(const Eigen::VectorXd& f) const {
  if (!solver_) throw Error(ErrorCode::kSingularCoarseSolve, "coarsest operator is not factored");
  return std::visit([&](const auto& s) -> Eigen::VectorXd { return s.solve(f); }, solver_->factor);
}

namespace {

AmgLevel make_level(SparseMatrix a) {
  AmgLevel level;
  level.inv_diag = checked_diagonal(a).cwiseInverse();
  level.a = std::move(a);
  return level;
}

}  // namespace

Hierarchy single_level(const SparseMatrix& a) {
  require_square(a);
  Hierarchy h;
  h.levels.push_back(make_level(a));
  h.factor_coarsest(std::numeric_limits<Eigen::Index>::max());
  return h;
}

Hierarchy sa_setup(const SparseMatrix& a0, const AmgOptions& options) {
  require_square(a0);
  if (options.levels < 1) throw Error(ErrorCode::kInvalidArgument, "levels must be at least 1");
  if (!(options.points_per_cluster >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "points per cluster must be at least 1");
  }
  Hierarchy h;
  h.relax_omega = options.relax_omega;
  h.levels.push_back(make_level(a0));
  Eigen::MatrixXd nullspace = options.near_nullspace;

  for (int l = 0; l + 1 < options.levels; ++l) {
    AmgLevel& level = h.levels.back();
    const auto n = static_cast<NodeId>(level.a.rows());
    if (l > 0 && n <= options.coarse_size_floor) break;

    const WeightedGraph g = strength_to_distance(level.a, options.strength, options.padding);
    std::vector<NodeId> seeds;
    if (takes_seeds(options.method)) {
      const auto k = std::max<NodeId>(
          1, static_cast<NodeId>(std::floor(static_cast<double>(n) / options.points_per_cluster)));
      seeds = random_centers(n, k, options.seed, static_cast<std::uint64_t>(l));
    }
    MethodResult clusters = run_cluster_method(g, options.method, seeds, options.clustering);
    Interpolation interp = smoothed_interpolation(level.a, clusters.membership, nullspace,
                                                  options.interp_omega, options.power_iterations);
    SparseMatrix az = level.a * interp.z;
    SparseMatrix coarse = SparseMatrix(interp.z.transpose()) * az;
    if (coarse.rows() == level.a.rows()) {
      h.warnings.push_back("level " + std::to_string(l + 1) +
                           " did not coarsen: every cluster is a single node");
    }
    level.z = std::move(interp.z);
    level.membership = std::move(clusters.membership);
    level.centers = std::move(clusters.centers);
    nullspace = std::move(interp.coarse_nullspace);
    h.levels.push_back(make_level(std::move(coarse)));
  }
  h.factor_coarsest(options.dense_coarse_limit);
  return h;
}

namespace {

void relax(const AmgLevel& level, double omega, Eigen::VectorXd& u, const Eigen::VectorXd& f,
           int sweeps) {
  for (int s = 0; s < sweeps; ++s) {
    Eigen::VectorXd r = f - level.a * u;
    u += omega * level.inv_diag.cwiseProduct(r);
  }
}

Eigen::VectorXd cycle(const Hierarchy& h, std::size_t l, Eigen::VectorXd u,
                      const Eigen::VectorXd& f, int nu) {
  if (l + 1 == h.levels.size()) return h.coarse_solve(f);
  const AmgLevel& level = h.levels[l];
  relax(level, h.relax_omega, u, f, nu);
  const Eigen::VectorXd r = f - level.a * u;
  const Eigen::VectorXd rc = level.z.transpose() * r;
  const Eigen::VectorXd ec =
      cycle(h, l + 1, Eigen::VectorXd::Zero(h.levels[l + 1].a.rows()), rc, nu);
  u += level.z * ec;
  relax(level, h.relax_omega, u, f, nu);
  return u;
}

}  // namespace

Eigen::VectorXd v_cycle(const Hierarchy& h, const Eigen::VectorXd& u, const Eigen::VectorXd& f,
                        int nu) {
  if (h.levels.empty()) throw Error(ErrorCode::kInvalidArgument, "hierarchy has no levels");
  const Eigen::Index n = h.levels.front().a.rows();
  if (u.size() != n || f.size() != n) {
    throw Error(ErrorCode::kInvalidSize, "vector length does not match the fine operator");
  }
  return cycle(h, 0, u, f, nu);
}

double convergence_rate(std::span<const double> residuals) {
  if (residuals.size() < 2) return 0.0;
  const std::size_t k = residuals.size() - 1;
  const std::size_t steps = std::min<std::size_t>(5, k);
  const double last = residuals[k];
  const double first = residuals[k - steps];
  if (first == 0.0) return 0.0;
  return std::pow(last / first, 1.0 / static_cast<double>(steps));
}

ConvergenceReport convergence_factor(const Hierarchy& h, std::uint64_t seed, int max_iters,
                                     double rtol, int nu) {
  if (max_iters <= 5) throw Error(ErrorCode::kInvalidArgument, "max_iters must exceed 5");
  if (h.levels.empty()) throw Error(ErrorCode::kInvalidArgument, "hierarchy has no levels");
  const SparseMatrix& a = h.levels.front().a;
  const Eigen::Index n = a.rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = uniform(rng);
  const Eigen::VectorXd f = Eigen::VectorXd::Zero(n);

  ConvergenceReport report;
  const double r0 = (a * u).norm();
  report.residuals.push_back(r0);
  if (r0 == 0.0) {
    report.rho = 0.0;
    report.converged = true;
    return report;
  }
  for (int k = 1; k <= max_iters; ++k) {
    u = v_cycle(h, u, f, nu);
    const double r = (a * u).norm();
    report.residuals.push_back(r);
    report.iterations = k;
    if (r / r0 < rtol) {
      report.converged = true;
      break;
    }
  }
  report.rho = convergence_rate(report.residuals);
  return report;
}

double cycle_complexity(const Hierarchy& h, int nu) {
  if (h.levels.empty()) return 0.0;
  const auto fine = static_cast<double>(h.levels.front().a.nonZeros());
  if (fine == 0.0) return 0.0;
  double total = static_cast<double>(h.levels.back().a.nonZeros());
  for (std::size_t l = 0; l + 1 < h.levels.size(); ++l) {
    total += static_cast<double>(2 * nu + 1) * static_cast<double>(h.levels[l].a.nonZeros());
    total += 2.0 * static_cast<double>(h.levels[l].z.nonZeros());
  }
  return total / fine;
}

double work_per_digit(double chi, double rho) {
  if (!(rho < 1.0)) {
    throw Error(ErrorCode::kDivergentRho, "convergence factor " + std::to_string(rho) + " is not below 1");
  }
  if (rho <= 0.0) return 0.0;
  return chi / -std::log10(rho);
}

BetaReport beta_localization(const SparseMatrix& a, const SparseMatrix& p,
                             std::span<const ClusterId> membership, Eigen::Index dense_limit) {
  require_square(a);
  const Eigen::Index n = a.rows();
  if (n > dense_limit) {
    throw Error(ErrorCode::kTooLarge, std::to_string(n) + " unknowns exceed the dense limit of " +
                                          std::to_string(dense_limit));
  }
  if (p.rows() != n || static_cast<Eigen::Index>(membership.size()) != n) {
    throw Error(ErrorCode::kInvalidSize, "interpolation or membership does not match the operator");
  }
  const ClusterId k = count_clusters(membership);
  const Eigen::MatrixXd ad(a);
  if (Eigen::LLT<Eigen::MatrixXd>(ad).info() != Eigen::Success) {
    throw Error(ErrorCode::kNotSpd, "operator is not symmetric positive definite");
  }
  const Eigen::VectorXd d = checked_diagonal(a);
  const Eigen::MatrixXd pd(p);
  const Eigen::MatrixXd ptd = pd.transpose() * d.asDiagonal();
  const Eigen::MatrixXd coarse = ptd * pd;
  const Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n) - pd * coarse.ldlt().solve(ptd);
  Eigen::MatrixXd b = t.transpose() * d.asDiagonal() * t;
  b = 0.5 * (b + b.transpose()).eval();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(b, ad);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotSpd, "generalized eigenproblem did not converge");
  }
  BetaReport report;
  report.beta = solver.eigenvalues()[n - 1];
  report.mode = solver.eigenvectors().col(n - 1);
  const Eigen::VectorXd te = t * report.mode;
  const double energy = report.mode.dot(ad * report.mode);
  report.per_cluster.assign(static_cast<std::size_t>(k), 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    report.per_cluster[static_cast<std::size_t>(membership[static_cast<std::size_t>(j)])] +=
        d[j] * te[j] * te[j] / energy;
  }
  return report;
}

}  // namespace lloyd
