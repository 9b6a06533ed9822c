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

#include "lloyd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "csv.hpp"
#include "lloyd/error.hpp"
#include "lloyd/lloyd_standard.hpp"
#include "lloyd/metrics.hpp"
#include "lloyd/rebalance.hpp"

namespace lloyd {

using detail::format_real;

namespace {

RunRow make_row(int run, const std::string& variant, const WeightedGraph& g,
                const MethodResult& result) {
  const ClusterStats stats = cluster_stats(g, result.membership, result.centers);
  RunRow row;
  row.run = run;
  row.variant = variant;
  row.clusters = static_cast<int>(result.centers.size());
  row.zero_diameter = stats.zero_diameter_count;
  row.diameter_std = stats.diameter_std;
  row.size_std = stats.size_std;
  row.energy = stats.energy;
  row.iterations = result.iterations;
  return row;
}

void summarize(ExperimentTable& table, const std::vector<std::string>& variants) {
  for (const auto& name : variants) {
    VariantSummary s;
    s.variant = name;
    int with_zero = 0;
    for (const auto& row : table.rows) {
      if (row.variant != name) continue;
      ++s.runs;
      if (row.zero_diameter > 0) ++with_zero;
      s.mean_zero_diameter += row.zero_diameter;
      s.mean_diameter_std += row.diameter_std;
      s.mean_size_std += row.size_std;
      s.mean_energy += row.energy;
    }
    if (s.runs > 0) {
      const double n = s.runs;
      s.zero_fraction = with_zero / n;
      s.mean_zero_diameter /= n;
      s.mean_diameter_std /= n;
      s.mean_size_std /= n;
      s.mean_energy /= n;
    }
    table.summary.push_back(s);
  }
}

void check_runs(int runs) {
  if (runs < 1) throw Error(ErrorCode::kInvalidArgument, "runs must be at least 1");
}

}  // namespace

const VariantSummary& ExperimentTable::variant(const std::string& name) const {
  for (const auto& s : summary) {
    if (s.variant == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "no variant named " + name);
}

std::string ExperimentTable::rows_csv() const {
  std::ostringstream out;
  out << "run,variant,clusters,zero_diameter,diameter_std,size_std,energy,iterations\n";
  for (const auto& r : rows) {
    out << r.run + 1 << ',' << r.variant << ',' << r.clusters << ',' << r.zero_diameter << ','
        << format_real(r.diameter_std) << ',' << format_real(r.size_std) << ','
        << format_real(r.energy) << ',' << r.iterations << '\n';
  }
  return out.str();
}

std::string ExperimentTable::summary_csv() const {
  std::ostringstream out;
  out << "variant,runs,zero_fraction,mean_zero_diameter,mean_diameter_std,mean_size_std,"
         "mean_energy\n";
  for (const auto& s : summary) {
    out << s.variant << ',' << s.runs << ',' << format_real(s.zero_fraction) << ','
        << format_real(s.mean_zero_diameter) << ',' << format_real(s.mean_diameter_std) << ','
        << format_real(s.mean_size_std) << ',' << format_real(s.mean_energy) << '\n';
  }
  return out.str();
}

NodeId clusters_for_fraction(NodeId n_node, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "cluster fraction must lie in (0, 1]");
  }
  return std::max<NodeId>(1, static_cast<NodeId>(std::floor(fraction * n_node)));
}

ExperimentTable tiebreak_experiment(const WeightedGraph& g, double fraction, int runs,
                                    std::uint64_t seed, const MethodOptions& base) {
  check_runs(runs);
  const NodeId k = clusters_for_fraction(g.num_nodes(), fraction);
  ExperimentTable table;
  for (int r = 0; r < runs; ++r) {
    const auto seeds = random_centers(g.num_nodes(), k, seed, static_cast<std::uint64_t>(r));
    for (bool tiebreak : {true, false}) {
      MethodOptions opts = base;
      opts.tiebreak = tiebreak;
      const auto result = run_cluster_method(g, ClusterMethod::kBalanced, seeds, opts);
      table.rows.push_back(make_row(r, tiebreak ? "tiebreak" : "no_tiebreak", g, result));
    }
  }
  summarize(table, {"tiebreak", "no_tiebreak"});
  return table;
}

ExperimentTable compare_experiment(const WeightedGraph& g, double fraction, int runs,
                                   std::uint64_t seed, const MethodOptions& base) {
  check_runs(runs);
  const NodeId k = clusters_for_fraction(g.num_nodes(), fraction);
  const ClusterMethod methods[] = {ClusterMethod::kStandard, ClusterMethod::kBalanced,
                                   ClusterMethod::kRebalanced};
  ExperimentTable table;
  for (int r = 0; r < runs; ++r) {
    const auto seeds = random_centers(g.num_nodes(), k, seed, static_cast<std::uint64_t>(r));
    for (auto m : methods) {
      table.rows.push_back(make_row(r, to_string(m), g, run_cluster_method(g, m, seeds, base)));
    }
  }
  summarize(table, {"standard", "balanced", "rebalanced"});
  return table;
}

std::string SweepTable::csv() const {
  std::ostringstream out;
  out << "points_per_cluster,run,coarse_size,rho,chi,wpd,iterations,converged\n";
  for (const auto& r : rows) {
    out << format_real(r.points_per_cluster) << ',' << r.run + 1 << ',' << r.coarse_size << ','
        << format_real(r.rho) << ',' << format_real(r.chi) << ',' << format_real(r.wpd) << ','
        << r.iterations << ',' << (r.converged ? 1 : 0) << '\n';
  }
  return out.str();
}

SweepTable sweep_experiment(const SparseMatrix& a, const SweepOptions& options) {
  check_runs(options.runs);
  SweepTable table;
  for (double ppc : options.points_per_cluster) {
    for (int r = 0; r < options.runs; ++r) {
      AmgOptions amg = options.amg;
      amg.points_per_cluster = ppc;
      amg.seed = options.seed + static_cast<std::uint64_t>(r);
      const Hierarchy h = sa_setup(a, amg);
      const auto report = convergence_factor(h, amg.seed, options.max_iters, options.rtol,
                                             options.nu);
      SweepRow row;
      row.points_per_cluster = ppc;
      row.run = r;
      row.coarse_size = static_cast<int>(h.levels.back().a.rows());
      row.rho = report.rho;
      row.chi = cycle_complexity(h, options.nu);
      row.wpd = report.rho < 1.0 ? work_per_digit(row.chi, report.rho)
                                 : std::numeric_limits<double>::infinity();
      row.iterations = report.iterations;
      row.converged = report.converged;
      table.rows.push_back(row);
    }
  }
  return table;
}

double optimal_path_energy(NodeId n_node, NodeId n_cluster) {
  if (n_node < 1 || n_cluster < 1 || n_cluster > n_node) {
    throw Error(ErrorCode::kInvalidArgument, "need 1 <= clusters <= nodes");
  }
  double total = 0.0;
  for (NodeId a = 0; a < n_cluster; ++a) {
    const NodeId s = n_node / n_cluster + (a < n_node % n_cluster ? 1 : 0);
    for (NodeId i = 0; i < s; ++i) {
      const double d = static_cast<double>(i) - static_cast<double>((s - 1) / 2);
      total += d * d;
    }
  }
  return total;
}

std::string SeedDemo::csv() const {
  std::ostringstream out;
  out << "algorithm,step,phase,energy\n";
  for (const auto* trace : {&balanced, &rebalanced}) {
    const char* name = trace == &balanced ? "balanced" : "rebalanced";
    for (const auto& p : *trace) {
      out << name << ',' << p.step << ',' << p.phase << ',' << format_real(p.energy) << '\n';
    }
  }
  return out.str();
}

SeedDemo seed_demo(bool worst_case, std::uint64_t seed, NodeId n_node, NodeId n_cluster,
                   int t_max, int rebalance_sweeps) {
  const WeightedGraph g = path_graph(n_node);
  SeedDemo demo;
  demo.optimal_energy = optimal_path_energy(n_node, n_cluster);
  if (worst_case) {
    for (NodeId i = 0; i < n_cluster; ++i) demo.initial_centers.push_back(i);
  } else {
    demo.initial_centers = random_centers(n_node, n_cluster, seed, 0);
  }
  const double seeded = energy_h(bellman_ford(g, demo.initial_centers).distance);

  auto record = [&](std::vector<TracePoint>& trace) {
    trace.push_back({0, "seed", seeded});
    return [&g, &trace](TraceEvent event, const ClusterState& st) {
      const int step = static_cast<int>(trace.size());
      if (event == TraceEvent::kLloydIteration) {
        trace.push_back({step, "lloyd", energy_h(st.distance)});
      } else if (event == TraceEvent::kRebalance) {
        trace.push_back({step, "rebalance", energy_h(bellman_ford(g, st.centers).distance)});
      }
    };
  };

  RebalancedOptions opts;
  opts.t_max = t_max;
  opts.rebalance_sweeps = rebalance_sweeps;
  opts.trace = record(demo.balanced);
  balanced_lloyd_cluster(g, demo.initial_centers, opts);
  opts.trace = record(demo.rebalanced);
  rebalanced_lloyd_cluster(g, demo.initial_centers, opts);
  return demo;
}

}  // namespace lloyd
