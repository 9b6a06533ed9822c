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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lloyd_c.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitDivergent = 4;

struct Failure {
  int exit_code;
  std::string message;
};

struct GraphDeleter {
  void operator()(lc_graph* g) const { lc_graph_free(g); }
};
struct MatrixDeleter {
  void operator()(lc_matrix* m) const { lc_matrix_free(m); }
};
struct ClusteringDeleter {
  void operator()(lc_clustering* c) const { lc_clustering_free(c); }
};
struct HierarchyDeleter {
  void operator()(lc_hierarchy* h) const { lc_hierarchy_free(h); }
};
struct StringDeleter {
  void operator()(char* s) const { lc_string_free(s); }
};

using Graph = std::unique_ptr<lc_graph, GraphDeleter>;
using Matrix = std::unique_ptr<lc_matrix, MatrixDeleter>;
using Clustering = std::unique_ptr<lc_clustering, ClusteringDeleter>;
using HierarchyPtr = std::unique_ptr<lc_hierarchy, HierarchyDeleter>;
using Text = std::unique_ptr<char, StringDeleter>;

int exit_code_for(lc_status s) {
  switch (s) {
    case LC_INVALID_ARGUMENT:
    case LC_INVALID_SIZE:
    case LC_PARSE_ERROR:
    case LC_IO_ERROR:
    case LC_EMPTY_SEED_SET:
    case LC_INVALID_SEED:
    case LC_DUPLICATE_CENTER:
      return kExitUsage;
    case LC_DIVERGENT_RHO:
      return kExitDivergent;
    default:
      return kExitInvalid;
  }
}

void check(lc_status s) {
  if (s != LC_OK) {
    throw Failure{exit_code_for(s), std::string(lc_status_string(s)) + ": " + lc_last_error()};
  }
}

void usage_error(const std::string& message) { throw Failure{kExitUsage, message}; }

/// "1..10", "1,4,7" or a mix such as "1..3,9"; 1-based on input, 0-based out.
std::vector<int32_t> parse_centers(const std::string& text) {
  std::vector<int32_t> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size() || v < 1) usage_error("--centers: bad node index '" + s + "'");
    return static_cast<int32_t>(v);
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) usage_error("--centers: empty entry");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(item) - 1);
      continue;
    }
    const int32_t lo = number(item.substr(0, dots));
    const int32_t hi = number(item.substr(dots + 2));
    if (hi < lo) usage_error("--centers: empty range '" + item + "'");
    for (int32_t v = lo; v <= hi; ++v) out.push_back(v - 1);
  }
  if (out.empty()) usage_error("--centers: no nodes given");
  return out;
}

std::vector<double> parse_reals(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage_error(std::string(flag) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) usage_error(std::string(flag) + ": empty list");
  return out;
}

lc_stencil parse_stencil(const std::string& name) {
  return name == "nine" ? LC_STENCIL_NINE_POINT : LC_STENCIL_FIVE_POINT;
}

lc_strength parse_strength(const std::string& name) {
  return name == "unit" ? LC_STRENGTH_UNIT : LC_STRENGTH_ABS_OFFDIAG;
}

lc_method parse_method(const std::string& name) {
  lc_method m;
  check(lc_method_parse(name.c_str(), &m));
  return m;
}

struct Source {
  std::vector<int> grid;
  int path = 0;
  std::string mtx;
  std::string stencil = "five";
  std::string strength = "abs";
  double padding = 0.1;

  void add(CLI::App* app) {
    auto* g = app->add_option("--grid", grid, "Structured NX x NY grid")->expected(2);
    auto* p = app->add_option("--path", path, "Path of N nodes")->check(CLI::PositiveNumber);
    auto* m = app->add_option("--mtx", mtx, "Matrix Market file");
    g->excludes(p)->excludes(m);
    p->excludes(m);
    app->add_option("--stencil", stencil, "Grid stencil")
        ->check(CLI::IsMember({"five", "nine"}))
        ->capture_default_str();
    app->add_option("--strength", strength, "Coupling strength for imported matrices")
        ->check(CLI::IsMember({"unit", "abs"}))
        ->capture_default_str();
    app->add_option("--padding", padding, "Padding added before inverting strengths")
        ->capture_default_str();
  }

  bool given() const { return !grid.empty() || path > 0 || !mtx.empty(); }

  ordered_json describe() const {
    ordered_json j;
    if (!grid.empty()) {
      j["kind"] = "grid";
      j["nx"] = grid[0];
      j["ny"] = grid[1];
      j["stencil"] = stencil;
    } else if (path > 0) {
      j["kind"] = "path";
      j["n"] = path;
    } else {
      j["kind"] = "mtx";
      j["file"] = mtx;
      j["strength"] = strength;
      j["padding"] = padding;
    }
    return j;
  }

  Matrix matrix() const {
    if (!given()) usage_error("one of --grid, --path or --mtx is required");
    lc_matrix* m = nullptr;
    if (!grid.empty()) {
      check(lc_matrix_grid_laplacian(grid[0], grid[1], parse_stencil(stencil), &m));
    } else if (path > 0) {
      check(lc_matrix_path_laplacian(path, &m));
    } else {
      check(lc_matrix_load_mtx(mtx.c_str(), &m));
    }
    return Matrix(m);
  }

  Graph graph() const {
    if (!given()) usage_error("one of --grid, --path or --mtx is required");
    lc_graph* g = nullptr;
    if (!grid.empty()) {
      check(lc_graph_grid(grid[0], grid[1], parse_stencil(stencil), &g));
    } else if (path > 0) {
      check(lc_graph_path(path, 1.0, &g));
    } else {
      Matrix m = matrix();
      check(lc_graph_from_matrix(m.get(), parse_strength(strength), padding, &g));
    }
    check(lc_graph_validate(g));
    return Graph(g);
  }
};

struct LloydFlags {
  int t_max = 5;
  int t_bf_max = 0;
  double tol = 1e-12;
  bool no_tiebreak = false;
  int rebalance_sweeps = 4;

  void add(CLI::App* app) {
    app->add_option("--tmax", t_max, "Lloyd iteration cap")->capture_default_str();
    app->add_option("--tbfmax", t_bf_max, "Bellman-Ford sweep cap (0: node count)")
        ->capture_default_str();
    app->add_option("--tol", tol, "Relative tolerance of the tie test")->capture_default_str();
    app->add_flag("--no-tiebreak", no_tiebreak, "Disable size tie-breaking");
    app->add_option("--rebalance-sweeps", rebalance_sweeps, "Rebalance cap")
        ->capture_default_str();
  }

  lc_cluster_options options() const {
    lc_cluster_options o;
    lc_cluster_options_default(&o);
    o.t_max = t_max;
    o.t_bf_max = t_bf_max;
    o.tol = tol;
    o.tiebreak = no_tiebreak ? 0 : 1;
    o.rebalance_sweeps = rebalance_sweeps;
    return o;
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitUsage, "cannot open " + path + " for writing"};
  out << text;
  if (!out) throw Failure{kExitInvalid, "failed writing " + path};
}

ordered_json one_based(const std::vector<int32_t>& v) {
  ordered_json j = ordered_json::array();
  for (int32_t x : v) j.push_back(x + 1);
  return j;
}

ordered_json real(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

struct ClusterCmd {
  Source source;
  LloydFlags lloyd;
  int nclusters = 0;
  uint64_t seed = 0;
  std::string centers;
  std::string method = "rebalanced";
  std::string out;
  std::string membership_out;
  std::string edges_out;

  int run() {
    const lc_method m = parse_method(method);
    Graph g = source.graph();
    const int32_t n = lc_graph_num_nodes(g.get());

    std::vector<int32_t> seeds;
    if (lc_method_takes_seeds(m)) {
      if (!centers.empty()) {
        seeds = parse_centers(centers);
        if (nclusters > 0 && static_cast<int>(seeds.size()) != nclusters) {
          usage_error("--nclusters does not match the number of --centers");
        }
      } else {
        if (nclusters < 1) usage_error("--nclusters or --centers is required for " + method);
        if (nclusters > n) usage_error("--nclusters exceeds the number of nodes");
        seeds.resize(static_cast<std::size_t>(nclusters));
        check(lc_random_centers(n, nclusters, seed, 0, seeds.data()));
      }
    } else if (nclusters > 0 || !centers.empty()) {
      std::cerr << "warning: " << method
                << " chooses its own clusters; --nclusters and --centers are ignored\n";
    }

    const lc_cluster_options opts = lloyd.options();
    lc_clustering* raw = nullptr;
    check(lc_cluster(g.get(), m, seeds.data(), static_cast<int32_t>(seeds.size()), &opts, &raw));
    Clustering c(raw);

    lc_validation v;
    check(lc_clustering_validate(g.get(), c.get(), &v));
    if (!v.valid) throw Failure{kExitInvalid, std::string("invalid clustering: ") + v.message};

    const int32_t k = lc_clustering_num_clusters(c.get());
    std::vector<double> diameters(static_cast<std::size_t>(k));
    std::vector<int32_t> sizes(static_cast<std::size_t>(k));
    std::vector<int32_t> final_centers(static_cast<std::size_t>(k));
    lc_stats stats;
    check(lc_clustering_stats(g.get(), c.get(), &stats, diameters.data(), sizes.data()));
    lc_clustering_centers(c.get(), final_centers.data());

    if (!membership_out.empty()) check(lc_clustering_write_csv(c.get(), membership_out.c_str()));
    if (!edges_out.empty()) check(lc_graph_write_edges_csv(g.get(), edges_out.c_str()));

    ordered_json j;
    j["schema"] = 1;
    j["command"] = "cluster";
    j["graph"] = source.describe();
    j["graph"]["nodes"] = n;
    j["graph"]["edges"] = lc_graph_num_edges(g.get());
    j["method"] = method;
    j["seed"] = seed;
    j["initial_centers"] = one_based(seeds);
    j["clusters"] = k;
    j["centers"] = one_based(final_centers);
    j["iterations"] = lc_clustering_iterations(c.get());
    j["rebalance_sweeps"] = lc_clustering_rebalance_sweeps(c.get());
    j["converged"] = lc_clustering_converged(c.get()) != 0;
    j["cap_reached"] = lc_clustering_cap_reached(c.get()) != 0;
    j["valid"] = true;
    j["stats"] = {{"energy", real(stats.energy)},
                  {"energy_delta", real(stats.energy_delta)},
                  {"delta", real(stats.delta)},
                  {"zero_diameter_count", stats.zero_diameter_count},
                  {"max_diameter", real(stats.max_diameter)},
                  {"diameter_std", real(stats.diameter_std)},
                  {"min_size", stats.min_size},
                  {"max_size", stats.max_size},
                  {"size_std", real(stats.size_std)},
                  {"sizes", sizes},
                  {"diameters", diameters}};
    emit(j.dump(2) + "\n", out);
    return kExitOk;
  }

  void add(CLI::App& parent) {
    auto* app = parent.add_subcommand("cluster", "Cluster a graph and report statistics");
    source.add(app);
    lloyd.add(app);
    app->add_option("--nclusters", nclusters, "Number of random initial centers");
    app->add_option("--seed", seed, "Seed for the random centers")->capture_default_str();
    app->add_option("--centers", centers, "Initial centers, e.g. 1..10 or 1,5,9 (1-based)");
    app->add_option("--method", method, "standard|balanced|rebalanced|greedy|mis2")
        ->capture_default_str();
    app->add_option("--out", out, "JSON report path (default: stdout)");
    app->add_option("--membership-out", membership_out, "Membership CSV path");
    app->add_option("--edges-out", edges_out, "Edge list CSV path");
    app->callback([this] { result = run(); });
  }

  int result = kExitOk;
};

struct ExperimentCmd {
  Source source;
  LloydFlags lloyd;
  double frac = 0.1;
  int runs = 100;
  uint64_t seed = 0;
  std::string out;
  std::string summary_out;
  bool worst = false;
  int nodes = 30;
  int clusters = 10;
  int demo_tmax = 100;
  std::string ppc = "3,5,8,10,12,15,19";
  int levels = 2;
  std::string method = "rebalanced";
  int nu = 2;
  int result = kExitOk;

  int run_table(bool tiebreak) {
    Graph g = source.graph();
    const lc_cluster_options opts = lloyd.options();
    char* rows = nullptr;
    char* summary = nullptr;
    if (tiebreak) {
      check(lc_experiment_tiebreak(g.get(), frac, runs, seed, &opts, &rows, &summary));
    } else {
      check(lc_experiment_compare(g.get(), frac, runs, seed, &opts, &rows, &summary));
    }
    Text r(rows), s(summary);
    emit(r.get(), out);
    if (summary_out.empty()) {
      std::cerr << s.get();
    } else {
      emit(s.get(), summary_out);
    }
    return kExitOk;
  }

  int run_sweep() {
    Matrix a = source.matrix();
    lc_amg_options opts;
    lc_amg_options_default(&opts);
    opts.levels = levels;
    opts.method = parse_method(method);
    opts.strength = parse_strength(source.strength);
    opts.padding = source.padding;
    opts.t_max = lloyd.t_max;
    opts.rebalance_sweeps = lloyd.rebalance_sweeps;
    const auto points = parse_reals(ppc, "--ppc");
    char* csv = nullptr;
    check(lc_experiment_sweep(a.get(), points.data(), static_cast<int32_t>(points.size()), runs,
                              seed, &opts, nu, &csv));
    Text t(csv);
    emit(t.get(), out);
    return kExitOk;
  }

  int run_seed_demo() {
    char* csv = nullptr;
    double optimal = 0.0;
    check(lc_experiment_seed_demo(worst ? 1 : 0, seed, nodes, clusters, demo_tmax,
                                  lloyd.rebalance_sweeps, &csv, &optimal));
    Text t(csv);
    emit(t.get(), out);
    std::cerr << "optimal equal-split energy: " << optimal << "\n";
    return kExitOk;
  }

  void add(CLI::App& parent) {
    auto* app = parent.add_subcommand("experiment", "Reproducible clustering studies (CSV)");
    app->require_subcommand(1);

    auto common = [this](CLI::App* sub) {
      sub->add_option("--seed", seed, "Master seed")->capture_default_str();
      sub->add_option("--out", out, "CSV path (default: stdout)");
    };

    auto* tb = app->add_subcommand("tiebreak", "Balanced Lloyd with and without tie-breaking");
    auto* cp = app->add_subcommand("compare", "Standard vs balanced vs rebalanced Lloyd");
    for (auto* sub : {tb, cp}) {
      source.add(sub);
      lloyd.add(sub);
      common(sub);
      sub->add_option("--frac", frac, "Clusters as a fraction of the nodes")->capture_default_str();
      sub->add_option("--runs", runs, "Number of seedings")->capture_default_str();
      sub->add_option("--summary-out", summary_out, "Summary CSV path (default: stderr)");
    }
    tb->callback([this] { result = run_table(true); });
    cp->callback([this] { result = run_table(false); });

    auto* sw = app->add_subcommand("sweep", "Cluster size against AMG rho, chi and WPD");
    source.add(sw);
    common(sw);
    sw->add_option("--ppc", ppc, "Points per cluster, comma separated")->capture_default_str();
    sw->add_option("--runs", runs, "Runs per cluster size")->capture_default_str();
    sw->add_option("--levels", levels, "Hierarchy levels")->capture_default_str();
    sw->add_option("--method", method, "Clustering method")->capture_default_str();
    sw->add_option("--nu", nu, "Relaxation sweeps per side of the cycle")->capture_default_str();
    sw->add_option("--tmax", lloyd.t_max, "Lloyd iteration cap")->capture_default_str();
    sw->add_option("--rebalance-sweeps", lloyd.rebalance_sweeps, "Rebalance cap")
        ->capture_default_str();
    sw->callback([this] { result = run_sweep(); });

    auto* sd = app->add_subcommand("seed-demo", "Energy traces on a path from two seedings");
    common(sd);
    sd->add_flag("--worst", worst, "Seed the first nodes instead of random ones");
    sd->add_option("--nodes", nodes, "Path length")->capture_default_str();
    sd->add_option("--clusters", clusters, "Number of clusters")->capture_default_str();
    sd->add_option("--tmax", demo_tmax, "Lloyd iteration cap")->capture_default_str();
    sd->add_option("--rebalance-sweeps", lloyd.rebalance_sweeps, "Rebalance cap")
        ->capture_default_str();
    sd->callback([this] { result = run_seed_demo(); });
  }
};

struct AmgCmd {
  Source source;
  int levels = 2;
  std::string method = "rebalanced";
  double points_per_cluster = 10.0;
  uint64_t seed = 0;
  int max_iters = 100;
  double rtol = 1e-10;
  int nu = 2;
  int t_max = 5;
  int rebalance_sweeps = 4;
  int coarse_floor = 100;
  bool beta = false;
  std::string out;
  int result = kExitOk;

  int run() {
    Matrix a = source.matrix();
    lc_amg_options opts;
    lc_amg_options_default(&opts);
    opts.levels = levels;
    opts.method = parse_method(method);
    opts.points_per_cluster = points_per_cluster;
    opts.seed = seed;
    opts.strength = parse_strength(source.strength);
    opts.padding = source.padding;
    opts.coarse_size_floor = coarse_floor;
    opts.t_max = t_max;
    opts.rebalance_sweeps = rebalance_sweeps;

    lc_hierarchy* raw = nullptr;
    check(lc_amg_setup(a.get(), &opts, &raw));
    HierarchyPtr h(raw);
    for (int32_t i = 0; i < lc_hierarchy_num_warnings(h.get()); ++i) {
      std::cerr << "warning: " << lc_hierarchy_warning(h.get(), i) << "\n";
    }

    lc_amg_report report;
    std::vector<double> residuals(static_cast<std::size_t>(std::max(max_iters, 0)) + 1);
    int32_t n_res = 0;
    const lc_status status =
        lc_amg_solve_report(h.get(), seed, max_iters, rtol, nu, &report, residuals.data(), &n_res);
    if (status != LC_OK && status != LC_DIVERGENT_RHO) check(status);
    residuals.resize(static_cast<std::size_t>(n_res));

    ordered_json j;
    j["schema"] = 1;
    j["command"] = "amg";
    j["matrix"] = source.describe();
    j["method"] = method;
    j["points_per_cluster"] = points_per_cluster;
    j["seed"] = seed;
    j["nu"] = nu;
    ordered_json lv = ordered_json::array();
    for (int32_t l = 0; l < lc_hierarchy_num_levels(h.get()); ++l) {
      lv.push_back({{"size", lc_hierarchy_level_size(h.get(), l)},
                    {"nnz", lc_hierarchy_level_nnz(h.get(), l)}});
    }
    j["levels"] = lv;
    j["rho"] = real(report.rho);
    j["chi"] = real(report.chi);
    j["wpd"] = real(report.wpd);
    j["iterations"] = report.iterations;
    j["converged"] = report.converged != 0;
    j["residuals"] = residuals;

    if (beta) {
      std::vector<double> per(static_cast<std::size_t>(lc_hierarchy_level_size(h.get(), 1)));
      double b = 0.0;
      check(lc_amg_beta(h.get(), &b, per.data()));
      double sum = 0.0;
      for (double x : per) sum += x;
      j["beta"] = {{"beta", b}, {"sum_per_cluster", sum}, {"per_cluster", per}};
    }
    emit(j.dump(2) + "\n", out);
    if (status == LC_DIVERGENT_RHO) {
      std::cerr << "error: " << lc_last_error() << "\n";
      return kExitDivergent;
    }
    return kExitOk;
  }

  void add(CLI::App& parent) {
    auto* app = parent.add_subcommand("amg", "Smoothed-aggregation solver report");
    source.add(app);
    app->add_option("--levels", levels, "Total levels (1: direct solve)")->capture_default_str();
    app->add_option("--method", method, "Clustering method")->capture_default_str();
    app->add_option("--points-per-cluster", points_per_cluster, "Target cluster size")
        ->capture_default_str();
    app->add_option("--seed", seed, "Seed for centers and the initial guess")->capture_default_str();
    app->add_option("--max-iters", max_iters, "Cycle cap")->capture_default_str();
    app->add_option("--rtol", rtol, "Relative residual target")->capture_default_str();
    app->add_option("--nu", nu, "Relaxation sweeps per side of the cycle")->capture_default_str();
    app->add_option("--tmax", t_max, "Lloyd iteration cap")->capture_default_str();
    app->add_option("--rebalance-sweeps", rebalance_sweeps, "Rebalance cap")->capture_default_str();
    app->add_option("--coarse-floor", coarse_floor, "Stop coarsening at this size")
        ->capture_default_str();
    app->add_flag("--beta", beta, "Report the approximation constant per cluster");
    app->add_option("--out", out, "JSON report path (default: stdout)");
    app->callback([this] { result = run(); });
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lloyd graph clustering and smoothed-aggregation multigrid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lc_version()));

  ClusterCmd cluster;
  ExperimentCmd experiment;
  AmgCmd amg;
  cluster.add(app);
  experiment.add(app);
  amg.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
  return cluster.result | experiment.result | amg.result;
}
