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

#include "lloyd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lloyd {

namespace {

bool structure_ok(NodeId n, std::span<const EdgeOffset> offsets, std::span<const NodeId> cols,
                  std::span<const double> weights) {
  if (n < 0 || offsets.size() != static_cast<std::size_t>(n) + 1) return false;
  if (offsets.front() != 0 || cols.size() != weights.size()) return false;
  if (offsets.back() != static_cast<EdgeOffset>(cols.size())) return false;
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    if (offsets[i] < offsets[i - 1]) return false;
  }
  return std::all_of(cols.begin(), cols.end(), [n](NodeId j) { return j >= 0 && j < n; });
}

std::string edge_text(NodeId i, NodeId j) {
  std::ostringstream os;
  os << "(" << i + 1 << ", " << j + 1 << ")";
  return os.str();
}

}  // namespace

WeightedGraph::WeightedGraph(NodeId n_node, std::vector<EdgeOffset> row_offsets,
                             std::vector<NodeId> col_indices, std::vector<double> weights)
    : n_node_(n_node),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      weights_(std::move(weights)) {
  build_transpose();
}

WeightedGraph WeightedGraph::from_csr(NodeId n_node, std::vector<EdgeOffset> row_offsets,
                                      std::vector<NodeId> col_indices,
                                      std::vector<double> weights) {
  WeightedGraph g(n_node, std::move(row_offsets), std::move(col_indices), std::move(weights));
  if (auto issue = validate_graph(g)) throw Error(issue->code, issue->message);
  return g;
}

WeightedGraph WeightedGraph::from_edges(NodeId n_node, std::span<const Edge> edges) {
  if (n_node < 0) throw Error(ErrorCode::kInvalidSize, "negative node count");
  std::vector<EdgeOffset> offsets(static_cast<std::size_t>(n_node) + 1, 0);
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= n_node || e.to < 0 || e.to >= n_node) {
      throw Error(ErrorCode::kMalformedOffsets, "edge endpoint out of range " + edge_text(e.from, e.to));
    }
    ++offsets[e.from + 1];
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<NodeId> cols(edges.size());
  std::vector<double> weights(edges.size());
  std::vector<EdgeOffset> next(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    const EdgeOffset at = next[e.from]++;
    cols[at] = e.to;
    weights[at] = e.weight;
  }
  return from_csr(n_node, std::move(offsets), std::move(cols), std::move(weights));
}

void WeightedGraph::build_transpose() {
  const std::size_t n = n_node_ > 0 ? static_cast<std::size_t>(n_node_) : 0;
  in_offsets_.assign(n + 1, 0);
  in_sources_.clear();
  in_weights_.clear();
  if (!structure_ok(n_node_, row_offsets_, col_indices_, weights_)) {
    symmetric_pattern_ = false;
    return;
  }
  for (NodeId j : col_indices_) ++in_offsets_[j + 1];
  for (std::size_t i = 1; i <= n; ++i) in_offsets_[i] += in_offsets_[i - 1];
  in_sources_.resize(col_indices_.size());
  in_weights_.resize(col_indices_.size());
  std::vector<EdgeOffset> next(in_offsets_.begin(), in_offsets_.end() - 1);
  for (NodeId i = 0; i < n_node_; ++i) {
    for (EdgeOffset e = row_offsets_[i]; e < row_offsets_[i + 1]; ++e) {
      const EdgeOffset at = next[col_indices_[e]]++;
      in_sources_[at] = i;
      in_weights_[at] = weights_[e];
    }
  }

  symmetric_pattern_ = true;
  std::vector<NodeId> out, in;
  for (NodeId i = 0; i < n_node_ && symmetric_pattern_; ++i) {
    auto o = neighbors(i);
    auto t = in_neighbors(i);
    if (o.size() != t.size()) {
      symmetric_pattern_ = false;
      break;
    }
    out.assign(o.begin(), o.end());
    in.assign(t.begin(), t.end());
    std::sort(out.begin(), out.end());
    std::sort(in.begin(), in.end());
    symmetric_pattern_ = out == in;
  }
}

double WeightedGraph::weight(NodeId i, NodeId j) const {
  auto cols = neighbors(i);
  auto w = weights(i);
  for (std::size_t e = 0; e < cols.size(); ++e) {
    if (cols[e] == j) return w[e];
  }
  return 0.0;
}

std::optional<GraphIssue> validate_graph(const WeightedGraph& g) {
  const NodeId n = g.num_nodes();
  auto offsets = g.row_offsets();
  auto cols = g.col_indices();
  auto weights = g.all_weights();
  auto malformed = [](NodeId row, std::string msg) {
    return GraphIssue{ErrorCode::kMalformedOffsets, row, kNoNode, std::move(msg)};
  };
  if (n < 0) return malformed(kNoNode, "negative node count");
  if (offsets.size() != static_cast<std::size_t>(n) + 1) {
    return malformed(kNoNode, "row_offsets must have n_node + 1 entries");
  }
  if (offsets.front() != 0) return malformed(0, "row_offsets must start at 0");
  if (cols.size() != weights.size()) {
    return malformed(kNoNode, "col_indices and weights differ in length");
  }
  for (NodeId i = 0; i < n; ++i) {
    if (offsets[i + 1] < offsets[i]) {
      return malformed(i, "row_offsets decrease at row " + std::to_string(i + 1));
    }
  }
  if (offsets.back() != static_cast<EdgeOffset>(cols.size())) {
    return malformed(n - 1, "row_offsets end does not match edge count");
  }
  for (NodeId i = 0; i < n; ++i) {
    for (EdgeOffset e = offsets[i]; e < offsets[i + 1]; ++e) {
      const NodeId j = cols[e];
      if (j < 0 || j >= n) {
        return GraphIssue{ErrorCode::kMalformedOffsets, i, j,
                          "column index out of range in row " + std::to_string(i + 1)};
      }
      if (j == i) {
        return GraphIssue{ErrorCode::kSelfLoop, i, i,
                          "self loop at node " + std::to_string(i + 1)};
      }
      if (!std::isfinite(weights[e])) {
        return GraphIssue{ErrorCode::kInvalidArgument, i, j,
                          "non-finite weight on edge " + edge_text(i, j)};
      }
      if (!(weights[e] > 0.0)) {
        std::ostringstream os;
        os << "non-positive weight " << weights[e] << " on edge " << edge_text(i, j);
        return GraphIssue{ErrorCode::kNegativeWeight, i, j, os.str()};
      }
    }
  }
  return std::nullopt;
}

WeightedGraph path_graph(NodeId n, double w) {
  if (n < 1) throw Error(ErrorCode::kInvalidSize, "path_graph needs at least one node");
  if (!(w > 0.0)) throw Error(ErrorCode::kNegativeWeight, "path_graph weight must be positive");
  std::vector<WeightedGraph::Edge> edges;
  edges.reserve(2 * static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) {
    if (i > 0) edges.push_back({i, i - 1, w});
    if (i + 1 < n) edges.push_back({i, i + 1, w});
  }
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph grid_graph(NodeId nx, NodeId ny, Stencil stencil) {
  if (nx < 1 || ny < 1) throw Error(ErrorCode::kInvalidSize, "grid_graph needs nx, ny >= 1");
  const bool diagonals = stencil == Stencil::kNinePoint;
  std::vector<WeightedGraph::Edge> edges;
  for (NodeId y = 0; y < ny; ++y) {
    for (NodeId x = 0; x < nx; ++x) {
      const NodeId i = x + nx * y;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (!diagonals && dx != 0 && dy != 0) continue;
          const NodeId xx = x + dx, yy = y + dy;
          if (xx < 0 || xx >= nx || yy < 0 || yy >= ny) continue;
          edges.push_back({i, xx + nx * yy, 1.0});
        }
      }
    }
  }
  return WeightedGraph::from_edges(nx * ny, edges);
}

WeightedGraph strength_to_distance(const SparseMatrix& a, Strength strength, double padding) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kNotSquare, "strength_to_distance needs a square matrix");
  if (!(padding > 0.0)) throw Error(ErrorCode::kInvalidArgument, "padding must be positive");
  const auto n = static_cast<NodeId>(a.rows());
  std::vector<EdgeOffset> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<NodeId> cols;
  std::vector<double> weights;
  cols.reserve(static_cast<std::size_t>(a.nonZeros()));
  weights.reserve(static_cast<std::size_t>(a.nonZeros()));
  for (NodeId i = 0; i < n; ++i) {
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) {
      const auto j = static_cast<NodeId>(it.col());
      if (j == i || it.value() == 0.0) continue;
      const double strong = strength == Strength::kUnit ? 1.0 : std::abs(it.value());
      cols.push_back(j);
      weights.push_back(1.0 / (strong + padding));
    }
    offsets[i + 1] = static_cast<EdgeOffset>(cols.size());
  }
  return WeightedGraph::from_csr(n, std::move(offsets), std::move(cols), std::move(weights));
}

void write_edge_list_csv(const WeightedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "i,j,w\n";
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    auto cols = g.neighbors(i);
    auto w = g.weights(i);
    for (std::size_t e = 0; e < cols.size(); ++e) {
      out << i + 1 << ',' << cols[e] + 1 << ',' << w[e] << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace lloyd
