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
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lloyd/error.hpp"
#include "lloyd/sparse.hpp"

namespace lloyd {

// Node and cluster indices are 0-based. kNoNode / kNoCluster mark "none" and
// "unassigned" respectively.
using NodeId = std::int32_t;
using ClusterId = std::int32_t;
using EdgeOffset = std::int64_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr ClusterId kNoCluster = -1;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Sparse non-negative weighted digraph in compressed-row form. Entry
/// (i, j, w) is the directed edge i -> j with length w. The transpose is kept
/// alongside so that incoming edges can be walked without a search.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Stores the arrays as given. Call validate_graph() (or use from_csr) to
  /// check the invariants.
  WeightedGraph(NodeId n_node, std::vector<EdgeOffset> row_offsets,
                std::vector<NodeId> col_indices, std::vector<double> weights);

  /// Builds and validates; throws Error on the first violation.
  static WeightedGraph from_csr(NodeId n_node, std::vector<EdgeOffset> row_offsets,
                                std::vector<NodeId> col_indices,
                                std::vector<double> weights);

  /// Builds from (i, j, w) triples; duplicates are not merged.
  struct Edge {
    NodeId from;
    NodeId to;
    double weight;
  };
  static WeightedGraph from_edges(NodeId n_node, std::span<const Edge> edges);

  NodeId num_nodes() const noexcept { return n_node_; }
  EdgeOffset num_edges() const noexcept { return static_cast<EdgeOffset>(col_indices_.size()); }
  bool symmetric_pattern() const noexcept { return symmetric_pattern_; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {col_indices_.data() + row_offsets_[i], col_indices_.data() + row_offsets_[i + 1]};
  }
  std::span<const double> weights(NodeId i) const {
    return {weights_.data() + row_offsets_[i], weights_.data() + row_offsets_[i + 1]};
  }
  /// Nodes k with a stored edge k -> j, and the matching W(k, j).
  std::span<const NodeId> in_neighbors(NodeId j) const {
    return {in_sources_.data() + in_offsets_[j], in_sources_.data() + in_offsets_[j + 1]};
  }
  std::span<const double> in_weights(NodeId j) const {
    return {in_weights_.data() + in_offsets_[j], in_weights_.data() + in_offsets_[j + 1]};
  }

  /// W(i, j), or 0 when the edge is not stored.
  double weight(NodeId i, NodeId j) const;

  std::span<const EdgeOffset> row_offsets() const noexcept { return row_offsets_; }
  std::span<const NodeId> col_indices() const noexcept { return col_indices_; }
  std::span<const double> all_weights() const noexcept { return weights_; }

 private:
  void build_transpose();

  NodeId n_node_ = 0;
  std::vector<EdgeOffset> row_offsets_{0};
  std::vector<NodeId> col_indices_;
  std::vector<double> weights_;
  bool symmetric_pattern_ = true;

  std::vector<EdgeOffset> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<double> in_weights_;
};

struct GraphIssue {
  ErrorCode code;
  NodeId row = kNoNode;
  NodeId col = kNoNode;
  std::string message;
};

/// Returns the first broken invariant, or nullopt for a valid graph.
std::optional<GraphIssue> validate_graph(const WeightedGraph& g);

/// Chain i <-> i+1 with uniform weight.
WeightedGraph path_graph(NodeId n, double w = 1.0);

/// Unit-weight lattice, row-major numbering (node = x + nx * y).
WeightedGraph grid_graph(NodeId nx, NodeId ny, Stencil stencil = Stencil::kFivePoint);

enum class Strength { kUnit, kAbsOffdiag };

/// Turns matrix couplings into edge lengths: strength plus padding on every
/// off-diagonal nonzero, then inverted so strong couplings are short edges.
WeightedGraph strength_to_distance(const SparseMatrix& a,
                                   Strength strength = Strength::kAbsOffdiag,
                                   double padding = 0.1);

/// One "i,j,w" line per stored edge (1-based), preceded by a header row.
void write_edge_list_csv(const WeightedGraph& g, const std::filesystem::path& path);

}  // namespace lloyd
