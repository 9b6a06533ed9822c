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

#include <filesystem>
#include <istream>

#include <Eigen/SparseCore>

namespace lloyd {

/// General real sparse matrix in compressed-row form. Used for the system
/// operator, restriction/interpolation operators and Galerkin coarse operators.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class Stencil { kFivePoint, kNinePoint };

/// Reads a coordinate-format Matrix Market file (1-based indices).
/// Duplicate entries are summed; symmetric and skew-symmetric storage is
/// expanded to the full pattern. Pattern matrices get unit values.
SparseMatrix load_matrix_market(const std::filesystem::path& path);
SparseMatrix read_matrix_market(std::istream& in);

void write_matrix_market(const SparseMatrix& a, const std::filesystem::path& path);

// Dirichlet-style model operators: SPD, unit off-diagonal couplings.
SparseMatrix path_laplacian(int n);
SparseMatrix grid_laplacian(int nx, int ny, Stencil stencil = Stencil::kFivePoint);

}  // namespace lloyd
