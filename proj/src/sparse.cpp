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

#include "lloyd/sparse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lloyd/error.hpp"

namespace lloyd {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void parse_error(long line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) parse_error(1, "empty input");
  ++line_no;

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") parse_error(line_no, "missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") parse_error(line_no, "unsupported object '" + object + "'");
  if (format != "coordinate") parse_error(line_no, "only coordinate format is supported");
  if (field != "real" && field != "integer" && field != "pattern" && field != "double") {
    parse_error(line_no, "unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric") {
    parse_error(line_no, "unsupported symmetry '" + symmetry + "'");
  }
  const bool pattern = field == "pattern";

  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
      parse_error(line_no, "malformed size line");
    }
    break;
  }
  if (nnz < 0) parse_error(line_no + 1, "missing size line");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(symmetry == "general" ? nnz : 2 * nnz));
  long read = 0;
  while (read < nnz && std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream entry(line);
    long i = 0, j = 0;
    double v = 1.0;
    if (!(entry >> i >> j)) parse_error(line_no, "malformed entry");
    if (!pattern && !(entry >> v)) parse_error(line_no, "missing value");
    if (i < 1 || i > rows || j < 1 || j > cols) parse_error(line_no, "index out of range");
    triplets.emplace_back(i - 1, j - 1, v);
    if (i != j && symmetry == "symmetric") triplets.emplace_back(j - 1, i - 1, v);
    if (i != j && symmetry == "skew-symmetric") triplets.emplace_back(j - 1, i - 1, -v);
    ++read;
  }
  if (read < nnz) {
    parse_error(line_no + 1, "expected " + std::to_string(nnz) + " entries, found " +
                                 std::to_string(read));
  }

  SparseMatrix a(rows, cols);
  a.setFromTriplets(triplets.begin(), triplets.end());  // sums duplicates
  a.makeCompressed();
  return a;
}

SparseMatrix load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(const SparseMatrix& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  for (Eigen::Index i = 0; i < a.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

SparseMatrix path_laplacian(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidSize, "path_laplacian needs n >= 1");
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 2.0);
    if (i > 0) t.emplace_back(i, i - 1, -1.0);
    if (i + 1 < n) t.emplace_back(i, i + 1, -1.0);
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SparseMatrix grid_laplacian(int nx, int ny, Stencil stencil) {
  if (nx < 1 || ny < 1) throw Error(ErrorCode::kInvalidSize, "grid_laplacian needs nx, ny >= 1");
  const bool diagonals = stencil == Stencil::kNinePoint;
  const double diag = diagonals ? 8.0 : 4.0;
  std::vector<Eigen::Triplet<double>> t;
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      const int i = x + nx * y;
      t.emplace_back(i, i, diag);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if ((dx == 0 && dy == 0) || (!diagonals && dx != 0 && dy != 0)) continue;
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || xx >= nx || yy < 0 || yy >= ny) continue;
          t.emplace_back(i, xx + nx * yy, -1.0);
        }
      }
    }
  }
  SparseMatrix a(nx * ny, nx * ny);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace lloyd
