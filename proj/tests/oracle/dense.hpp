// Copyright 2026 The Substinet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense reference computations on small matrices indexed 0..n-1.

#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

Matrix zeros(std::size_t n);
Matrix identity(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
/// Gauss-Jordan with partial pivoting.
Matrix inverse(Matrix a);

struct Eigen2 {
  /// Ascending.
  std::vector<double> values;
  /// Column k of `vectors` belongs to values[k].
  Matrix vectors;
};
/// Cyclic Jacobi rotations on a symmetric matrix.
Eigen2 jacobi_eigen(Matrix a);
Matrix pseudo_inverse(const Matrix& sym);

/// w[i][j] is the weight of edge i -> j. Fixed-point iteration until the L1
/// change drops below 1e-15.
std::vector<double> pagerank(const Matrix& w, double damping);
/// Row sums of (I - delta W)^-1 - I.
std::vector<double> katz_inverse(const Matrix& w, double delta);
/// Row sums of sum_{d=1..terms} delta^d W^d.
std::vector<double> katz_series(const Matrix& w, double delta, int terms);
/// Per-step growth of ||W^k||; valid for primitive non-negative W.
double spectral_radius(const Matrix& w, int iterations = 2000);

/// Current-flow betweenness of a connected graph with symmetric
/// conductances: every unordered source/target pair, throughput of each
/// other node, times 2 / ((n-1)(n-2)).
std::vector<double> flow_betweenness(const Matrix& conductance);

double modularity(const Matrix& sym, const std::vector<int>& community, double gamma = 1.0);
/// Exhaustive search over every partition of at most 8 nodes.
std::pair<std::vector<int>, double> best_partition(const Matrix& sym, double gamma = 1.0);

struct Coords {
  std::vector<double> x, y;
  double lambda1 = 0.0, lambda2 = 0.0;
};
/// Classical scaling of a similarity kernel: eigenvectors of H K H times
/// the square roots of the two largest eigenvalues (signs arbitrary).
Coords classical_scaling(const Matrix& kernel);

/// Weighted Gaussian density at (x, y) with no truncation.
double kde_at(const std::vector<std::pair<double, double>>& points, const std::vector<double>& weights, double h,
              double x, double y);

}  // namespace oracle
