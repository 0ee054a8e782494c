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

#include "substinet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "substinet/error.hpp"
#include "substinet/parallel.hpp"
#include "substinet/substitution.hpp"
#include "substinet/text_format.hpp"

namespace substinet {

namespace {

constexpr std::size_t kNodeBlock = 1024;

Eigen::MatrixXd dense_adjacency(const ConditionedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    for (const auto& e : g.out_edges_at(i)) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(*g.node_index(e.dst))) = e.weight;
    }
  }
  return a;
}

// Connected components of an undirected graph given as adjacency lists.
std::vector<std::vector<std::size_t>> components(const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(adj.size(), false);
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (std::size_t v : adj[comp[head]]) {
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Current-flow betweenness of one connected component with conductance
// matrix `c` (symmetric, zero diagonal). Returns unnormalized sums over
// unordered pairs {s, t} not containing the node.
std::vector<double> component_flow(const Eigen::MatrixXd& c) {
  const Eigen::Index n = c.rows();
  Eigen::MatrixXd lap = -c;
  for (Eigen::Index i = 0; i < n; ++i) lap(i, i) = c.row(i).sum();
  // Ground node 0 and invert the reduced Laplacian.
  Eigen::MatrixXd pot = Eigen::MatrixXd::Zero(n, n);
  if (n > 1) {
    Eigen::MatrixXd reduced = lap.bottomRightCorner(n - 1, n - 1);
    pot.bottomRightCorner(n - 1, n - 1) = reduced.ldlt().solve(Eigen::MatrixXd::Identity(n - 1, n - 1));
  }

  std::vector<double> score(static_cast<std::size_t>(n), 0.0);
  std::vector<double> row(static_cast<std::size_t>(n));
  std::vector<double> sorted(static_cast<std::size_t>(n));
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const double cond = c(a, b);
      if (cond == 0.0) continue;
      // Flow through edge (a, b) for the unit current s -> t is |r_s - r_t|.
      for (Eigen::Index i = 0; i < n; ++i) row[i] = cond * (pot(a, i) - pot(b, i));
      sorted = row;
      std::sort(sorted.begin(), sorted.end());
      prefix[0] = 0.0;
      for (std::size_t i = 0; i < sorted.size(); ++i) prefix[i + 1] = prefix[i] + sorted[i];
      double all_pairs = 0.0;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        all_pairs += (2.0 * static_cast<double>(i) - static_cast<double>(n) + 1.0) * sorted[i];
      }
      auto to_one = [&](double x) {
        const auto k = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
        const double below = static_cast<double>(k) * x - prefix[k];
        const double above = (prefix[sorted.size()] - prefix[k]) - static_cast<double>(sorted.size() - k) * x;
        return below + above;
      };
      // Each endpoint carries half the edge flow of every pair it is not part of.
      score[a] += 0.5 * (all_pairs - to_one(row[a]));
      score[b] += 0.5 * (all_pairs - to_one(row[b]));
    }
  }
  return score;
}

}  // namespace

std::optional<double> NodeScores::value(TokenId t) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
  if (it == nodes.end() || *it != t) return std::nullopt;
  return values[static_cast<std::size_t>(it - nodes.begin())];
}

NodeScores pagerank(const ConditionedGraph& g, const PageRankOptions& options) {
  if (g.empty()) fail("pagerank needs a nonempty graph");
  if (!(options.damping > 0.0 && options.damping < 1.0)) fail("pagerank damping must lie in (0, 1)");
  const std::size_t n = g.node_count();
  const double d = options.damping;

  struct In {
    std::size_t src;
    double p;
  };
  std::vector<std::size_t> in_offset(n + 1, 0);
  std::vector<double> strength(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : g.out_edges_at(i)) {
      strength[i] += e.weight;
      ++in_offset[*g.node_index(e.dst) + 1];
    }
  }
  std::partial_sum(in_offset.begin(), in_offset.end(), in_offset.begin());
  std::vector<In> in(in_offset.back());
  std::vector<std::size_t> cursor(in_offset.begin(), in_offset.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : g.out_edges_at(i)) in[cursor[*g.node_index(e.dst)]++] = {i, e.weight / strength[i]};
  }

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  const std::size_t blocks = parallel::block_count(n, kNodeBlock);
  std::vector<double> block_delta(blocks);
  double residual = 0.0;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (strength[i] == 0.0) dangling += x[i];
    }
    const double base = (d * dangling + (1.0 - d)) / static_cast<double>(n);
    parallel::for_each_block(n, kNodeBlock, [&](std::size_t blk, std::size_t b, std::size_t e) {
      double delta = 0.0;
      for (std::size_t v = b; v < e; ++v) {
        double acc = 0.0;
        for (std::size_t k = in_offset[v]; k < in_offset[v + 1]; ++k) acc += in[k].p * x[in[k].src];
        next[v] = base + d * acc;
        delta += std::abs(next[v] - x[v]);
      }
      block_delta[blk] = delta;
    });
    residual = std::accumulate(block_delta.begin(), block_delta.end(), 0.0);
    x.swap(next);
    if (residual < options.tolerance) {
      NodeScores out;
      out.nodes.assign(g.nodes().begin(), g.nodes().end());
      out.values = std::move(x);
      return out;
    }
  }
  throw ConvergenceError("pagerank did not converge in " + std::to_string(options.max_iterations) +
                             " iterations (residual " + format_double(residual) + ")",
                         residual);
}

NodeScores flow_betweenness(const ConditionedGraph& g, std::optional<TokenId> focal) {
  const ConditionedGraph sym = symmetric_variant(g, SymmetricMode::Bidirectional);
  const std::size_t n = sym.node_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : sym.out_edges_at(i)) {
      const std::size_t j = *sym.node_index(e.dst);
      if (j != i) adj[i].push_back(j);
    }
  }
  auto comps = components(adj);
  if (focal) {
    auto idx = sym.node_index(*focal);
    if (!idx) fail("focal token is not a node of the graph");
    std::erase_if(comps, [&](const auto& c) { return !std::binary_search(c.begin(), c.end(), *idx); });
  }

  NodeScores out;
  std::vector<std::pair<std::size_t, double>> scored;
  for (const auto& comp : comps) {
    const auto m = static_cast<Eigen::Index>(comp.size());
    if (m < 3) {
      for (std::size_t v : comp) scored.emplace_back(v, 0.0);
      continue;
    }
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (const auto& e : sym.out_edges_at(comp[a])) {
        const std::size_t j = *sym.node_index(e.dst);
        if (j == comp[a]) continue;
        const auto b = std::lower_bound(comp.begin(), comp.end(), j) - comp.begin();
        c(a, b) = e.weight;
      }
    }
    const std::vector<double> raw = component_flow(c);
    const double norm = static_cast<double>(m - 1) * static_cast<double>(m - 2);
    for (Eigen::Index a = 0; a < m; ++a) scored.emplace_back(comp[a], 2.0 * raw[a] / norm);
  }
  std::sort(scored.begin(), scored.end());
  for (const auto& [v, s] : scored) {
    out.nodes.push_back(sym.nodes()[v]);
    out.values.push_back(s);
  }
  return out;
}

double spectral_radius(const ConditionedGraph& g) {
  if (g.empty()) return 0.0;
  const Eigen::MatrixXd a = dense_adjacency(g);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  if (solver.info() != Eigen::Success) fail("eigenvalue computation failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

NodeScores katz_bonacich(const ConditionedGraph& g, double delta, bool power) {
  if (!std::isfinite(delta)) fail("katz attenuation must be finite");
  if (power) delta = -std::abs(delta);
  NodeScores out;
  out.nodes.assign(g.nodes().begin(), g.nodes().end());
  if (g.empty()) return out;
  const double radius = spectral_radius(g);
  if (radius > 0.0 && std::abs(delta) * radius >= 1.0 - 1e-12) {
    fail("katz attenuation |delta| = " + format_double(std::abs(delta)) +
         " must be below 1/lambda_max = " + format_double(1.0 / radius) +
         " (lambda_max = " + format_double(radius) + ")");
  }
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - delta * dense_adjacency(g);
  const Eigen::VectorXd rows = m.partialPivLu().solve(Eigen::VectorXd::Ones(n));
  out.values.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = rows(i) - 1.0;
  return out;
}

}  // namespace substinet
