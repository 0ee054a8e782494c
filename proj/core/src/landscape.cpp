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

#include "substinet/landscape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include <Eigen/Dense>

#include "substinet/context.hpp"
#include "substinet/error.hpp"
#include "substinet/parallel.hpp"

namespace substinet {

namespace {

constexpr std::size_t kSentenceBlock = 1024;
constexpr std::size_t kRowBlock = 8;
// Kernel contributions beyond this many bandwidths are below 1e-13 of the peak.
constexpr double kKernelReach = 8.0;

std::unordered_map<std::uint32_t, std::uint32_t> cluster_of(const std::vector<std::vector<TokenId>>& clusters) {
  std::unordered_map<std::uint32_t, std::uint32_t> out;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    for (TokenId t : clusters[k]) {
      if (!out.emplace(t.value, static_cast<std::uint32_t>(k)).second) {
        fail("token " + std::to_string(t.value) + " appears in more than one cluster");
      }
    }
  }
  return out;
}

// Flips `v` so that v[anchor] >= 0, or the largest entry is positive when the
// anchor entry is zero.
void orient(Eigen::VectorXd& v, std::size_t anchor) {
  const auto a = static_cast<Eigen::Index>(anchor);
  constexpr double tiny = 1e-12;
  if (std::abs(v(a)) > tiny) {
    if (v(a) < 0.0) v = -v;
    return;
  }
  Eigen::Index big = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(big)) + tiny) big = i;
  }
  if (v(big) < 0.0) v = -v;
}

}  // namespace

std::vector<std::vector<double>> cluster_kernel(const ConditionedGraph& g,
                                                const std::vector<std::vector<TokenId>>& clusters) {
  const auto member = cluster_of(clusters);
  const std::size_t n = clusters.size();
  std::vector<std::vector<double>> k(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) {
    auto a = member.find(e.src.value);
    auto b = member.find(e.dst.value);
    if (a == member.end() || b == member.end()) continue;
    k[a->second][b->second] += 0.5 * e.weight;
    k[b->second][a->second] += 0.5 * e.weight;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      k[a][b] /= static_cast<double>(clusters[a].size()) * static_cast<double>(clusters[b].size());
    }
  }
  return k;
}

Projection project_kernel(const std::vector<std::vector<double>>& kernel, std::size_t anchor) {
  const std::size_t n = kernel.size();
  if (n < 2) fail("projection needs at least 2 clusters");
  if (anchor >= n) fail("projection anchor out of range");
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd k(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (kernel[static_cast<std::size_t>(i)].size() != n) fail("projection kernel must be square");
    for (Eigen::Index j = 0; j < m; ++j) k(i, j) = kernel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  k = 0.5 * (k + k.transpose());
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd centered = h * k * h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered);
  if (solver.info() != Eigen::Success) fail("kernel eigendecomposition failed");

  const Eigen::VectorXd& values = solver.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  Projection out;
  out.points.assign(n, Point{});
  std::array<double, 2> lambda{};
  for (int axis = 0; axis < 2; ++axis) {
    const Eigen::Index col = m - 1 - axis;
    const double l = values(col);
    if (!(l > 1e-12 * scale)) {
      out.degenerate = true;
      continue;
    }
    lambda[static_cast<std::size_t>(axis)] = l;
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    orient(v, anchor);
    const double root = std::sqrt(l);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = v(static_cast<Eigen::Index>(i)) * root;
      (axis == 0 ? out.points[i].x : out.points[i].y) = c;
    }
  }
  out.lambda1 = lambda[0];
  out.lambda2 = lambda[1];
  return out;
}

Projection project_clusters(const ConditionedGraph& g, const std::vector<std::vector<TokenId>>& clusters,
                            std::optional<TokenId> focal) {
  std::size_t anchor = 0;
  if (focal) {
    double best = -1.0;
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      double sum = 0.0;
      for (TokenId t : clusters[k]) sum += g.weight(*focal, t);
      if (sum > best) {
        best = sum;
        anchor = k;
      }
    }
  }
  return project_kernel(cluster_kernel(g, clusters), anchor);
}

double focal_weight(const Multigraph& g, const Corpus& corpus, SeqId seq, TokenId focal) {
  const SequenceRecord* rec = corpus.find(seq);
  if (!rec) fail("unknown sequence " + std::to_string(seq.value));
  double w = static_cast<double>(std::count(rec->tokens.begin(), rec->tokens.end(), focal));
  const OccurrenceRange r = g.seq_range(seq);
  for (auto o = r.begin; o < r.end; ++o) {
    for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) {
      if (g.mu(e) == focal) w += g.weight(e);
    }
  }
  return std::min(w, 1.0);
}

PositionedSentences position_sentences(const Multigraph& g, const Corpus& corpus, const ContextSet& context,
                                       TokenId focal, const std::vector<std::vector<TokenId>>& clusters,
                                       const std::vector<Point>& points) {
  if (points.size() != clusters.size()) fail("one point per cluster is required");
  const auto member = cluster_of(clusters);
  const auto seqs = context.ids();
  std::vector<std::optional<SentencePosition>> slots(seqs.size());
  parallel::for_each_block(seqs.size(), kSentenceBlock, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const SeqId seq = seqs[i];
      std::vector<double> prox(clusters.size(), 0.0);
      double total = 0.0;
      for (const SparseEntry& entry : sentence_context_distribution(g, seq, focal)) {
        auto it = member.find(entry.token.value);
        if (it == member.end()) continue;
        prox[it->second] += entry.prob;
        total += entry.prob;
      }
      if (total <= 0.0) continue;
      SentencePosition p{seq, {}, focal_weight(g, corpus, seq, focal), {}};
      for (std::size_t k = 0; k < prox.size(); ++k) {
        prox[k] /= total;
        p.point.x += prox[k] * points[k].x;
        p.point.y += prox[k] * points[k].y;
      }
      p.proximity = std::move(prox);
      slots[i] = std::move(p);
    }
  });
  PositionedSentences out;
  for (auto& s : slots) {
    if (s) {
      out.sentences.push_back(std::move(*s));
    } else {
      ++out.excluded;
    }
  }
  return out;
}

double scott_bandwidth(const std::vector<WeightedPoint>& points) {
  double w = 0.0;
  double w2 = 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    w += p.weight;
    w2 += p.weight * p.weight;
    mx += p.weight * p.point.x;
    my += p.weight * p.point.y;
  }
  if (!(w > 0.0)) return 0.0;
  mx /= w;
  my /= w;
  double var = 0.0;
  for (const auto& p : points) {
    const double dx = p.point.x - mx;
    const double dy = p.point.y - my;
    var += p.weight * (dx * dx + dy * dy);
  }
  const double sigma = std::sqrt(var / w / 2.0);
  const double n_eff = w * w / w2;
  return sigma * std::pow(n_eff, -1.0 / 6.0);
}

GridSpec default_grid(const std::vector<Point>& anchors, const std::vector<WeightedPoint>& points,
                      double bandwidth, std::size_t resolution) {
  GridSpec grid;
  grid.resolution = resolution;
  bool any = false;
  auto extend = [&](Point p) {
    if (!any) {
      grid.xmin = grid.xmax = p.x;
      grid.ymin = grid.ymax = p.y;
      any = true;
      return;
    }
    grid.xmin = std::min(grid.xmin, p.x);
    grid.xmax = std::max(grid.xmax, p.x);
    grid.ymin = std::min(grid.ymin, p.y);
    grid.ymax = std::max(grid.ymax, p.y);
  };
  for (Point p : anchors) extend(p);
  for (const auto& p : points) {
    if (p.weight > 0.0) extend(p.point);
  }
  const double pad = 3.0 * bandwidth;
  grid.xmin -= pad;
  grid.xmax += pad;
  grid.ymin -= pad;
  grid.ymax += pad;
  if (!(grid.xmax > grid.xmin)) {
    grid.xmin -= 1.0;
    grid.xmax += 1.0;
  }
  if (!(grid.ymax > grid.ymin)) {
    grid.ymin -= 1.0;
    grid.ymax += 1.0;
  }
  return grid;
}

double ContextLandscape::integral() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid.dx() * grid.dy();
}

ContextLandscape elevation_map(const std::vector<WeightedPoint>& points, const GridSpec& grid,
                               double bandwidth, bool density) {
  if (grid.resolution < 16) fail("grid resolution must be at least 16");
  if (!(grid.xmax > grid.xmin) || !(grid.ymax > grid.ymin)) fail("grid extent must be positive");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) fail("bandwidth must be positive and finite");
  std::vector<WeightedPoint> active;
  for (const auto& p : points) {
    if (p.weight < 0.0 || !std::isfinite(p.weight)) fail("sentence weights must be non-negative");
    if (p.weight > 0.0) active.push_back(p);
  }
  if (active.empty()) fail("no weighted sentences to draw");

  const std::size_t r = grid.resolution;
  ContextLandscape out{grid, bandwidth, density, std::vector<double>(r * r, 0.0)};
  const double inv2h2 = 1.0 / (2.0 * bandwidth * bandwidth);
  const double norm = 1.0 / (2.0 * std::numbers::pi * bandwidth * bandwidth);
  const double reach = kKernelReach * bandwidth;
  const double dx = grid.dx();
  parallel::for_each_block(r, kRowBlock, [&](std::size_t, std::size_t jb, std::size_t je) {
    for (std::size_t j = jb; j < je; ++j) {
      const double y = grid.y(j);
      double* row = out.values.data() + j * r;
      for (const auto& p : active) {
        const double ddy = y - p.point.y;
        if (std::abs(ddy) > reach) continue;
        const double wy = p.weight * norm * std::exp(-ddy * ddy * inv2h2);
        const double lo = std::floor((p.point.x - reach - grid.xmin) / dx);
        const double hi = std::ceil((p.point.x + reach - grid.xmin) / dx);
        const auto ib = static_cast<std::size_t>(std::clamp(lo, 0.0, static_cast<double>(r)));
        const auto ie = static_cast<std::size_t>(std::clamp(hi, 0.0, static_cast<double>(r)));
        for (std::size_t i = ib; i < ie; ++i) {
          const double ddx = grid.x(i) - p.point.x;
          row[i] += wy * std::exp(-ddx * ddx * inv2h2);
        }
      }
    }
  });
  if (density) {
    const double total = out.integral();
    if (!(total > 0.0)) fail("elevation map has no mass inside the grid");
    for (double& v : out.values) v /= total;
  }
  return out;
}

ContextLandscape difference_map(const ContextLandscape& a, const ContextLandscape& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
    fail("difference map needs both landscapes on the same grid");
  }
  ContextLandscape out{a.grid, a.bandwidth, a.density && b.density, std::vector<double>(a.values.size())};
  for (std::size_t i = 0; i < a.values.size(); ++i) out.values[i] = a.values[i] - b.values[i];
  return out;
}

double l2_distance(const std::vector<SparseEntry>& a, const std::vector<SparseEntry>& b) {
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    double d = 0.0;
    if (j == b.size() || (i < a.size() && a[i].token < b[j].token)) {
      d = a[i++].prob;
    } else if (i == a.size() || b[j].token < a[i].token) {
      d = b[j++].prob;
    } else {
      d = a[i++].prob - b[j++].prob;
    }
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::vector<WeightedDistribution> focal_distributions(const Multigraph& g, const Corpus& corpus,
                                                      const ContextSet& context, TokenId focal) {
  const auto seqs = context.ids();
  std::vector<std::optional<WeightedDistribution>> slots(seqs.size());
  parallel::for_each_block(seqs.size(), kSentenceBlock, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double w = focal_weight(g, corpus, seqs[i], focal);
      if (w <= 0.0) continue;
      auto dist = sentence_context_distribution(g, seqs[i], focal);
      if (dist.empty()) continue;
      slots[i] = WeightedDistribution{seqs[i], w, std::move(dist)};
    }
  });
  std::vector<WeightedDistribution> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

std::vector<SparseEntry> pooled_distribution(const std::vector<WeightedDistribution>& items) {
  std::map<TokenId, double> acc;
  double total = 0.0;
  for (const auto& item : items) {
    for (const auto& e : item.dist) {
      acc[e.token] += item.weight * e.prob;
      total += item.weight * e.prob;
    }
  }
  std::vector<SparseEntry> out;
  if (!(total > 0.0)) return out;
  out.reserve(acc.size());
  for (const auto& [t, w] : acc) out.push_back({t, w / total});
  return out;
}

std::optional<double> within_spread(const std::vector<WeightedDistribution>& items, WithinMode mode) {
  if (items.size() < 2) return std::nullopt;
  std::vector<double> d;
  d.reserve(items.size() * (items.size() - 1) / 2);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) d.push_back(l2_distance(items[i].dist, items[j].dist));
  }
  double mean = 0.0;
  for (double x : d) mean += x;
  mean /= static_cast<double>(d.size());
  if (mode == WithinMode::MeanPairwise) return mean;
  double var = 0.0;
  for (double x : d) var += (x - mean) * (x - mean);
  return var / static_cast<double>(d.size());
}

std::vector<VarianceItem> variance_items(const Multigraph& g, const PositionedSentences& positioned,
                                         TokenId focal, const std::vector<std::vector<TokenId>>& clusters) {
  const auto member = cluster_of(clusters);
  std::vector<VarianceItem> out;
  for (const auto& s : positioned.sentences) {
    const OccurrenceRange r = g.seq_range(s.seq);
    for (auto o = r.begin; o < r.end; ++o) {
      auto it = member.find(g.tau(o).value);
      if (it == member.end()) continue;
      for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) {
        if (g.mu(e) == focal) out.push_back({s.point, it->second, g.weight(e)});
      }
    }
  }
  return out;
}

ExplainedVariance explained_variance(const std::vector<VarianceItem>& items, std::size_t cluster_count) {
  double w = 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& it : items) {
    if (it.cluster >= cluster_count) fail("variance item cluster out of range");
    w += it.weight;
    mx += it.weight * it.point.x;
    my += it.weight * it.point.y;
  }
  if (!(w > 0.0)) fail("explained variance needs positive total weight");
  mx /= w;
  my /= w;
  std::vector<double> part(cluster_count, 0.0);
  std::vector<double> mass(cluster_count, 0.0);
  double total = 0.0;
  for (const auto& it : items) {
    const double dx = it.point.x - mx;
    const double dy = it.point.y - my;
    const double v = it.weight * (dx * dx + dy * dy) / w;
    part[it.cluster] += v;
    mass[it.cluster] += it.weight / w;
    total += v;
  }
  if (!(total > 0.0)) fail("total contextual variance is zero; shares are undefined");
  ExplainedVariance out;
  out.total_variance = total;
  out.share.resize(cluster_count);
  out.relative.resize(cluster_count);
  for (std::size_t k = 0; k < cluster_count; ++k) {
    out.share[k] = part[k] / total;
    if (mass[k] > 0.0) out.relative[k] = out.share[k] / mass[k];
  }
  return out;
}

}  // namespace substinet
