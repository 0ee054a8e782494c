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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "substinet/conditioned_graph.hpp"
#include "substinet/context_spec.hpp"
#include "substinet/corpus.hpp"
#include "substinet/ingest.hpp"
#include "substinet/multigraph.hpp"

namespace substinet {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Averaged symmetric adjacency between clusters: K(a, b) is the mean of
/// (w(i, j) + w(j, i)) / 2 over i in a, j in b.
std::vector<std::vector<double>> cluster_kernel(const ConditionedGraph& g,
                                                const std::vector<std::vector<TokenId>>& clusters);

struct Projection {
  std::vector<Point> points;
  /// Eigenvalues of the centered kernel behind the two axes (clipped at 0).
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  /// Fewer than two positive eigenvalues; the missing axes are zero.
  bool degenerate = false;
};

/// Classical scaling of a similarity kernel: double centering, top two
/// eigenvectors scaled by the square root of their eigenvalues. Each axis is
/// oriented so that `anchor` has a non-negative coordinate (ties broken by
/// the largest-magnitude entry).
Projection project_kernel(const std::vector<std::vector<double>>& kernel, std::size_t anchor);

/// project_kernel on cluster_kernel, anchored at the cluster that receives
/// the focal token's strongest ties (cluster 0 without a focal token).
Projection project_clusters(const ConditionedGraph& g, const std::vector<std::vector<TokenId>>& clusters,
                            std::optional<TokenId> focal);

struct SentencePosition {
  SeqId seq;
  Point point;
  /// min(occurrences of the focal token + its summed substitution
  /// probabilities, 1).
  double weight = 0.0;
  /// Normalized proximity of the sentence to each cluster.
  std::vector<double> proximity;
};

struct PositionedSentences {
  std::vector<SentencePosition> sentences;
  /// Sentences with no contextual mass on any cluster.
  std::uint64_t excluded = 0;
};

/// Focal-token weight of one sentence.
double focal_weight(const Multigraph& g, const Corpus& corpus, SeqId seq, TokenId focal);

/// Places every sentence of `context` at the proximity-weighted mean of the
/// cluster points. Proximities are the sentence's mean substitute
/// distribution (focal occurrences left out) summed per cluster.
PositionedSentences position_sentences(const Multigraph& g, const Corpus& corpus, const ContextSet& context,
                                       TokenId focal, const std::vector<std::vector<TokenId>>& clusters,
                                       const std::vector<Point>& points);

struct GridSpec {
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;
  std::size_t resolution = 256;

  double dx() const { return (xmax - xmin) / static_cast<double>(resolution); }
  double dy() const { return (ymax - ymin) / static_cast<double>(resolution); }
  /// Cell centers.
  double x(std::size_t i) const { return xmin + (static_cast<double>(i) + 0.5) * dx(); }
  double y(std::size_t j) const { return ymin + (static_cast<double>(j) + 0.5) * dy(); }
  bool operator==(const GridSpec&) const = default;
};

struct WeightedPoint {
  Point point;
  double weight;
};

/// Scott's rule on the weighted cloud: sigma * n_eff^(-1/6), with sigma the
/// root mean per-axis weighted variance and n_eff = (sum w)^2 / sum w^2.
/// Returns 0 for a cloud with no spread.
double scott_bandwidth(const std::vector<WeightedPoint>& points);

/// Bounding box of the cluster points and weighted sentences, padded by
/// three bandwidths.
GridSpec default_grid(const std::vector<Point>& anchors, const std::vector<WeightedPoint>& points,
                      double bandwidth, std::size_t resolution = 256);

struct ContextLandscape {
  GridSpec grid;
  double bandwidth = 0.0;
  bool density = false;
  /// values[j * resolution + i] is cell (x_i, y_j).
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[j * grid.resolution + i]; }
  /// Sum of values times cell area.
  double integral() const;
};

/// Gaussian kernel density of the weighted points evaluated at the cell
/// centers. With `density` the grid is rescaled to integrate to one.
ContextLandscape elevation_map(const std::vector<WeightedPoint>& points, const GridSpec& grid,
                               double bandwidth, bool density = true);

/// Cellwise a - b. Throws unless both use the same grid.
ContextLandscape difference_map(const ContextLandscape& a, const ContextLandscape& b);

/// Euclidean distance between sparse distributions sorted by token id.
double l2_distance(const std::vector<SparseEntry>& a, const std::vector<SparseEntry>& b);

/// Sentence distributions of a context with their focal weights; only
/// sentences with positive weight and a nonempty distribution are kept.
struct WeightedDistribution {
  SeqId seq;
  double weight;
  std::vector<SparseEntry> dist;
};
std::vector<WeightedDistribution> focal_distributions(const Multigraph& g, const Corpus& corpus,
                                                      const ContextSet& context, TokenId focal);

/// Weight-aggregated distribution, renormalized to sum to one. Empty when
/// there is nothing to aggregate.
std::vector<SparseEntry> pooled_distribution(const std::vector<WeightedDistribution>& items);

enum class WithinMode { MeanPairwise, PairwiseVariance };

/// Mean (or variance) of the pairwise L2 distances among the items.
/// Missing with fewer than two items.
std::optional<double> within_spread(const std::vector<WeightedDistribution>& items, WithinMode mode);

struct VarianceItem {
  Point point;
  std::uint32_t cluster;
  double weight;
};

/// One item per ingested occurrence in the positioned sentences that the
/// focal token substitutes for: the sentence's point, the cluster of the
/// replaced token and the substitution probability. Occurrences whose
/// replaced token is in no cluster are skipped.
std::vector<VarianceItem> variance_items(const Multigraph& g, const PositionedSentences& positioned,
                                         TokenId focal, const std::vector<std::vector<TokenId>>& clusters);

struct ExplainedVariance {
  /// Share of the total weighted variance carried by each cluster.
  std::vector<double> share;
  /// Share divided by the cluster's share of total weight; missing for
  /// clusters without weight.
  std::vector<std::optional<double>> relative;
  double total_variance = 0.0;
};

/// Decomposes the weighted variance of item points around their weighted
/// mean by cluster. Throws when the total variance is zero.
ExplainedVariance explained_variance(const std::vector<VarianceItem>& items, std::size_t cluster_count);

}  // namespace substinet
