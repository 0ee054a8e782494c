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

#include "substinet/profile.hpp"

#include "substinet/error.hpp"

namespace substinet {

double cluster_proximity(const ConditionedGraph& g, TokenId mu, std::span<const TokenId> cluster,
                         bool weighted) {
  if (cluster.empty()) fail("cluster proximity needs a nonempty cluster");
  double sum = 0.0;
  double squares = 0.0;
  for (TokenId tau : cluster) {
    const double w = g.weight(mu, tau);
    sum += w;
    squares += w * w;
  }
  if (!weighted) return sum / static_cast<double>(cluster.size());
  return sum > 0.0 ? squares / sum : 0.0;
}

std::vector<std::optional<double>> relative_weights(std::span<const double> values,
                                                    std::optional<std::size_t> exclude) {
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!exclude || i != *exclude) total += values[i];
  }
  std::vector<std::optional<double>> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if ((exclude && i == *exclude) || total == 0.0) continue;
    out[i] = values[i] / total;
  }
  return out;
}

std::vector<std::optional<double>> centered_moving_average(std::span<const std::optional<double>> series,
                                                           std::size_t window) {
  if (window >= series.size() && window > 0) {
    fail("smoothing window " + std::to_string(window) + " is larger than the series (" +
         std::to_string(series.size()) + " points)");
  }
  std::vector<std::optional<double>> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t lo = i >= window ? i - window : 0;
    const std::size_t hi = std::min(series.size() - 1, i + window);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t k = lo; k <= hi; ++k) {
      if (series[k]) {
        sum += *series[k];
        ++n;
      }
    }
    if (n > 0) out[i] = sum / static_cast<double>(n);
  }
  return out;
}

ProfileMatrix profile_series(TokenId mu, std::span<const ConditionedGraph> contexts,
                             const std::vector<std::vector<TokenId>>& clusters,
                             const ProfileOptions& options) {
  ProfileMatrix m(clusters.size(), std::vector<std::optional<double>>(contexts.size()));
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const ConditionedGraph& g = contexts[c];
    const double out = g.out_strength(mu);
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      if (options.shares) {
        if (out == 0.0) continue;
        double sum = 0.0;
        for (TokenId tau : clusters[k]) sum += g.weight(mu, tau);
        m[k][c] = sum / out;
      } else {
        m[k][c] = cluster_proximity(g, mu, clusters[k], options.weighted);
      }
    }
  }
  if (options.window > 0) {
    for (auto& row : m) row = centered_moving_average(row, options.window);
  }
  return m;
}

std::vector<std::optional<double>> ratio_series(std::span<const std::optional<double>> a,
                                                std::span<const std::optional<double>> b) {
  if (a.size() != b.size()) fail("ratio series differ in length");
  std::vector<std::optional<double>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i] && *b[i] != 0.0) out[i] = *a[i] / *b[i];
  }
  return out;
}

}  // namespace substinet
