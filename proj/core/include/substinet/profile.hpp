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
#include <optional>
#include <span>
#include <vector>

#include "substinet/conditioned_graph.hpp"

namespace substinet {

/// Mean tie strength from `mu` into the members of `cluster`; the weighted
/// form weights each tie by its own share of the cluster's total tie mass.
double cluster_proximity(const ConditionedGraph& g, TokenId mu, std::span<const TokenId> cluster,
                         bool weighted = false);

/// Each value as a share of the sum of all values except the one at
/// `exclude` (which gets no share).
std::vector<std::optional<double>> relative_weights(std::span<const double> values,
                                                    std::optional<std::size_t> exclude);

/// Centered moving average using up to `window` neighbours on each side.
/// Missing points are skipped. Throws when the window reaches past the
/// series on both sides of every point.
std::vector<std::optional<double>> centered_moving_average(std::span<const std::optional<double>> series,
                                                           std::size_t window);

struct ProfileOptions {
  bool weighted = false;
  /// Replace proximities by the share of mu's out-strength going to each cluster.
  bool shares = false;
  /// 0 disables smoothing.
  std::size_t window = 0;
};

/// rows: clusters, columns: contexts (one graph per context).
using ProfileMatrix = std::vector<std::vector<std::optional<double>>>;

ProfileMatrix profile_series(TokenId mu, std::span<const ConditionedGraph> contexts,
                             const std::vector<std::vector<TokenId>>& clusters,
                             const ProfileOptions& options = {});

/// Elementwise a / b; missing where b is zero or either side is missing.
std::vector<std::optional<double>> ratio_series(std::span<const std::optional<double>> a,
                                                std::span<const std::optional<double>> b);

}  // namespace substinet
