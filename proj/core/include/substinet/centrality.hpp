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
#include <vector>

#include "substinet/conditioned_graph.hpp"

namespace substinet {

/// Scores parallel to `nodes`, which is sorted ascending.
struct NodeScores {
  std::vector<TokenId> nodes;
  std::vector<double> values;

  std::optional<double> value(TokenId t) const;
  std::size_t size() const { return nodes.size(); }
};

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-12;
  std::size_t max_iterations = 10000;
};

/// Power iteration along edge direction (mu -> tau), transition
/// probabilities proportional to edge weight. Dangling mass is spread
/// uniformly. Throws ConvergenceError with the last L1 residual.
NodeScores pagerank(const ConditionedGraph& g, const PageRankOptions& options = {});

/// Current-flow betweenness on the bidirectionally averaged graph, over
/// ordered source/target pairs excluding the node itself, divided by
/// (n-1)(n-2). With `focal` only its connected component is scored;
/// otherwise each component is scored on its own. Components of fewer than
/// three nodes score zero.
NodeScores flow_betweenness(const ConditionedGraph& g, std::optional<TokenId> focal = std::nullopt);

/// Largest eigenvalue modulus of the weighted adjacency matrix.
double spectral_radius(const ConditionedGraph& g);

/// Row sums of B = (I - delta G)^-1 - I, with G[src][dst] the edge weights.
/// Power mode uses -|delta|. Throws when |delta| >= 1 / spectral radius.
NodeScores katz_bonacich(const ConditionedGraph& g, double delta, bool power = false);

}  // namespace substinet
