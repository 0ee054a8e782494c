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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "substinet/conditioned_graph.hpp"
#include "substinet/substitution.hpp"
#include "substinet/vocabulary.hpp"

namespace substinet {

/// Undirected weighted graph on dense indices 0..n-1. Each undirected edge
/// appears in both adjacency lists; a self-loop appears once.
struct UndirectedGraph {
  struct Arc {
    std::uint32_t to;
    double weight;
  };
  std::vector<std::vector<Arc>> adj;

  std::size_t size() const { return adj.size(); }
  /// Symmetrizes `g` and indexes nodes in g.nodes() order.
  static UndirectedGraph from(const ConditionedGraph& g, SymmetricMode mode);
};

/// Newman-Girvan modularity with resolution `gamma`.
double modularity(const UndirectedGraph& g, const std::vector<std::uint32_t>& community,
                  double gamma = 1.0);

struct LouvainResult {
  /// Community of each node, renumbered 0..k-1 in order of first node.
  std::vector<std::uint32_t> community;
  std::uint32_t count = 0;
  double modularity = 0.0;
  /// Modularity after every local-move pass, in order.
  std::vector<double> trace;
};

/// Multi-level local moving. seed 0 sweeps nodes in index order; any other
/// seed sweeps in a seeded random order.
LouvainResult louvain(const UndirectedGraph& g, double resolution = 1.0, std::uint64_t seed = 0);

struct ClusterLevel {
  /// Cluster of each node, parallel to ClusterHierarchy::nodes.
  std::vector<std::uint32_t> assignment;
  std::uint32_t count = 0;
  /// Top tokens per cluster.
  std::vector<std::vector<TokenId>> labels;
  /// Local-move modularity traces of every Louvain run at this level.
  std::vector<std::vector<double>> traces;
};

struct ClusterHierarchy {
  std::vector<TokenId> nodes;
  std::vector<ClusterLevel> levels;

  std::optional<std::size_t> node_index(TokenId t) const;
  /// Members of one cluster at `level` (0-based), ascending.
  std::vector<TokenId> members(std::size_t level, std::uint32_t cluster) const;
  /// All clusters of a level as member lists.
  std::vector<std::vector<TokenId>> partition(std::size_t level) const;
};

struct ClusterOptions {
  std::size_t levels = 5;
  double resolution = 1.0;
  std::uint64_t seed = 0;
  SymmetricMode symmetrize = SymmetricMode::Bidirectional;
  std::size_t label_size = 3;
  /// Label clusters by the focal token's tie strength instead of internal
  /// strength.
  std::optional<TokenId> focal;
};

/// Level 1 is Louvain on the whole graph; every further level reruns
/// Louvain inside each cluster of the previous level, so levels refine.
ClusterHierarchy hierarchical_clusters(const ConditionedGraph& g, const ClusterOptions& options = {});

void write_clusters_json(std::ostream& out, const ClusterHierarchy& h, const Vocabulary& vocab);
ClusterHierarchy read_clusters_json(std::istream& in);
ClusterHierarchy load_clusters(const std::string& path);

}  // namespace substinet
