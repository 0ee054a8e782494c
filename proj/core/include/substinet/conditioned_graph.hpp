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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "substinet/ids.hpp"
#include "substinet/vocabulary.hpp"

namespace substinet {

enum class Provenance {
  Aggregate,
  Compositional,
  Bidirectional,
  Min,
  Max,
  Lambda,
  Entropy,
  Certainty,
  Unconventionality,
  ContextSubstitution,
  ContextElement,
  TokenContext,
};

std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

struct GraphInfo {
  Provenance provenance = Provenance::Aggregate;
  /// Canonical description of the conditioning context.
  std::string context = "{}";
  /// True when weights were divided by the number of sequences in the context.
  bool normalized = false;
  bool operator==(const GraphInfo&) const = default;
};

struct WeightedEdge {
  TokenId src;
  TokenId dst;
  double weight;
  bool operator==(const WeightedEdge&) const = default;
};

/// Simple weighted digraph over token ids. Edges are sorted by (src, dst)
/// and unique; zero-weight edges are not stored.
class ConditionedGraph {
 public:
  ConditionedGraph() = default;
  /// Throws on duplicate (src, dst) pairs and negative or non-finite weights.
  /// `extra_nodes` adds isolated nodes to the node set.
  ConditionedGraph(std::vector<WeightedEdge> edges, GraphInfo info,
                   std::span<const TokenId> extra_nodes = {});

  const GraphInfo& info() const { return info_; }
  GraphInfo& mutable_info() { return info_; }

  /// Sorted ascending.
  std::span<const TokenId> nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::optional<std::size_t> node_index(TokenId t) const;
  bool has_node(TokenId t) const { return node_index(t).has_value(); }

  std::span<const WeightedEdge> edges() const { return edges_; }
  /// Out-edges of the node at `index`, sorted by destination.
  std::span<const WeightedEdge> out_edges_at(std::size_t index) const;
  std::span<const WeightedEdge> out_edges(TokenId src) const;
  /// Zero when the edge is absent.
  double weight(TokenId src, TokenId dst) const;
  double out_strength(TokenId src) const;

  bool operator==(const ConditionedGraph&) const = default;

 private:
  GraphInfo info_;
  std::vector<TokenId> nodes_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::size_t> offset_;
};

/// Text form: a header, one "id<TAB>surface" line per node and one
/// "src<TAB>dst<TAB>weight" line per edge. Weights round-trip exactly.
void write_cgraph(std::ostream& out, const ConditionedGraph& g, const Vocabulary& vocab);

struct LoadedGraph {
  ConditionedGraph graph;
  /// Surfaces parallel to graph.nodes().
  std::vector<std::string> surfaces;
};
LoadedGraph read_cgraph(std::istream& in);
LoadedGraph load_cgraph(const std::string& path);

/// Edge list CSV: src,dst,src_token,dst_token,weight.
void write_edges_csv(std::ostream& out, const ConditionedGraph& g, const Vocabulary& vocab);
void write_graphml(std::ostream& out, const ConditionedGraph& g, const Vocabulary& vocab);

}  // namespace substinet
