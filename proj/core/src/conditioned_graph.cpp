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

#include "substinet/conditioned_graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "substinet/error.hpp"
#include "substinet/text_format.hpp"

namespace substinet {

namespace {

constexpr std::array<std::pair<Provenance, std::string_view>, 12> kProvenanceNames{{
    {Provenance::Aggregate, "aggregate"},
    {Provenance::Compositional, "compositional"},
    {Provenance::Bidirectional, "bidirectional"},
    {Provenance::Min, "min"},
    {Provenance::Max, "max"},
    {Provenance::Lambda, "lambda"},
    {Provenance::Entropy, "entropy"},
    {Provenance::Certainty, "certainty"},
    {Provenance::Unconventionality, "unconventionality"},
    {Provenance::ContextSubstitution, "context-substitution"},
    {Provenance::ContextElement, "context-element"},
    {Provenance::TokenContext, "token-context"},
}};

constexpr std::string_view kCgraphMagic = "# substinet cgraph 1";

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    fail(std::string("cgraph: bad ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  for (const auto& [k, name] : kProvenanceNames) {
    if (k == p) return name;
  }
  return "unknown";
}

Provenance parse_provenance(std::string_view name) {
  for (const auto& [k, n] : kProvenanceNames) {
    if (n == name) return k;
  }
  fail("unknown graph provenance '" + std::string(name) + "'");
}

ConditionedGraph::ConditionedGraph(std::vector<WeightedEdge> edges, GraphInfo info,
                                   std::span<const TokenId> extra_nodes)
    : info_(std::move(info)) {
  std::erase_if(edges, [](const WeightedEdge& e) {
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) fail("graph edge weight must be finite and non-negative");
    return e.weight == 0.0;
  });
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].src == edges[i - 1].src && edges[i].dst == edges[i - 1].dst) {
      fail("duplicate graph edge " + std::to_string(edges[i].src.value) + "->" +
           std::to_string(edges[i].dst.value));
    }
  }
  nodes_.assign(extra_nodes.begin(), extra_nodes.end());
  nodes_.reserve(nodes_.size() + 2 * edges.size());
  for (const auto& e : edges) {
    nodes_.push_back(e.src);
    nodes_.push_back(e.dst);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  edges_ = std::move(edges);

  offset_.assign(nodes_.size() + 1, 0);
  std::size_t node = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    while (nodes_[node] != edges_[i].src) offset_[++node] = i;
  }
  while (node < nodes_.size()) offset_[++node] = edges_.size();
}

std::optional<std::size_t> ConditionedGraph::node_index(TokenId t) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  if (it == nodes_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::span<const WeightedEdge> ConditionedGraph::out_edges_at(std::size_t index) const {
  return {edges_.data() + offset_[index], offset_[index + 1] - offset_[index]};
}

std::span<const WeightedEdge> ConditionedGraph::out_edges(TokenId src) const {
  auto idx = node_index(src);
  if (!idx) return {};
  return out_edges_at(*idx);
}

double ConditionedGraph::weight(TokenId src, TokenId dst) const {
  auto out = out_edges(src);
  auto it = std::lower_bound(out.begin(), out.end(), dst,
                             [](const WeightedEdge& e, TokenId d) { return e.dst < d; });
  return (it != out.end() && it->dst == dst) ? it->weight : 0.0;
}

double ConditionedGraph::out_strength(TokenId src) const {
  double s = 0.0;
  for (const auto& e : out_edges(src)) s += e.weight;
  return s;
}

void write_cgraph(std::ostream& out, const ConditionedGraph& g, const Vocabulary& vocab) {
  out << kCgraphMagic << '\n';
  out << "provenance\t" << provenance_name(g.info().provenance) << '\n';
  out << "normalized\t" << (g.info().normalized ? 1 : 0) << '\n';
  out << "context\t" << g.info().context << '\n';
  out << "nodes\t" << g.node_count() << '\n';
  for (TokenId t : g.nodes()) out << t.value << '\t' << vocab.surface(t) << '\n';
  out << "edges\t" << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    out << e.src.value << '\t' << e.dst.value << '\t' << format_double(e.weight) << '\n';
  }
}

LoadedGraph read_cgraph(std::istream& in) {
  std::string line;
  auto next = [&](const char* what) -> std::string& {
    if (!std::getline(in, line)) fail(std::string("cgraph: missing ") + what);
    return line;
  };
  if (next("header") != kCgraphMagic) fail("not a cgraph file");
  GraphInfo info;
  auto field = [&](const char* key) {
    auto parts = split_tabs(next(key));
    if (parts.size() != 2 || parts[0] != key) fail(std::string("cgraph: expected '") + key + "'");
    return std::string(parts[1]);
  };
  info.provenance = parse_provenance(field("provenance"));
  info.normalized = field("normalized") == "1";
  info.context = field("context");
  const auto n = parse_number<std::size_t>(field("nodes"), "node count");
  std::vector<TokenId> nodes;
  std::vector<std::string> surfaces;
  for (std::size_t i = 0; i < n; ++i) {
    auto parts = split_tabs(next("node"));
    if (parts.size() != 2) fail("cgraph: malformed node line");
    nodes.push_back(TokenId{parse_number<std::uint32_t>(parts[0], "node id")});
    surfaces.emplace_back(parts[1]);
  }
  if (!std::is_sorted(nodes.begin(), nodes.end())) fail("cgraph: nodes are not sorted");
  const auto m = parse_number<std::size_t>(field("edges"), "edge count");
  std::vector<WeightedEdge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto parts = split_tabs(next("edge"));
    if (parts.size() != 3) fail("cgraph: malformed edge line");
    edges.push_back({TokenId{parse_number<std::uint32_t>(parts[0], "edge source")},
                     TokenId{parse_number<std::uint32_t>(parts[1], "edge target")},
                     parse_number<double>(parts[2], "edge weight")});
  }
  LoadedGraph out{ConditionedGraph(std::move(edges), std::move(info), nodes), std::move(surfaces)};
  if (out.graph.node_count() != n) fail("cgraph: edge endpoints missing from the node list");
  return out;
}

LoadedGraph load_cgraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open graph: " + path);
  try {
    return read_cgraph(in);
  } catch (const Error& e) {
    fail(path + ": " + e.what());
  }
}

void write_edges_csv(std::ostream& out, const ConditionedGraph& g, const Vocabulary& vocab) {
  CsvWriter csv(out, {"src", "dst", "src_token", "dst_token", "weight"});
  for (const auto& e : g.edges()) {
    csv.field(e.src.value).field(e.dst.value).field(vocab.surface(e.src)).field(vocab.surface(e.dst));
    csv.field(e.weight).end_row();
  }
}

void write_graphml(std::ostream& out, const ConditionedGraph& g, const Vocabulary& vocab) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (TokenId t : g.nodes()) {
    out << "    <node id=\"n" << t.value << "\"><data key=\"label\">" << xml_escape(vocab.surface(t))
        << "</data></node>\n";
  }
  for (const auto& e : g.edges()) {
    out << "    <edge source=\"n" << e.src.value << "\" target=\"n" << e.dst.value
        << "\"><data key=\"weight\">" << format_double(e.weight) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

}  // namespace substinet
