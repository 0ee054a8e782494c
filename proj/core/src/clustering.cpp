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

#include "substinet/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

#include <json.hpp>

#include "substinet/error.hpp"

namespace substinet {

namespace {

constexpr double kGainEpsilon = 1e-12;

struct Totals {
  std::vector<double> degree;
  double two_m = 0.0;
};

Totals totals(const UndirectedGraph& g) {
  Totals t;
  t.degree.assign(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& a : g.adj[i]) t.degree[i] += a.weight;
    t.two_m += t.degree[i];
  }
  return t;
}

std::vector<std::uint32_t> renumber(const std::vector<std::uint32_t>& c, std::uint32_t& count) {
  std::vector<std::uint32_t> map(c.size() + 1, UINT32_MAX);
  std::vector<std::uint32_t> out(c.size());
  count = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (map[c[i]] == UINT32_MAX) map[c[i]] = count++;
    out[i] = map[c[i]];
  }
  return out;
}

UndirectedGraph aggregate(const UndirectedGraph& g, const std::vector<std::uint32_t>& comm,
                          std::uint32_t count) {
  // Matrix convention: A'[C][D] = sum of A[i][j] over i in C, j in D. Each
  // undirected non-loop edge sits in both lists, so C == D picks up 2w.
  UndirectedGraph out;
  out.adj.resize(count);
  std::vector<double> acc(count, 0.0);
  std::vector<std::vector<std::uint32_t>> members(count);
  for (std::uint32_t i = 0; i < g.size(); ++i) members[comm[i]].push_back(i);
  for (std::uint32_t c = 0; c < count; ++c) {
    std::vector<std::uint32_t> seen;
    for (std::uint32_t i : members[c]) {
      for (const auto& a : g.adj[i]) {
        const std::uint32_t d = comm[a.to];
        if (acc[d] == 0.0) seen.push_back(d);
        acc[d] += a.weight;
      }
    }
    std::sort(seen.begin(), seen.end());
    for (std::uint32_t d : seen) {
      if (acc[d] != 0.0) out.adj[c].push_back({d, acc[d]});
      acc[d] = 0.0;
    }
  }
  return out;
}

// Sum over communities of internal weight / 2m - gamma (total / 2m)^2, on a
// graph whose nodes are the communities.
double level_modularity(const UndirectedGraph& g, const std::vector<std::uint32_t>& comm,
                        std::uint32_t count, double gamma) {
  const Totals t = totals(g);
  if (t.two_m == 0.0) return 0.0;
  std::vector<double> in(count, 0.0);
  std::vector<double> tot(count, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    tot[comm[i]] += t.degree[i];
    for (const auto& a : g.adj[i]) {
      if (comm[a.to] == comm[i]) in[comm[i]] += a.weight;
    }
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < count; ++c) {
    q += in[c] / t.two_m - gamma * (tot[c] / t.two_m) * (tot[c] / t.two_m);
  }
  return q;
}

}  // namespace

UndirectedGraph UndirectedGraph::from(const ConditionedGraph& g, SymmetricMode mode) {
  const ConditionedGraph sym = symmetric_variant(g, mode);
  UndirectedGraph out;
  out.adj.resize(sym.node_count());
  for (std::size_t i = 0; i < sym.node_count(); ++i) {
    for (const auto& e : sym.out_edges_at(i)) {
      out.adj[i].push_back({static_cast<std::uint32_t>(*sym.node_index(e.dst)), e.weight});
    }
  }
  return out;
}

double modularity(const UndirectedGraph& g, const std::vector<std::uint32_t>& community, double gamma) {
  if (community.size() != g.size()) fail("community vector does not match graph size");
  std::uint32_t count = 0;
  const auto c = renumber(community, count);
  return level_modularity(g, c, count, gamma);
}

LouvainResult louvain(const UndirectedGraph& g, double resolution, std::uint64_t seed) {
  LouvainResult result;
  const std::size_t n = g.size();
  result.community.resize(n);
  std::iota(result.community.begin(), result.community.end(), 0u);
  result.count = static_cast<std::uint32_t>(n);
  if (n == 0) return result;
  const Totals base = totals(g);
  if (base.two_m == 0.0) {
    result.modularity = 0.0;
    return result;
  }
  const double two_m = base.two_m;
  std::mt19937_64 rng(seed);

  UndirectedGraph level = g;
  while (true) {
    const std::size_t m = level.size();
    const Totals t = totals(level);
    std::vector<std::uint32_t> comm(m);
    std::iota(comm.begin(), comm.end(), 0u);
    std::vector<double> tot = t.degree;
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    if (seed != 0) {
      for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    }

    std::vector<double> neigh(m, 0.0);
    std::vector<std::uint32_t> touched;
    bool moved_any = false;
    while (true) {
      bool moved = false;
      for (std::uint32_t i : order) {
        const std::uint32_t own = comm[i];
        touched.clear();
        for (const auto& a : level.adj[i]) {
          if (a.to == i) continue;
          const std::uint32_t d = comm[a.to];
          if (neigh[d] == 0.0) touched.push_back(d);
          neigh[d] += a.weight;
        }
        const double k = t.degree[i];
        tot[own] -= k;
        const double own_gain = neigh[own] - resolution * k * tot[own] / two_m;
        double best_gain = own_gain;
        std::uint32_t best = own;
        // Staying wins ties; among equal moves the lowest community id wins.
        for (std::uint32_t d : touched) {
          if (d == own) continue;
          const double gain = neigh[d] - resolution * k * tot[d] / two_m;
          if (gain > best_gain + kGainEpsilon ||
              (best != own && std::abs(gain - best_gain) <= kGainEpsilon && d < best)) {
            best_gain = gain;
            best = d;
          }
        }
        tot[best] += k;
        if (best != own) {
          comm[i] = best;
          moved = true;
          moved_any = true;
        }
        for (std::uint32_t d : touched) neigh[d] = 0.0;
        neigh[own] = 0.0;
      }
      if (!moved) break;
      std::uint32_t count = 0;
      const auto packed = renumber(comm, count);
      result.trace.push_back(level_modularity(level, packed, count, resolution));
    }
    if (!moved_any) break;

    std::uint32_t count = 0;
    comm = renumber(comm, count);
    for (auto& c : result.community) c = comm[c];
    level = aggregate(level, comm, count);
  }
  result.community = renumber(result.community, result.count);
  result.modularity = modularity(g, result.community, resolution);
  return result;
}

std::optional<std::size_t> ClusterHierarchy::node_index(TokenId t) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
  if (it == nodes.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<TokenId> ClusterHierarchy::members(std::size_t level, std::uint32_t cluster) const {
  std::vector<TokenId> out;
  const auto& a = levels.at(level).assignment;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (a[i] == cluster) out.push_back(nodes[i]);
  }
  return out;
}

std::vector<std::vector<TokenId>> ClusterHierarchy::partition(std::size_t level) const {
  const auto& l = levels.at(level);
  std::vector<std::vector<TokenId>> out(l.count);
  for (std::size_t i = 0; i < nodes.size(); ++i) out[l.assignment[i]].push_back(nodes[i]);
  return out;
}

namespace {

UndirectedGraph induced(const UndirectedGraph& g, const std::vector<std::uint32_t>& members) {
  UndirectedGraph sub;
  sub.adj.resize(members.size());
  for (std::uint32_t k = 0; k < members.size(); ++k) {
    for (const auto& a : g.adj[members[k]]) {
      auto it = std::lower_bound(members.begin(), members.end(), a.to);
      if (it != members.end() && *it == a.to) {
        sub.adj[k].push_back({static_cast<std::uint32_t>(it - members.begin()), a.weight});
      }
    }
  }
  return sub;
}

std::vector<std::vector<TokenId>> make_labels(const ConditionedGraph& g, const UndirectedGraph& u,
                                              const std::vector<TokenId>& nodes, const ClusterLevel& level,
                                              const ClusterOptions& options) {
  std::vector<std::vector<std::pair<double, TokenId>>> ranked(level.count);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double score = 0.0;
    if (options.focal) {
      score = g.weight(*options.focal, nodes[i]);
    } else {
      for (const auto& a : u.adj[i]) {
        if (level.assignment[a.to] == level.assignment[i]) score += a.weight;
      }
    }
    ranked[level.assignment[i]].emplace_back(score, nodes[i]);
  }
  std::vector<std::vector<TokenId>> labels(level.count);
  for (std::uint32_t c = 0; c < level.count; ++c) {
    auto& r = ranked[c];
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (std::size_t k = 0; k < r.size() && k < options.label_size; ++k) labels[c].push_back(r[k].second);
  }
  return labels;
}

}  // namespace

ClusterHierarchy hierarchical_clusters(const ConditionedGraph& g, const ClusterOptions& options) {
  if (options.levels < 1) fail("cluster levels must be at least 1");
  ClusterHierarchy h;
  h.nodes.assign(g.nodes().begin(), g.nodes().end());
  const UndirectedGraph u = UndirectedGraph::from(g, options.symmetrize);

  std::vector<std::uint32_t> parent(h.nodes.size(), 0);
  std::uint32_t parent_count = h.nodes.empty() ? 0 : 1;
  for (std::size_t lvl = 0; lvl < options.levels; ++lvl) {
    ClusterLevel level;
    level.assignment.assign(h.nodes.size(), 0);
    std::vector<std::vector<std::uint32_t>> groups(parent_count);
    for (std::uint32_t i = 0; i < h.nodes.size(); ++i) groups[parent[i]].push_back(i);
    std::uint32_t next = 0;
    for (const auto& members : groups) {
      const LouvainResult r = louvain(induced(u, members), options.resolution, options.seed);
      if (!r.trace.empty()) level.traces.push_back(r.trace);
      for (std::size_t k = 0; k < members.size(); ++k) level.assignment[members[k]] = next + r.community[k];
      next += r.count;
    }
    level.count = next;
    level.labels = make_labels(g, u, h.nodes, level, options);
    parent = level.assignment;
    parent_count = level.count;
    h.levels.push_back(std::move(level));
  }
  return h;
}

void write_clusters_json(std::ostream& out, const ClusterHierarchy& h, const Vocabulary& vocab) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json nodes = ordered_json::array();
  for (TokenId t : h.nodes) nodes.push_back({{"id", t.value}, {"token", vocab.surface(t)}});
  j["nodes"] = std::move(nodes);
  ordered_json levels = ordered_json::array();
  for (const auto& l : h.levels) {
    ordered_json labels = ordered_json::array();
    ordered_json label_tokens = ordered_json::array();
    for (const auto& lab : l.labels) {
      ordered_json ids = ordered_json::array();
      ordered_json words = ordered_json::array();
      for (TokenId t : lab) {
        ids.push_back(t.value);
        words.push_back(vocab.surface(t));
      }
      labels.push_back(std::move(ids));
      label_tokens.push_back(std::move(words));
    }
    levels.push_back({{"count", l.count},
                      {"assignment", l.assignment},
                      {"labels", std::move(labels)},
                      {"label_tokens", std::move(label_tokens)}});
  }
  j["levels"] = std::move(levels);
  out << j.dump(1) << '\n';
}

ClusterHierarchy read_clusters_json(std::istream& in) {
  using nlohmann::json;
  ClusterHierarchy h;
  try {
    const json j = json::parse(in);
    for (const auto& n : j.at("nodes")) h.nodes.push_back(TokenId{n.at("id").get<std::uint32_t>()});
    if (!std::is_sorted(h.nodes.begin(), h.nodes.end())) fail("cluster nodes are not sorted");
    for (const auto& l : j.at("levels")) {
      ClusterLevel level;
      level.count = l.at("count").get<std::uint32_t>();
      level.assignment = l.at("assignment").get<std::vector<std::uint32_t>>();
      if (level.assignment.size() != h.nodes.size()) fail("cluster assignment length mismatch");
      for (auto c : level.assignment) {
        if (c >= level.count) fail("cluster id out of range");
      }
      for (const auto& lab : l.at("labels")) {
        std::vector<TokenId> ids;
        for (const auto& t : lab) ids.push_back(TokenId{t.get<std::uint32_t>()});
        level.labels.push_back(std::move(ids));
      }
      h.levels.push_back(std::move(level));
    }
  } catch (const json::exception& e) {
    fail(std::string("malformed clusters file: ") + e.what());
  }
  return h;
}

ClusterHierarchy load_clusters(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open clusters file: " + path);
  try {
    return read_clusters_json(in);
  } catch (const Error& e) {
    fail(path + ": " + e.what());
  }
}

}  // namespace substinet
