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

#include "substinet/context.hpp"

#include <algorithm>
#include <numeric>

#include "pair_reduce.hpp"
#include "substinet/error.hpp"

namespace substinet {

using detail::PairSums;

namespace {

// Summed substitute probabilities of the occurrences of a sentence other
// than `skip`, keyed by token, plus how many occurrences contributed.
struct Rest {
  std::vector<SparseEntry> sums;
  double count = 0.0;
};

Rest rest_of_sentence(const Multigraph& g, OccurrenceRange r, std::optional<std::uint64_t> skip) {
  Rest rest;
  for (auto o = r.begin; o < r.end; ++o) {
    if (skip && o == *skip) continue;
    rest.count += 1.0;
    for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) rest.sums.push_back({g.mu(e), g.weight(e)});
  }
  std::stable_sort(rest.sums.begin(), rest.sums.end(),
                   [](const SparseEntry& a, const SparseEntry& b) { return a.token < b.token; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < rest.sums.size(); ++i) {
    if (w > 0 && rest.sums[w - 1].token == rest.sums[i].token) {
      rest.sums[w - 1].prob += rest.sums[i].prob;
    } else {
      rest.sums[w++] = rest.sums[i];
    }
  }
  rest.sums.resize(w);
  return rest;
}

double substitute_weight(const Multigraph& g, std::uint64_t occ, TokenId mu) {
  for (auto e = g.edges_begin(occ); e < g.edges_end(occ); ++e) {
    if (g.mu(e) == mu) return g.weight(e);
  }
  return 0.0;
}

std::vector<SparseEntry> sorted_entries(const PairSums& sums, double divisor = 1.0) {
  std::vector<SparseEntry> out;
  out.reserve(sums.size());
  for (const auto& [key, value] : sums) {
    if (value > 0.0) out.push_back({TokenId{static_cast<std::uint32_t>(key)}, value / divisor});
  }
  std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.token < b.token; });
  return out;
}

std::vector<WeightedEdge> edges_above(const PairSums& sums, double cutoff) {
  std::vector<WeightedEdge> edges;
  for (const auto& [key, value] : sums) {
    if (value > 0.0 && value >= cutoff) edges.push_back({pair_first(key), pair_second(key), value});
  }
  return edges;
}

void check_cutoff(double cutoff) {
  if (!(cutoff >= 0.0)) fail("context cutoff must be non-negative");
}

}  // namespace

WeightVariant parse_weight_variant(const std::string& name) {
  if (name == "substitution") return WeightVariant::Substitution;
  if (name == "occurrence") return WeightVariant::Occurrence;
  if (name == "bidirectional") return WeightVariant::Bidirectional;
  if (name == "random-element") return WeightVariant::RandomElement;
  fail("unknown weight variant '" + name + "' (substitution|occurrence|bidirectional|random-element)");
}

double sentence_context_weight(const Multigraph& g, const Corpus& corpus, TokenId rho, SeqId seq,
                               std::optional<std::uint32_t> exclude_pos, WeightVariant variant) {
  const OccurrenceRange r = g.seq_range(seq);
  if (r.empty()) fail("sequence " + std::to_string(seq.value) + " has no ingested distributions");
  std::optional<std::uint64_t> skip;
  if (exclude_pos) {
    for (auto o = r.begin; o < r.end; ++o) {
      if (g.pos(o) == *exclude_pos) skip = o;
    }
  }
  double sub = 0.0;
  double count = 0.0;
  for (auto o = r.begin; o < r.end; ++o) {
    if (skip && o == *skip) continue;
    count += 1.0;
    sub += substitute_weight(g, o, rho);
  }
  double occ = 0.0;
  if (variant == WeightVariant::Occurrence || variant == WeightVariant::Bidirectional) {
    const SequenceRecord* rec = corpus.find(seq);
    if (!rec) fail("sequence " + std::to_string(seq.value) + " missing from corpus");
    for (std::uint32_t p = 0; p < rec->tokens.size(); ++p) {
      if (exclude_pos && p == *exclude_pos) continue;
      occ += rec->tokens[p] == rho;
    }
  }
  switch (variant) {
    case WeightVariant::Substitution: return sub;
    case WeightVariant::Occurrence: return occ;
    case WeightVariant::Bidirectional: return std::min(occ + sub, 1.0);
    case WeightVariant::RandomElement: return count > 0.0 ? sub / count : 0.0;
  }
  return 0.0;
}

DyadVariant parse_dyad_variant(const std::string& name) {
  if (name == "joint-approx") return DyadVariant::JointApprox;
  if (name == "random-element") return DyadVariant::RandomElement;
  if (name == "conditional") return DyadVariant::Conditional;
  fail("unknown dyad variant '" + name + "' (joint-approx|random-element|conditional)");
}

std::string dyad_variant_name(DyadVariant v) {
  switch (v) {
    case DyadVariant::JointApprox: return "joint-approx";
    case DyadVariant::RandomElement: return "random-element";
    case DyadVariant::Conditional: return "conditional";
  }
  return "";
}

double ContextDistribution::weight(TokenId t) const {
  auto it = std::lower_bound(weights.begin(), weights.end(), t,
                             [](const SparseEntry& e, TokenId x) { return e.token < x; });
  return (it != weights.end() && it->token == t) ? it->prob : 0.0;
}

double ContextDistribution::total() const {
  double s = 0.0;
  for (const auto& e : weights) s += e.prob;
  return s;
}

ContextDistribution dyadic_context(const Multigraph& g, TokenId mu, TokenId tau,
                                   const ContextSet& context, DyadVariant variant, bool normalize) {
  ContextDistribution out;
  out.basis = "dyad " + std::to_string(mu.value) + "->" + std::to_string(tau.value);
  out.variant = dyad_variant_name(variant);

  double support = 0.0;
  if (variant == DyadVariant::Conditional) {
    for (SeqId seq : context) {
      const OccurrenceRange r = g.seq_range(seq);
      for (auto o = r.begin; o < r.end; ++o) {
        if (g.tau(o) == tau) support += substitute_weight(g, o, mu);
      }
    }
    if (support == 0.0) return out;
  }

  PairSums sums = detail::reduce_pairs(context.ids(), [&](SeqId seq, PairSums& acc) {
    const OccurrenceRange r = g.seq_range(seq);
    for (auto f = r.begin; f < r.end; ++f) {
      if (g.tau(f) != tau) continue;
      const double gmu = substitute_weight(g, f, mu);
      if (gmu == 0.0) continue;
      const Rest rest = rest_of_sentence(g, r, f);
      if (rest.count == 0.0) continue;
      for (const auto& [rho, q] : rest.sums) {
        double v = 0.0;
        switch (variant) {
          case DyadVariant::JointApprox: v = gmu * q; break;
          case DyadVariant::RandomElement: v = gmu * (q / rest.count); break;
          case DyadVariant::Conditional: v = (gmu / support) * (q / rest.count); break;
        }
        acc[rho.value] += v;
      }
    }
  });
  const bool divide = normalize && variant != DyadVariant::Conditional && !context.empty();
  out.weights = sorted_entries(sums, divide ? static_cast<double>(context.size()) : 1.0);
  return out;
}

ConditionedGraph context_substitution_network(const Multigraph& g, TokenId mu,
                                              std::optional<TokenId> tau, const ContextSet& context,
                                              double cutoff) {
  check_cutoff(cutoff);
  PairSums sums = detail::reduce_pairs(context.ids(), [&](SeqId seq, PairSums& acc) {
    const OccurrenceRange r = g.seq_range(seq);
    for (auto f = r.begin; f < r.end; ++f) {
      if (tau && g.tau(f) != *tau) continue;
      const double gmu = substitute_weight(g, f, mu);
      if (gmu == 0.0) continue;
      const double others = static_cast<double>(r.end - r.begin - 1);
      if (others == 0.0) continue;
      for (auto o = r.begin; o < r.end; ++o) {
        if (o == f) continue;
        const TokenId delta = g.tau(o);
        for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) {
          acc[pair_key(g.mu(e), delta)] += gmu * g.weight(e) / others;
        }
      }
    }
  });
  GraphInfo info{Provenance::ContextSubstitution, "{}", false};
  return ConditionedGraph(edges_above(sums, cutoff), info);
}

ConditionedGraph context_element_network(const Multigraph& g, TokenId mu, TokenId tau,
                                         const ContextSet& context, double cutoff) {
  check_cutoff(cutoff);
  PairSums sums = detail::reduce_pairs(context.ids(), [&](SeqId seq, PairSums& acc) {
    const OccurrenceRange r = g.seq_range(seq);
    for (auto f = r.begin; f < r.end; ++f) {
      if (g.tau(f) != tau) continue;
      const double gmu = substitute_weight(g, f, mu);
      if (gmu == 0.0) continue;
      // sum_{j != k} a_j(rho) a_k(gamma) = A(rho) A(gamma) - sum_j a_j(rho) a_j(gamma)
      const Rest rest = rest_of_sentence(g, r, f);
      std::unordered_map<std::uint64_t, double> same;
      for (auto o = r.begin; o < r.end; ++o) {
        if (o == f) continue;
        for (auto a = g.edges_begin(o); a < g.edges_end(o); ++a) {
          for (auto b = g.edges_begin(o); b < g.edges_end(o); ++b) {
            if (a == b) continue;
            same[pair_key(g.mu(a), g.mu(b))] += g.weight(a) * g.weight(b);
          }
        }
      }
      for (const auto& [rho, arho] : rest.sums) {
        for (const auto& [gamma, agamma] : rest.sums) {
          if (rho == gamma) continue;
          const std::uint64_t key = pair_key(rho, gamma);
          auto it = same.find(key);
          const double cross = arho * agamma - (it == same.end() ? 0.0 : it->second);
          if (cross > 0.0) acc[key] += gmu * cross;
        }
      }
    }
  });
  GraphInfo info{Provenance::ContextElement, "{}", false};
  return ConditionedGraph(edges_above(sums, cutoff), info);
}

ContextDistribution token_context(const Multigraph& g, TokenId mu, const ContextSet& context) {
  ContextDistribution out;
  out.basis = "token " + std::to_string(mu.value);
  out.variant = "random-element";
  const std::vector<EdgeRef> edges = g.out_edges(mu, context);
  double mass = 0.0;
  for (const auto& e : edges) mass += e.weight;
  if (mass == 0.0) return out;
  PairSums sums = detail::reduce_indexed(edges.size(), [&](std::size_t i, PairSums& acc) {
    const EdgeRef& e = edges[i];
    const Rest rest = rest_of_sentence(g, g.seq_range(e.seq), e.occurrence.value);
    if (rest.count == 0.0) return;
    for (const auto& [rho, q] : rest.sums) acc[rho.value] += e.weight * (q / rest.count);
  });
  out.weights = sorted_entries(sums, mass);
  return out;
}

namespace {

std::vector<SparseEntry> strongest(std::vector<SparseEntry> entries, std::size_t n) {
  std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    return a.token < b.token;
  });
  if (entries.size() > n) entries.resize(n);
  return entries;
}

}  // namespace

ConditionedGraph token_context_network(const Multigraph& g, TokenId mu, const ContextSet& context,
                                       std::size_t top_n, std::size_t max_degree) {
  if (top_n < 1 || max_degree < 1) fail("top_n and max_degree must be at least 1");
  ContextDistribution focal = token_context(g, mu, context);
  std::erase_if(focal.weights, [&](const SparseEntry& e) { return e.token == mu; });
  std::vector<SparseEntry> top = strongest(focal.weights, top_n);

  std::vector<TokenId> nodes{mu};
  for (const auto& e : top) nodes.push_back(e.token);
  std::sort(nodes.begin(), nodes.end());

  std::vector<WeightedEdge> edges;
  for (TokenId node : nodes) {
    std::vector<SparseEntry> ties =
        node == mu ? focal.weights : token_context(g, node, context).weights;
    std::erase_if(ties, [&](const SparseEntry& e) {
      return e.token == node || !std::binary_search(nodes.begin(), nodes.end(), e.token);
    });
    for (const auto& e : strongest(std::move(ties), max_degree)) edges.push_back({node, e.token, e.prob});
  }
  GraphInfo info{Provenance::TokenContext, "{}", false};
  return ConditionedGraph(std::move(edges), info, nodes);
}

std::vector<SparseEntry> sentence_context_distribution(const Multigraph& g, SeqId seq,
                                                       std::optional<TokenId> exclude_token) {
  const OccurrenceRange r = g.seq_range(seq);
  std::vector<SparseEntry> all;
  double count = 0.0;
  for (auto o = r.begin; o < r.end; ++o) {
    if (exclude_token && g.tau(o) == *exclude_token) continue;
    count += 1.0;
    for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) all.push_back({g.mu(e), g.weight(e)});
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const SparseEntry& a, const SparseEntry& b) { return a.token < b.token; });
  std::vector<SparseEntry> out;
  for (const auto& e : all) {
    if (!out.empty() && out.back().token == e.token) {
      out.back().prob += e.prob;
    } else {
      out.push_back(e);
    }
  }
  for (auto& e : out) e.prob /= count;
  return out;
}

}  // namespace substinet
