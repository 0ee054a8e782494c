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

#include "substinet/substitution.hpp"

#include <algorithm>
#include <unordered_map>

#include "pair_reduce.hpp"
#include "substinet/error.hpp"

namespace substinet {

using detail::PairSums;

namespace {

// Per-occurrence divisor under sequence counting: the number of occurrences
// of the same focal token inside the sequence.
std::uint32_t repeats_in_sequence(const Multigraph& g, OccurrenceRange r, std::uint64_t occ) {
  std::uint32_t n = 0;
  for (auto o = r.begin; o < r.end; ++o) n += g.tau(o) == g.tau(occ);
  return n;
}

PairSums sum_ties(const Multigraph& g, const ContextSet& context, bool sequence_counting) {
  return detail::reduce_pairs(context.ids(), [&](SeqId seq, PairSums& sums) {
    const OccurrenceRange r = g.seq_range(seq);
    for (auto o = r.begin; o < r.end; ++o) {
      const TokenId tau = g.tau(o);
      const double div = sequence_counting ? repeats_in_sequence(g, r, o) : 1.0;
      for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) {
        sums[pair_key(g.mu(e), tau)] += g.weight(e) / div;
      }
    }
  });
}

bool in_lambda(const std::vector<TokenId>& lambda, TokenId t) {
  return std::binary_search(lambda.begin(), lambda.end(), t);
}

}  // namespace

ConditionedGraph aggregate_substitution(const Multigraph& g, const ContextSet& context,
                                        const AggregationOptions& options) {
  GraphInfo info{Provenance::Aggregate, options.context_descriptor, options.normalize};
  if (context.empty()) return ConditionedGraph({}, info);
  PairSums sums = sum_ties(g, context, options.sequence_counting);
  const double divisor = options.normalize ? static_cast<double>(context.size()) : 1.0;
  return ConditionedGraph(detail::to_edges(sums, divisor), info);
}

ConditionedGraph compositional_substitution(const Multigraph& g, const ContextSet& context,
                                            const AggregationOptions& options) {
  GraphInfo info{Provenance::Compositional, options.context_descriptor, false};
  if (context.empty()) return ConditionedGraph({}, info);
  PairSums sums = sum_ties(g, context, options.sequence_counting);

  // |tau in C|: ingested occurrences of tau, or sequences containing tau.
  std::unordered_map<std::uint32_t, double> count;
  for (SeqId seq : context) {
    const OccurrenceRange r = g.seq_range(seq);
    for (auto o = r.begin; o < r.end; ++o) {
      const double w = options.sequence_counting ? 1.0 / repeats_in_sequence(g, r, o) : 1.0;
      count[g.tau(o).value] += w;
    }
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(sums.size());
  for (const auto& [key, value] : sums) {
    const TokenId tau = pair_second(key);
    edges.push_back({pair_first(key), tau, value / count.at(tau.value)});
  }
  return ConditionedGraph(std::move(edges), info);
}

SymmetricMode parse_symmetric_mode(const std::string& name) {
  if (name == "bidirectional") return SymmetricMode::Bidirectional;
  if (name == "min") return SymmetricMode::Min;
  if (name == "max") return SymmetricMode::Max;
  fail("unknown symmetric mode '" + name + "' (bidirectional|min|max)");
}

ConditionedGraph symmetric_variant(const ConditionedGraph& g, SymmetricMode mode) {
  struct Half {
    TokenId lo, hi;
    double forward, backward;
  };
  std::vector<Half> halves;
  halves.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    if (e.src <= e.dst) {
      halves.push_back({e.src, e.dst, e.weight, 0.0});
    } else {
      halves.push_back({e.dst, e.src, 0.0, e.weight});
    }
  }
  std::sort(halves.begin(), halves.end(), [](const Half& a, const Half& b) {
    return std::pair(a.lo, a.hi) < std::pair(b.lo, b.hi);
  });
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < halves.size();) {
    Half h = halves[i++];
    while (i < halves.size() && halves[i].lo == h.lo && halves[i].hi == h.hi) {
      h.forward += halves[i].forward;
      h.backward += halves[i].backward;
      ++i;
    }
    double w = 0.0;
    switch (mode) {
      case SymmetricMode::Bidirectional: w = (h.forward + h.backward) / 2.0; break;
      case SymmetricMode::Min: w = std::min(h.forward, h.backward); break;
      case SymmetricMode::Max: w = std::max(h.forward, h.backward); break;
    }
    if (h.lo == h.hi) {
      // A self-loop is its own reverse.
      w = h.forward;
      edges.push_back({h.lo, h.hi, w});
      continue;
    }
    edges.push_back({h.lo, h.hi, w});
    edges.push_back({h.hi, h.lo, w});
  }
  GraphInfo info = g.info();
  info.provenance = mode == SymmetricMode::Bidirectional ? Provenance::Bidirectional
                    : mode == SymmetricMode::Min         ? Provenance::Min
                                                         : Provenance::Max;
  return ConditionedGraph(std::move(edges), std::move(info), g.nodes());
}

LambdaMode parse_lambda_mode(const std::string& name) {
  if (name == "occurrence") return LambdaMode::Occurrence;
  if (name == "substitution") return LambdaMode::Substitution;
  if (name == "bidirectional") return LambdaMode::Bidirectional;
  fail("unknown lambda mode '" + name + "' (occurrence|substitution|bidirectional)");
}

ConditionedGraph lambda_condition(const Multigraph& g, const Corpus& corpus, const LambdaSpec& spec,
                                  const ContextSet& context, const AggregationOptions& options) {
  if (spec.tokens.empty()) fail("lambda conditioning needs at least one token");
  std::vector<TokenId> lambda = spec.tokens;
  std::sort(lambda.begin(), lambda.end());
  lambda.erase(std::unique(lambda.begin(), lambda.end()), lambda.end());
  GraphInfo info{Provenance::Lambda, options.context_descriptor, options.normalize};
  if (context.empty()) return ConditionedGraph({}, info);

  PairSums sums = detail::reduce_pairs(context.ids(), [&](SeqId seq, PairSums& out) {
    const OccurrenceRange r = g.seq_range(seq);
    if (r.empty()) return;
    const SequenceRecord* rec = corpus.find(seq);
    if (!rec) fail("multigraph sequence " + std::to_string(seq.value) + " missing from corpus");

    // Lambda substitute mass of every occurrence in the sentence.
    std::vector<double> lam(r.end - r.begin, 0.0);
    if (spec.mode != LambdaMode::Occurrence) {
      for (auto o = r.begin; o < r.end; ++o) {
        for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) {
          if (in_lambda(lambda, g.mu(e))) lam[o - r.begin] += g.weight(e);
        }
      }
    }
    for (auto f = r.begin; f < r.end; ++f) {
      const std::uint32_t focal_pos = g.pos(f);
      double present = 0.0;
      for (std::uint32_t p = 0; p < rec->tokens.size(); ++p) {
        if (spec.exclude_focal && p == focal_pos) continue;
        present += in_lambda(lambda, rec->tokens[p]);
      }
      double weight = 0.0;
      if (spec.mode == LambdaMode::Occurrence) {
        weight = present > 0.0 ? 1.0 : 0.0;
      } else {
        double mass = 0.0;
        double others = 0.0;
        for (auto o = r.begin; o < r.end; ++o) {
          if (spec.exclude_focal && o == f) continue;
          mass += lam[o - r.begin];
          others += 1.0;
        }
        const double sub = others > 0.0 ? std::min(1.0, mass / others) : 0.0;
        weight = spec.mode == LambdaMode::Substitution ? sub : std::min(1.0, present + sub);
      }
      if (weight == 0.0) continue;
      const TokenId tau = g.tau(f);
      for (auto e = g.edges_begin(f); e < g.edges_end(f); ++e) {
        out[pair_key(g.mu(e), tau)] += g.weight(e) * weight;
      }
    }
  });
  const double divisor = options.normalize ? static_cast<double>(context.size()) : 1.0;
  return ConditionedGraph(detail::to_edges(sums, divisor), info);
}

ConditionedGraph sparsify(const ConditionedGraph& g, const SparsifyPolicy& policy) {
  if (policy.kind == SparsifyPolicy::Kind::OutMass && !(policy.fraction > 0.0 && policy.fraction <= 1.0)) {
    fail("sparsify fraction must lie in (0, 1]");
  }
  if (policy.kind == SparsifyPolicy::Kind::MaxDegree && policy.k < 1) fail("sparsify degree must be at least 1");
  std::vector<WeightedEdge> kept;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    auto out = g.out_edges_at(i);
    std::vector<WeightedEdge> ranked(out.begin(), out.end());
    std::sort(ranked.begin(), ranked.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.dst < b.dst;
    });
    std::size_t keep = ranked.size();
    if (policy.kind == SparsifyPolicy::Kind::MaxDegree) {
      keep = std::min(keep, policy.k);
    } else {
      double total = 0.0;
      for (const auto& e : ranked) total += e.weight;
      double prefix = 0.0;
      for (keep = 0; keep < ranked.size();) {
        prefix += ranked[keep].weight;
        ++keep;
        if (prefix >= policy.fraction * total * (1.0 - 1e-12)) break;
      }
    }
    kept.insert(kept.end(), ranked.begin(), ranked.begin() + keep);
  }
  return ConditionedGraph(std::move(kept), g.info(), g.nodes());
}

}  // namespace substinet
