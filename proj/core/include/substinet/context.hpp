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

enum class WeightVariant { Substitution, Occurrence, Bidirectional, RandomElement };
WeightVariant parse_weight_variant(const std::string& name);

/// Weight of `rho` in sequence `seq`, leaving out the occurrence at
/// `exclude_pos` when given. Substitution sums rho's probability over the
/// remaining ingested occurrences; random-element divides that by their
/// number; occurrence counts rho in the remaining positions; bidirectional
/// is min(occurrence + substitution, 1). Throws when the sequence has no
/// ingested occurrences.
double sentence_context_weight(const Multigraph& g, const Corpus& corpus, TokenId rho, SeqId seq,
                               std::optional<std::uint32_t> exclude_pos, WeightVariant variant);

enum class DyadVariant { JointApprox, RandomElement, Conditional };
DyadVariant parse_dyad_variant(const std::string& name);
std::string dyad_variant_name(DyadVariant v);

/// Sparse token weights sorted by token id.
struct ContextDistribution {
  std::vector<SparseEntry> weights;
  std::string basis;
  std::string variant;

  double weight(TokenId t) const;
  double total() const;
};

/// Context of the dyad mu->tau over the occurrences of tau in `context`.
/// Joint-approx sums g_mu(o) * q_rho(s minus o); random-element uses the
/// per-position mean instead of the sum; conditional weights each
/// occurrence's per-position mean by g_mu(o) / sum_k g_mu(k). With
/// `normalize` the first two are divided by the number of sequences.
ContextDistribution dyadic_context(const Multigraph& g, TokenId mu, TokenId tau,
                                   const ContextSet& context, DyadVariant variant,
                                   bool normalize = false);

inline constexpr double kDefaultContextCutoff = 0.1;

/// Ties rho->delta = sum over occurrences o where mu replaces tau of
/// g_mu(o) * g_rho(o') / |s minus o| for every other occurrence o' of delta
/// in the same sentence. Without `tau` every replaced token contributes.
/// Ties below `cutoff` are dropped.
ConditionedGraph context_substitution_network(const Multigraph& g, TokenId mu,
                                              std::optional<TokenId> tau, const ContextSet& context,
                                              double cutoff = kDefaultContextCutoff);

/// Ties rho-gamma = sum over occurrences o of tau of
/// g_mu(o) * sum_{j != k} g_rho(o_j) g_gamma(o_k), over distinct other
/// occurrences j, k of the sentence. Symmetric, no self ties.
ConditionedGraph context_element_network(const Multigraph& g, TokenId mu, TokenId tau,
                                         const ContextSet& context,
                                         double cutoff = kDefaultContextCutoff);

/// q_mu(rho): sum over replaced tokens tau of the random-element dyadic
/// context, divided by mu's total substitution mass, so it sums to at most
/// one.
ContextDistribution token_context(const Multigraph& g, TokenId mu, const ContextSet& context);

/// mu plus its `top_n` strongest contextual tokens; every node's ties are
/// its own token_context restricted to the node set, at most `max_degree`
/// per node.
ConditionedGraph token_context_network(const Multigraph& g, TokenId mu, const ContextSet& context,
                                       std::size_t top_n = 1000, std::size_t max_degree = 100);

/// Mean substitute distribution over the ingested occurrences of one
/// sentence, skipping occurrences whose focal token is `exclude_token`.
/// Empty when nothing remains.
std::vector<SparseEntry> sentence_context_distribution(const Multigraph& g, SeqId seq,
                                                       std::optional<TokenId> exclude_token);

}  // namespace substinet
