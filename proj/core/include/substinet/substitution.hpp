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
#include <string>
#include <vector>

#include "substinet/conditioned_graph.hpp"
#include "substinet/context_spec.hpp"
#include "substinet/corpus.hpp"
#include "substinet/multigraph.hpp"

namespace substinet {

struct AggregationOptions {
  /// Divide aggregate ties by the number of sequences in the context.
  bool normalize = false;
  /// Count a token once per sequence: repeated occurrences of tau inside one
  /// sequence are averaged instead of summed.
  bool sequence_counting = false;
  /// Stored verbatim in the graph's provenance.
  std::string context_descriptor = "{}";
};

/// Edge mu->tau = sum over occurrences of tau in `context` of g_mu(s, tau).
ConditionedGraph aggregate_substitution(const Multigraph& g, const ContextSet& context,
                                        const AggregationOptions& options = {});

/// Edge mu->tau = mean over occurrences of tau in `context` of g_mu(s, tau).
/// In-mass of every tau is one.
ConditionedGraph compositional_substitution(const Multigraph& g, const ContextSet& context,
                                            const AggregationOptions& options = {});

enum class SymmetricMode { Bidirectional, Min, Max };
SymmetricMode parse_symmetric_mode(const std::string& name);

/// Both directions of every pair get (a + b) / 2, min(a, b) or max(a, b),
/// with an absent direction counting as zero.
ConditionedGraph symmetric_variant(const ConditionedGraph& g, SymmetricMode mode);

enum class LambdaMode { Occurrence, Substitution, Bidirectional };
LambdaMode parse_lambda_mode(const std::string& name);

struct LambdaSpec {
  std::vector<TokenId> tokens;
  LambdaMode mode = LambdaMode::Occurrence;
  /// Leave the focal position out when measuring whether a Lambda token
  /// occurs or could occur in the sentence.
  bool exclude_focal = true;
};

/// Soft conditioning: each occurrence's edges are weighted by how likely the
/// rest of its sentence contains a Lambda token. Occurrence mode uses the
/// indicator of an actual Lambda token, substitution mode the mean over
/// other positions of the summed Lambda substitute probabilities (at most
/// one), bidirectional mode min(count + substitution, 1).
ConditionedGraph lambda_condition(const Multigraph& g, const Corpus& corpus, const LambdaSpec& spec,
                                  const ContextSet& context, const AggregationOptions& options = {});

struct SparsifyPolicy {
  enum class Kind { OutMass, MaxDegree };
  Kind kind = Kind::MaxDegree;
  double fraction = 1.0;
  std::size_t k = 200;

  static SparsifyPolicy out_mass(double fraction) { return {Kind::OutMass, fraction, 0}; }
  static SparsifyPolicy max_degree(std::size_t k) { return {Kind::MaxDegree, 1.0, k}; }
};

/// Keeps each node's strongest out-edges (ties by ascending target id):
/// the smallest set reaching `fraction` of its out-strength, or at most k.
ConditionedGraph sparsify(const ConditionedGraph& g, const SparsifyPolicy& policy);

}  // namespace substinet
