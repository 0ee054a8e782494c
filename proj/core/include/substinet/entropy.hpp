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
#include <string>

#include "substinet/conditioned_graph.hpp"
#include "substinet/context_spec.hpp"
#include "substinet/multigraph.hpp"

namespace substinet {

struct EntropyOptions {
  /// Include the truth token's own probability as one more outcome, with
  /// the substitutes scaled to the remaining mass.
  bool keep_self = false;
  /// Natural log unless set.
  double log_base = 0.0;
  /// Divide summed ties by the number of sequences in the context.
  bool normalize = false;
  std::string context_descriptor = "{}";
};

/// Prediction entropy of one ingested occurrence.
double occurrence_entropy(const Multigraph& g, std::uint64_t occ, const EntropyOptions& options = {});

/// Tie mu->tau = sum over occurrences of tau in the context where mu is a
/// substitute of that occurrence's entropy.
ConditionedGraph entropy_network(const Multigraph& g, const ContextSet& context,
                                 const EntropyOptions& options = {});

enum class CompoundKind { Certainty, Unconventionality };
CompoundKind parse_compound_kind(const std::string& name);

struct CompoundResult {
  ConditionedGraph graph;
  /// Occurrence ties left out because the measure is undefined for them.
  std::uint64_t dropped = 0;
};

/// Certainty g/h or unconventionality -h/ln(g), per occurrence, summed over
/// the context. Certainty skips h = 0; unconventionality skips g = 1.
CompoundResult compound(const Multigraph& g, const ContextSet& context, CompoundKind kind,
                        const EntropyOptions& options = {});

}  // namespace substinet
