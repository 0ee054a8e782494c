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

// Brute-force reference implementations. Nothing here links against or
// includes the production library: instances are parsed from the same JSONL
// text the production ingester reads and every quantity is recomputed from
// its definition with plain loops over strings.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Dist = std::map<std::string, double>;
using Edges = std::map<std::pair<std::string, std::string>, double>;
using SeqSet = std::set<std::int64_t>;

struct Sentence {
  std::int64_t seq = 0;
  std::vector<std::string> tokens;
  std::map<std::string, double> meta;
};

struct Occurrence {
  std::int64_t seq = 0;
  std::uint32_t pos = 0;
  std::string tau;
  double self_prob = 0.0;
  /// Truncated and renormalized substitutes.
  Dist subs;
};

struct Instance {
  std::vector<Sentence> sentences;
  std::vector<Occurrence> occurrences;
  std::set<std::string> stopwords;

  const Sentence& sentence(std::int64_t seq) const;
  std::vector<const Occurrence*> in_sentence(std::int64_t seq) const;
  SeqSet all() const;
  std::set<std::string> surfaces() const;
};

/// Largest instance the oracles accept.
inline constexpr std::size_t kMaxSentences = 20;
inline constexpr std::size_t kMaxVocabulary = 10;
inline constexpr std::size_t kMaxNodes = 10;

/// Keeps the shortest prefix (descending probability, ties by surface)
/// whose mass reaches `threshold` of the total, then rescales to one.
Dist truncate(std::vector<std::pair<std::string, double>> entries, double threshold);

/// Parses corpus and record lines and truncates each record after removing
/// its own token. Throws std::length_error when the instance is too large.
Instance build_instance(const std::string& corpus_jsonl, const std::string& records_jsonl,
                        const std::set<std::string>& stopwords, double mass, bool size_guard = true);

Edges aggregate(const Instance& inst, const SeqSet& context, bool normalize = false);
Edges compositional(const Instance& inst, const SeqSet& context);
/// mode: bidirectional, min or max.
Edges symmetric(const Edges& g, const std::string& mode);
/// mode: occurrence, substitution or bidirectional.
Edges lambda(const Instance& inst, const SeqSet& context, const std::set<std::string>& tokens,
             const std::string& mode, bool exclude_focal);

/// variant: substitution, occurrence, bidirectional or random-element.
double sentence_weight(const Instance& inst, const std::string& rho, std::int64_t seq,
                       std::optional<std::uint32_t> exclude_pos, const std::string& variant);
/// variant: joint-approx, random-element or conditional.
Dist dyad(const Instance& inst, const std::string& mu, const std::string& tau, const SeqSet& context,
          const std::string& variant, bool normalize = false);
Edges context_substitution(const Instance& inst, const std::string& mu, std::optional<std::string> tau,
                           const SeqSet& context);
Edges context_element(const Instance& inst, const std::string& mu, const std::string& tau, const SeqSet& context);
Dist token_context(const Instance& inst, const std::string& mu, const SeqSet& context);
Dist sentence_distribution(const Instance& inst, std::int64_t seq, std::optional<std::string> exclude);

double entropy_of(const Occurrence& occ, bool keep_self);
Edges entropy(const Instance& inst, const SeqSet& context, bool keep_self);
Edges certainty(const Instance& inst, const SeqSet& context, bool keep_self);
Edges unconventionality(const Instance& inst, const SeqSet& context, bool keep_self);

}  // namespace oracle
