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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "substinet/corpus.hpp"
#include "substinet/ingest.hpp"

namespace substinet {

/// Probability per surface, sorted by surface.
using ToyDistribution = std::vector<std::pair<std::string, double>>;

struct ToyGenerate {
  std::size_t count = 20;
  std::size_t min_len = 4;
  std::size_t max_len = 8;
  /// Inclusive year range stored as meta "year".
  std::int64_t first_year = 1990;
  std::int64_t last_year = 2010;
  std::uint64_t seed = 1;
  /// Named word classes for patterns.
  std::map<std::string, std::vector<std::string>> classes;
  /// When nonempty, each sentence follows one pattern chosen uniformly; a
  /// slot naming a class draws uniformly from it, any other slot is a
  /// literal token. Lengths then come from the pattern.
  std::vector<std::vector<std::string>> patterns;
};

/// Neighbour-keyed stand-in for a masked language model.
struct ToyModelSpec {
  std::vector<std::string> vocabulary;
  std::vector<std::string> stopwords;
  std::string boundary = "<s>";
  /// (left neighbour, right neighbour) -> distribution over the vocabulary.
  std::map<std::pair<std::string, std::string>, ToyDistribution> table;
  ToyDistribution unigram;
  /// Fixed sentences; when empty, sentences are drawn from the unigram.
  std::vector<SequenceInput> sentences;
  ToyGenerate generate;
};

/// Parses the JSON spec and checks that every distribution sums to one and
/// only uses vocabulary surfaces.
ToyModelSpec read_toy_spec(std::istream& in);
ToyModelSpec load_toy_spec(const std::string& path);

/// Table row for the neighbours of position i (boundary symbol past either
/// end), or the unigram when the table has no such row.
const ToyDistribution& toy_distribution(const ToyModelSpec& spec, std::span<const std::string> tokens,
                                        std::size_t i);

struct ToyOutput {
  std::vector<SequenceInput> sequences;
  std::vector<DistributionRecord> records;
  /// Positions whose distribution puts all mass on the token itself.
  std::uint64_t skipped = 0;
};

/// One record per non-stop-word position: the true token's probability
/// becomes self_prob, every other positive entry a substitute.
ToyOutput generate_toy(const ToyModelSpec& spec);

}  // namespace substinet
