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
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "substinet/ids.hpp"
#include "substinet/vocabulary.hpp"

namespace substinet {

using MetaValue = std::variant<std::int64_t, double, bool, std::string>;
/// Sorted by key, keys unique.
using MetaMap = std::vector<std::pair<std::string, MetaValue>>;

const MetaValue* find_meta(const MetaMap& meta, std::string_view key);
std::string meta_to_string(const MetaValue& value);

/// One pre-tokenized sequence as it arrives from the corpus file.
struct SequenceInput {
  SeqId seq;
  std::string doc;
  std::vector<std::string> tokens;
  MetaMap meta;
};

/// Parses one corpus line: {"doc": .., "seq": .., "tokens": [..], "meta": {..}}.
SequenceInput parse_sequence_line(std::string_view line);
std::string sequence_to_json(const SequenceInput& seq);

struct SequenceRecord {
  SeqId seq;
  std::string doc;
  std::vector<TokenId> tokens;
  MetaMap meta;
};

struct TokenPosition {
  SeqId seq;
  std::uint32_t pos;
  auto operator<=>(const TokenPosition&) const = default;
};

/// Immutable sequence registry plus occurrence index (token -> positions).
/// Only the vocabulary can grow after load, through ingestion.
class Corpus {
 public:
  Corpus() = default;

  const Vocabulary& vocabulary() const { return vocab_; }
  Vocabulary& mutable_vocabulary() { return vocab_; }

  /// Sequences in ascending seq id order.
  std::span<const SequenceRecord> sequences() const { return sequences_; }
  std::size_t size() const { return sequences_.size(); }
  bool empty() const { return sequences_.empty(); }

  const SequenceRecord* find(SeqId seq) const;
  std::optional<std::size_t> index_of(SeqId seq) const;

  /// Every position of `token` in the corpus, ordered by (seq, pos).
  std::span<const TokenPosition> occurrences(TokenId token) const;
  std::uint64_t total_tokens() const { return total_tokens_; }
  std::uint64_t non_stop_tokens() const { return non_stop_tokens_; }

  const std::set<std::string, std::less<>>& meta_keys() const { return meta_keys_; }

 private:
  friend class CorpusBuilder;
  Vocabulary vocab_;
  std::vector<SequenceRecord> sequences_;
  std::vector<std::uint64_t> occ_offsets_;
  std::vector<TokenPosition> occ_positions_;
  std::set<std::string, std::less<>> meta_keys_;
  std::uint64_t total_tokens_ = 0;
  std::uint64_t non_stop_tokens_ = 0;
};

/// Single-writer loader. Rejects duplicate seq ids and empty sequences.
class CorpusBuilder {
 public:
  explicit CorpusBuilder(std::unordered_set<std::string> stopwords = {});
  /// Starts from an existing vocabulary so token ids are preserved.
  explicit CorpusBuilder(Vocabulary vocab);

  void add(SequenceInput seq);
  /// Adds a record whose tokens are already interned in this builder's vocabulary.
  void add_interned(SequenceRecord seq);
  Corpus build() &&;

 private:
  Vocabulary vocab_;
  std::vector<SequenceRecord> sequences_;
};

/// Reads line-delimited corpus records.
Corpus load_corpus(std::istream& in, std::unordered_set<std::string> stopwords);

}  // namespace substinet
