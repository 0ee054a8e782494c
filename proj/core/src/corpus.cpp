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

#include "substinet/corpus.hpp"

#include <algorithm>
#include <istream>
#include <limits>

#include <json.hpp>

#include "substinet/error.hpp"
#include "substinet/text_format.hpp"

namespace substinet {

using nlohmann::json;

const MetaValue* find_meta(const MetaMap& meta, std::string_view key) {
  auto it = std::lower_bound(meta.begin(), meta.end(), key,
                             [](const auto& entry, std::string_view k) { return entry.first < k; });
  if (it == meta.end() || it->first != key) return nullptr;
  return &it->second;
}

std::string meta_to_string(const MetaValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return std::to_string(v);
        }
      },
      value);
}

namespace {

MetaValue meta_from_json(const std::string& key, const json& value) {
  if (value.is_boolean()) return value.get<bool>();
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_float()) return value.get<double>();
  if (value.is_string()) return value.get<std::string>();
  fail("unsupported meta type for key '" + key + "': " + std::string(value.type_name()));
}

}  // namespace

SequenceInput parse_sequence_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed corpus line: ") + e.what());
  }
  if (!j.is_object()) fail("corpus line is not an object");
  SequenceInput out;
  auto seq = j.find("seq");
  if (seq == j.end() || !seq->is_number_integer()) fail("corpus line lacks integer 'seq'");
  out.seq = SeqId{seq->get<std::int64_t>()};
  if (auto doc = j.find("doc"); doc != j.end()) {
    if (doc->is_string()) {
      out.doc = doc->get<std::string>();
    } else if (doc->is_number_integer()) {
      out.doc = std::to_string(doc->get<std::int64_t>());
    } else {
      fail("corpus 'doc' must be a string");
    }
  }
  auto tokens = j.find("tokens");
  if (tokens == j.end() || !tokens->is_array()) fail("corpus line lacks 'tokens' array");
  out.tokens.reserve(tokens->size());
  for (const auto& t : *tokens) {
    if (!t.is_string()) fail("token entries must be strings (seq " + std::to_string(out.seq.value) + ")");
    out.tokens.push_back(t.get<std::string>());
  }
  if (auto meta = j.find("meta"); meta != j.end() && !meta->is_null()) {
    if (!meta->is_object()) fail("corpus 'meta' must be an object");
    for (const auto& [key, value] : meta->items()) {
      out.meta.emplace_back(key, meta_from_json(key, value));
    }
    std::sort(out.meta.begin(), out.meta.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return out;
}

std::string sequence_to_json(const SequenceInput& seq) {
  json j;
  j["doc"] = seq.doc;
  j["seq"] = seq.seq.value;
  j["tokens"] = seq.tokens;
  json meta = json::object();
  for (const auto& [key, value] : seq.meta) {
    std::visit([&](const auto& v) { meta[key] = v; }, value);
  }
  j["meta"] = meta;
  return j.dump();
}

const SequenceRecord* Corpus::find(SeqId seq) const {
  auto idx = index_of(seq);
  return idx ? &sequences_[*idx] : nullptr;
}

std::optional<std::size_t> Corpus::index_of(SeqId seq) const {
  auto it = std::lower_bound(sequences_.begin(), sequences_.end(), seq,
                             [](const SequenceRecord& r, SeqId s) { return r.seq < s; });
  if (it == sequences_.end() || it->seq != seq) return std::nullopt;
  return static_cast<std::size_t>(it - sequences_.begin());
}

std::span<const TokenPosition> Corpus::occurrences(TokenId token) const {
  if (token.value + 1 >= occ_offsets_.size()) return {};
  const auto begin = occ_offsets_[token.value];
  const auto end = occ_offsets_[token.value + 1];
  return std::span<const TokenPosition>(occ_positions_.data() + begin, end - begin);
}

CorpusBuilder::CorpusBuilder(std::unordered_set<std::string> stopwords)
    : vocab_(std::move(stopwords)) {}

CorpusBuilder::CorpusBuilder(Vocabulary vocab) : vocab_(std::move(vocab)) {}

void CorpusBuilder::add(SequenceInput seq) {
  if (seq.tokens.empty()) fail("sequence " + std::to_string(seq.seq.value) + " has no tokens");
  if (seq.tokens.size() > std::numeric_limits<std::uint32_t>::max()) {
    fail("sequence " + std::to_string(seq.seq.value) + " is too long");
  }
  SequenceRecord rec;
  rec.seq = seq.seq;
  rec.doc = std::move(seq.doc);
  rec.meta = std::move(seq.meta);
  rec.tokens.reserve(seq.tokens.size());
  for (const auto& t : seq.tokens) rec.tokens.push_back(vocab_.intern(t));
  sequences_.push_back(std::move(rec));
}

void CorpusBuilder::add_interned(SequenceRecord seq) {
  if (seq.tokens.empty()) fail("sequence " + std::to_string(seq.seq.value) + " has no tokens");
  for (TokenId t : seq.tokens) {
    if (t.value >= vocab_.size()) fail("sequence token id out of vocabulary range");
  }
  sequences_.push_back(std::move(seq));
}

Corpus CorpusBuilder::build() && {
  Corpus c;
  std::stable_sort(sequences_.begin(), sequences_.end(),
                   [](const SequenceRecord& a, const SequenceRecord& b) { return a.seq < b.seq; });
  for (std::size_t i = 1; i < sequences_.size(); ++i) {
    if (sequences_[i].seq == sequences_[i - 1].seq) {
      fail("duplicate seq id: " + std::to_string(sequences_[i].seq.value));
    }
  }

  // Counting sort into a CSR occurrence index; iteration in (seq, pos)
  // order keeps every posting list sorted.
  std::vector<std::uint64_t> counts(vocab_.size() + 1, 0);
  for (const auto& s : sequences_) {
    for (TokenId t : s.tokens) {
      ++counts[t.value + 1];
      ++c.total_tokens_;
      if (!vocab_.is_stopword(t)) ++c.non_stop_tokens_;
    }
    for (const auto& [key, value] : s.meta) c.meta_keys_.insert(key);
  }
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  c.occ_offsets_ = counts;
  c.occ_positions_.resize(c.total_tokens_);
  for (const auto& s : sequences_) {
    for (std::uint32_t p = 0; p < s.tokens.size(); ++p) {
      c.occ_positions_[counts[s.tokens[p].value]++] = TokenPosition{s.seq, p};
    }
  }
  c.vocab_ = std::move(vocab_);
  c.sequences_ = std::move(sequences_);
  return c;
}

Corpus load_corpus(std::istream& in, std::unordered_set<std::string> stopwords) {
  CorpusBuilder builder(std::move(stopwords));
  for_each_line(in, [&](std::string_view line, std::size_t number) {
    try {
      builder.add(parse_sequence_line(line));
    } catch (const Error& e) {
      fail("corpus line " + std::to_string(number) + ": " + e.what());
    }
  });
  return std::move(builder).build();
}

}  // namespace substinet
