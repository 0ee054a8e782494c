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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "substinet/ids.hpp"

namespace substinet {

/// Interned token table. Ids are dense and never change once assigned; the
/// table only grows (substitute surfaces absent from the corpus are interned
/// during ingestion). The stop-word set is fixed at construction.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::unordered_set<std::string> stopwords);

  TokenId intern(std::string_view surface);
  std::optional<TokenId> find(std::string_view surface) const;
  /// Like find() but throws naming the surface.
  TokenId require(std::string_view surface) const;

  const std::string& surface(TokenId id) const;
  bool is_stopword(TokenId id) const { return stop_[id.value]; }
  bool is_stopword_surface(std::string_view surface) const;
  std::size_t size() const { return surfaces_.size(); }

  /// Restores a persisted table; entries must be unique.
  static Vocabulary from_entries(std::vector<std::string> surfaces, std::vector<bool> stop,
                                 std::unordered_set<std::string> stopwords);
  const std::unordered_set<std::string>& stopwords() const { return stopwords_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_set<std::string> stopwords_;
  std::vector<std::string> surfaces_;
  std::vector<bool> stop_;
  std::unordered_map<std::string, TokenId, Hash, std::equal_to<>> index_;
};

/// Reads one surface per line; blank lines and lines starting with '#' are skipped.
std::unordered_set<std::string> read_stopwords(const std::string& path);

}  // namespace substinet
