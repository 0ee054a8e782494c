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

#include "substinet/vocabulary.hpp"

#include <fstream>
#include <limits>

#include "substinet/error.hpp"

namespace substinet {

Vocabulary::Vocabulary(std::unordered_set<std::string> stopwords)
    : stopwords_(std::move(stopwords)) {}

TokenId Vocabulary::intern(std::string_view surface) {
  if (auto it = index_.find(surface); it != index_.end()) return it->second;
  if (surfaces_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    fail("vocabulary exceeds 2^32-1 entries");
  }
  if (surface.empty()) fail("empty token surface");
  TokenId id{static_cast<std::uint32_t>(surfaces_.size())};
  surfaces_.emplace_back(surface);
  stop_.push_back(stopwords_.contains(surfaces_.back()));
  index_.emplace(surfaces_.back(), id);
  return id;
}

std::optional<TokenId> Vocabulary::find(std::string_view surface) const {
  if (auto it = index_.find(surface); it != index_.end()) return it->second;
  return std::nullopt;
}

TokenId Vocabulary::require(std::string_view surface) const {
  if (auto id = find(surface)) return *id;
  fail("unknown token: '" + std::string(surface) + "'");
}

const std::string& Vocabulary::surface(TokenId id) const {
  if (id.value >= surfaces_.size()) fail("token id out of range: " + std::to_string(id.value));
  return surfaces_[id.value];
}

bool Vocabulary::is_stopword_surface(std::string_view surface) const {
  return stopwords_.contains(std::string(surface));
}

Vocabulary Vocabulary::from_entries(std::vector<std::string> surfaces, std::vector<bool> stop,
                                    std::unordered_set<std::string> stopwords) {
  if (surfaces.size() != stop.size()) fail("vocabulary columns differ in length");
  Vocabulary v(std::move(stopwords));
  v.surfaces_ = std::move(surfaces);
  v.stop_ = std::move(stop);
  v.index_.reserve(v.surfaces_.size());
  for (std::uint32_t i = 0; i < v.surfaces_.size(); ++i) {
    if (!v.index_.emplace(v.surfaces_[i], TokenId{i}).second) {
      fail("duplicate vocabulary surface: '" + v.surfaces_[i] + "'");
    }
  }
  return v;
}

std::unordered_set<std::string> read_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open stop-word list: " + path);
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.insert(line.substr(first));
  }
  return out;
}

}  // namespace substinet
