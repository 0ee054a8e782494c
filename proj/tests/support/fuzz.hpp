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

// Random corpora and distribution records as JSONL text. Probabilities are
// drawn from continuous distributions so exact ties do not occur.

#include <cstdint>
#include <set>
#include <string>

namespace fuzz {

struct FuzzSpec {
  std::uint64_t seed = 1;
  std::size_t sentences = 8;
  /// Content tokens w0..w{vocab-1}.
  std::size_t vocab = 7;
  /// Stop words s0..s{stopwords-1}; they appear in sentences but get no records.
  std::size_t stopwords = 1;
  std::size_t min_len = 3;
  std::size_t max_len = 6;
  std::size_t max_subs = 4;
  /// Chance that a content position gets a record.
  double record_rate = 1.0;
  /// Chance that a record also lists its own token as a substitute.
  double truth_rate = 0.0;
  int first_year = 2000;
  int years = 3;
};

struct FuzzCorpus {
  std::string corpus;
  std::string records;
  std::set<std::string> stopwords;
  std::size_t record_count = 0;
};

FuzzCorpus generate(const FuzzSpec& spec);

}  // namespace fuzz
