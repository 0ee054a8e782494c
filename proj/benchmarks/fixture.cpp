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

#include "fixture.hpp"

#include <map>
#include <sstream>
#include <unordered_set>

#include "substinet/toy_model.hpp"

namespace bench {

const ToyText& toy_text(std::size_t count) {
  static std::map<std::size_t, ToyText> cache;
  auto it = cache.find(count);
  if (it != cache.end()) return it->second;
  substinet::ToyModelSpec spec = substinet::load_toy_spec(std::string(SUBSTINET_DATA_DIR) + "/toy_spec.json");
  spec.generate.count = count;
  const substinet::ToyOutput toy = substinet::generate_toy(spec);
  ToyText t;
  std::ostringstream corpus, records, stop;
  for (const auto& s : toy.sequences) corpus << substinet::sequence_to_json(s) << '\n';
  for (const auto& r : toy.records) records << substinet::record_to_json(r) << '\n';
  for (const auto& w : spec.stopwords) stop << w << '\n';
  t.corpus = corpus.str();
  t.records = records.str();
  t.stopwords = stop.str();
  return cache.emplace(count, std::move(t)).first->second;
}

const substinet::Store& toy_store(std::size_t count) {
  static std::map<std::size_t, substinet::Store> cache;
  auto it = cache.find(count);
  if (it != cache.end()) return it->second;
  const ToyText& t = toy_text(count);
  std::unordered_set<std::string> stop;
  std::istringstream sin(t.stopwords);
  for (std::string w; std::getline(sin, w);) stop.insert(w);
  substinet::Store store;
  std::istringstream cin(t.corpus);
  store.corpus = substinet::load_corpus(cin, std::move(stop));
  store.settings.mass_threshold = 0.95;
  std::istringstream rin(t.records);
  substinet::ingest_records(store, rin);
  return cache.emplace(count, std::move(store)).first->second;
}

}  // namespace bench
