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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "bridge.hpp"
#include "substinet/error.hpp"
#include "substinet/toy_model.hpp"

using namespace substinet;

namespace {

const std::string kSpecPath = std::string(SUBSTINET_DATA_DIR) + "/toy_spec.json";

fuzz::FuzzCorpus as_jsonl(const ToyModelSpec& spec, const ToyOutput& out) {
  fuzz::FuzzCorpus f;
  for (const auto& s : out.sequences) f.corpus += sequence_to_json(s) + "\n";
  for (const auto& r : out.records) f.records += record_to_json(r) + "\n";
  f.stopwords.insert(spec.stopwords.begin(), spec.stopwords.end());
  f.record_count = out.records.size();
  return f;
}

double lookup(const ToyDistribution& d, const std::string& s) {
  for (const auto& [k, p] : d) {
    if (k == s) return p;
  }
  return 0.0;
}

}  // namespace

TEST(ToyModel, TableHitAndBackoff) {
  const ToyModelSpec spec = load_toy_spec(kSpecPath);
  const std::vector<std::string> s{"the", "leader", "inspires"};
  EXPECT_NEAR(lookup(toy_distribution(spec, s, 1), "leader"), 0.35, 1e-15);
  const std::vector<std::string> odd{"growth", "growth"};
  EXPECT_EQ(&toy_distribution(spec, odd, 0), &spec.unigram);
}

TEST(ToyModel, RecordsFollowTheTable) {
  const ToyModelSpec spec = load_toy_spec(kSpecPath);
  const ToyOutput out = generate_toy(spec);
  ASSERT_FALSE(out.records.empty());
  std::map<std::int64_t, const SequenceInput*> by_seq;
  std::uint64_t content = 0;
  for (const auto& s : out.sequences) {
    by_seq[s.seq.value] = &s;
    for (const auto& t : s.tokens) {
      content += std::find(spec.stopwords.begin(), spec.stopwords.end(), t) == spec.stopwords.end();
    }
  }
  EXPECT_EQ(out.records.size() + out.skipped, content);
  for (const auto& r : out.records) {
    const auto& tokens = by_seq.at(r.seq.value)->tokens;
    ASSERT_EQ(tokens[r.pos], r.truth);
    const auto& d = toy_distribution(spec, tokens, r.pos);
    EXPECT_EQ(r.self_prob, lookup(d, r.truth));
    double mass = r.self_prob;
    for (const auto& [sub, p] : r.subs) {
      EXPECT_NE(sub, r.truth);
      EXPECT_EQ(p, lookup(d, sub));
      mass += p;
    }
    EXPECT_NEAR(mass, 1.0, 1e-12);
  }
}

TEST(ToyModel, DeterministicAndIngestible) {
  const ToyModelSpec spec = load_toy_spec(kSpecPath);
  const ToyOutput a = generate_toy(spec);
  const ToyOutput b = generate_toy(spec);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(record_to_json(a.records[i]), record_to_json(b.records[i]));
  const Store s = bridge::make_store(as_jsonl(spec, a), 1.0);
  EXPECT_EQ(s.graph.occurrence_count(), a.records.size());
  // At full mass the stored weights are the substitutes rescaled to one.
  for (std::uint64_t o = 0; o < s.graph.occurrence_count(); ++o) {
    const auto& r = a.records[o];
    double subs = 0.0;
    for (const auto& [sub, p] : r.subs) subs += p;
    for (auto e = s.graph.edges_begin(o); e < s.graph.edges_end(o); ++e) {
      const std::string mu = s.corpus.vocabulary().surface(s.graph.mu(e));
      double p = 0.0;
      for (const auto& [sub, q] : r.subs) {
        if (sub == mu) p = q;
      }
      EXPECT_NEAR(s.graph.weight(e), p / subs, 1e-12);
    }
  }
}

TEST(ToyModel, RejectsBadSpecs) {
  std::istringstream bad_sum(R"({"vocabulary": ["a", "b"], "unigram": {"a": 0.5, "b": 0.4}})");
  EXPECT_THROW(read_toy_spec(bad_sum), Error);
  std::istringstream unknown(R"({"vocabulary": ["a", "b"], "unigram": {"a": 0.5, "c": 0.5}})");
  EXPECT_THROW(read_toy_spec(unknown), Error);
  std::istringstream ok(R"({"vocabulary": ["a", "b"], "unigram": {"a": 0.5, "b": 0.5},
                           "sentences": [{"tokens": ["a", "b"], "year": 2001}]})");
  const auto spec = read_toy_spec(ok);
  const auto out = generate_toy(spec);
  ASSERT_EQ(out.sequences.size(), 1u);
  ASSERT_EQ(out.records.size(), 2u);
  EXPECT_EQ(out.records[0].self_prob, 0.5);
  EXPECT_THROW(load_toy_spec("/nonexistent/toy.json"), Error);
}
