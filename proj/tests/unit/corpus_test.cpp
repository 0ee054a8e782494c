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

#include <sstream>

#include "fuzz.hpp"
#include "jsonl.hpp"
#include "substinet/context_spec.hpp"
#include "substinet/corpus.hpp"
#include "substinet/error.hpp"

using namespace substinet;

namespace {

Corpus load(const std::string& text, std::unordered_set<std::string> stop = {}) {
  std::istringstream in(text);
  return load_corpus(in, std::move(stop));
}

std::string three_years() {
  return jsonl::sentence(1, {"the", "leader", "runs", "firm"}, 1990) +
         jsonl::sentence(2, {"a", "manager", "leads", "team"}, 1991) +
         jsonl::sentence(3, {"the", "founder", "builds", "firm"}, 1992) +
         jsonl::sentence(4, {"leader", "of", "the", "team"}, 1990);
}

}  // namespace

TEST(Corpus, CountsVocabularyAndOccurrences) {
  const Corpus c = load(jsonl::sentence(1, {"a", "b", "c", "a", "d"}) + jsonl::sentence(2, {"e", "b", "f", "g", "a"}));
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.vocabulary().size(), 7u);
  std::size_t occurrences = 0;
  for (std::uint32_t t = 0; t < c.vocabulary().size(); ++t) occurrences += c.occurrences(TokenId{t}).size();
  EXPECT_EQ(occurrences, 10u);
  EXPECT_EQ(c.occurrences(c.vocabulary().require("a")).size(), 3u);
}

TEST(Corpus, EmptyStream) {
  const Corpus c = load("");
  EXPECT_TRUE(c.empty());
  EXPECT_TRUE(resolve_context(c, ContextSpec::all()).empty());
  EXPECT_TRUE(resolve_context(c, ContextSpec::meta_eq("year", std::int64_t{1990})).empty());
}

TEST(Corpus, DuplicateSeqIdNamesTheId) {
  try {
    load(jsonl::sentence(7, {"a"}) + jsonl::sentence(7, {"b"}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find('7'), std::string::npos);
  }
}

TEST(Corpus, RejectsUnsupportedMetaType) {
  EXPECT_THROW(load(R"({"doc":"d","seq":1,"tokens":["a"],"meta":{"year":[1,2]}})"), Error);
  EXPECT_THROW(load(R"({"doc":"d","seq":1,"tokens":["a"],"meta":{"k":{"x":1}}})"), Error);
}

TEST(Corpus, NonStopTokenCount) {
  const Corpus c = load(three_years(), {"the", "a", "of"});
  EXPECT_EQ(c.total_tokens(), 16u);
  EXPECT_EQ(c.non_stop_tokens(), 11u);
}

TEST(Context, MetaEqSelectsOneYear) {
  const Corpus c = load(three_years());
  const ContextSet s = resolve_context(c, ContextSpec::meta_eq("year", std::int64_t{1990}));
  EXPECT_EQ(s, ContextSet({SeqId{1}, SeqId{4}}));
}

TEST(Context, AbsentTokenGivesEmptySet) {
  const Corpus c = load(three_years());
  EXPECT_TRUE(resolve_context(c, ContextSpec::contains_token("president")).empty());
}

TEST(Context, UnknownMetaKeyIsNamed) {
  const Corpus c = load(three_years());
  try {
    resolve_context(c, ContextSpec::meta_eq("decade", std::int64_t{1990}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("decade"), std::string::npos);
  }
}

TEST(Context, ExpressionAndJsonForms) {
  const Corpus c = load(three_years());
  const ContextSet a = resolve_context(c, parse_context_expression("year<=1991&has:leader"));
  EXPECT_EQ(a, ContextSet({SeqId{1}, SeqId{4}}));
  const ContextSpec round = parse_context_spec(parse_context_expression("year>=1991&has:firm").to_json());
  EXPECT_EQ(resolve_context(c, round), ContextSet({SeqId{3}}));
  EXPECT_EQ(resolve_context(c, parse_context_expression("*")).size(), 4u);
}

// Linear scan with the predicate written out by hand.
TEST(Context, ConjunctionMatchesLinearScan) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    fuzz::FuzzSpec spec;
    spec.seed = seed;
    spec.sentences = 30;
    spec.years = 4;
    const auto f = fuzz::generate(spec);
    const Corpus c = load(f.corpus);
    for (int year = 2000; year < 2004; ++year) {
      for (const std::string tok : {"w0", "w3"}) {
        const ContextSpec q = ContextSpec::all_of(
            {ContextSpec::meta_eq("year", std::int64_t{year}), ContextSpec::contains_token(tok)});
        std::vector<SeqId> expect;
        for (const auto& s : c.sequences()) {
          const auto* y = std::get_if<std::int64_t>(find_meta(s.meta, "year"));
          bool has = false;
          for (TokenId t : s.tokens) has = has || c.vocabulary().surface(t) == tok;
          if (y && *y == year && has) expect.push_back(s.seq);
        }
        EXPECT_EQ(resolve_context(c, q), ContextSet(expect));
      }
    }
  }
}

TEST(Context, NegationIsExactComplement) {
  fuzz::FuzzSpec spec;
  spec.sentences = 40;
  const Corpus c = load(fuzz::generate(spec).corpus);
  const ContextSpec q = ContextSpec::any_of({ContextSpec::contains_token("w1"), ContextSpec::meta_range("year", 2001, std::nullopt)});
  const ContextSet in = resolve_context(c, q);
  const ContextSet out = resolve_context(c, ContextSpec::negate(q));
  EXPECT_EQ(out, in.complement(c));
  EXPECT_EQ(in.set_union(out), ContextSet::all(c));
}
