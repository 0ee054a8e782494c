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

#include <filesystem>
#include <set>
#include <sstream>
#include <tuple>

#include "bridge.hpp"
#include "fuzz.hpp"
#include "jsonl.hpp"
#include "substinet/error.hpp"
#include "substinet/multigraph.hpp"
#include "substinet/store.hpp"
#include "substinet/substitution.hpp"

using namespace substinet;

namespace {

Store leader_store(double mass = 1.0) {
  fuzz::FuzzCorpus f;
  f.corpus = jsonl::sentence(1, {"the", "person", "is", "a", "leader"}) +
             jsonl::sentence(2, {"leader", "of", "the", "lab"});
  f.records = jsonl::record(1, 4, "leader", 0.2, {{"physicist", 0.455}, {"scientist", 0.260}, {"science", 0.024}}) +
              jsonl::record(1, 1, "person", 0.5, {{"leader", 0.3}, {"man", 0.1}}) +
              jsonl::record(2, 0, "leader", 0.6, {{"head", 0.3}});
  f.stopwords = {"the", "is", "a", "of"};
  return bridge::make_store(f, mass);
}

}  // namespace

TEST(Multigraph, OneEdgePerSubstitute) {
  const Store s = leader_store();
  const auto& v = s.corpus.vocabulary();
  const auto in = s.graph.in_edges(v.require("leader"), ContextSet({SeqId{1}}));
  ASSERT_EQ(in.size(), 3u);
  const double total = 0.455 + 0.260 + 0.024;
  EXPECT_EQ(v.surface(in[0].mu), "physicist");
  EXPECT_NEAR(in[0].weight, 0.455 / total, 1e-15);
  EXPECT_EQ(v.surface(in[1].mu), "scientist");
  EXPECT_NEAR(in[1].weight, 0.260 / total, 1e-15);
  EXPECT_EQ(v.surface(in[2].mu), "science");
  EXPECT_NEAR(in[2].weight, 0.024 / total, 1e-15);
}

TEST(Multigraph, ReplacementDirection) {
  const Store s = leader_store();
  const auto& v = s.corpus.vocabulary();
  const auto out = s.graph.out_edges(v.require("leader"), ContextSet::all(s.corpus));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(v.surface(out[0].tau), "person");
  EXPECT_NEAR(out[0].weight, 0.75, 1e-15);
}

TEST(Multigraph, ContextFilters) {
  const Store s = leader_store();
  const auto& v = s.corpus.vocabulary();
  const TokenId leader = v.require("leader");
  EXPECT_EQ(s.graph.in_edges(leader, ContextSet({SeqId{2}})).size(), 1u);
  EXPECT_TRUE(s.graph.in_edges(v.require("person"), ContextSet({SeqId{2}})).empty());
  EXPECT_TRUE(s.graph.in_edges(leader, ContextSet({SeqId{99}})).empty());
  EXPECT_TRUE(s.graph.in_edges(TokenId{9999}, ContextSet::all(s.corpus)).empty());
}

TEST(Multigraph, AllSequencesIsUnionOfSingles) {
  fuzz::FuzzSpec spec;
  spec.sentences = 25;
  spec.record_rate = 0.8;
  const Store s = bridge::make_store(fuzz::generate(spec));
  const ContextSet all = ContextSet::all(s.corpus);
  for (std::uint32_t t = 0; t < s.corpus.vocabulary().size(); ++t) {
    const TokenId tok{t};
    for (bool in : {true, false}) {
      const auto whole = in ? s.graph.in_edges(tok, all) : s.graph.out_edges(tok, all);
      std::vector<EdgeRef> pieces;
      for (SeqId seq : all) {
        const auto part = in ? s.graph.in_edges(tok, ContextSet({seq})) : s.graph.out_edges(tok, ContextSet({seq}));
        pieces.insert(pieces.end(), part.begin(), part.end());
      }
      ASSERT_EQ(whole.size(), pieces.size());
      std::multiset<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t, double>> a, b;
      for (const auto& e : whole) a.insert({e.occurrence.value, e.tau.value, e.mu.value, e.weight});
      for (const auto& e : pieces) b.insert({e.occurrence.value, e.tau.value, e.mu.value, e.weight});
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Multigraph, InMassIsOnePerOccurrence) {
  const Store s = leader_store(0.95);
  for (std::uint64_t o = 0; o < s.graph.occurrence_count(); ++o) {
    double m = 0.0;
    for (auto e = s.graph.edges_begin(o); e < s.graph.edges_end(o); ++e) m += s.graph.weight(e);
    EXPECT_NEAR(m, 1.0, 1e-9);
  }
}

TEST(Multigraph, RecordsRoundTrip) {
  fuzz::FuzzSpec spec;
  spec.sentences = 15;
  const auto f = fuzz::generate(spec);
  const Store s = bridge::make_store(f, 1.0);
  const auto records = s.graph.to_records(s.corpus.vocabulary());
  ASSERT_EQ(records.size(), f.record_count);
  // Re-ingesting the reconstruction at full mass reproduces the graph.
  fuzz::FuzzCorpus again = f;
  again.records.clear();
  for (const auto& r : records) again.records += record_to_json(r) + "\n";
  const Store t = bridge::make_store(again, 1.0);
  ASSERT_EQ(t.graph.edge_count(), s.graph.edge_count());
  for (std::uint64_t e = 0; e < s.graph.edge_count(); ++e) {
    EXPECT_EQ(s.corpus.vocabulary().surface(s.graph.mu(e)), t.corpus.vocabulary().surface(t.graph.mu(e)));
    EXPECT_NEAR(s.graph.weight(e), t.graph.weight(e), 1e-14);
  }
}

TEST(Multigraph, DuplicateOccurrenceRejected) {
  fuzz::FuzzCorpus f;
  f.corpus = jsonl::sentence(1, {"a", "b"});
  f.records = jsonl::record(1, 0, "a", 0.1, {{"b", 0.5}}) + jsonl::record(1, 0, "a", 0.1, {{"c", 0.5}});
  EXPECT_THROW(bridge::make_store(f), Error);
}

TEST(Multigraph, CoarserMassIsSubset) {
  fuzz::FuzzSpec spec;
  spec.sentences = 20;
  spec.max_subs = 6;
  const auto f = fuzz::generate(spec);
  const Store s = bridge::make_store(f, 0.99);
  const Multigraph coarse = graph_at_mass(s, 0.9);
  const auto fine_g = aggregate_substitution(s.graph, ContextSet::all(s.corpus));
  const auto coarse_g = aggregate_substitution(coarse, ContextSet::all(s.corpus));
  for (const auto& e : coarse_g.edges()) EXPECT_GT(fine_g.weight(e.src, e.dst), 0.0);
  EXPECT_LE(coarse.edge_count(), s.graph.edge_count());
  EXPECT_THROW(graph_at_mass(s, 1.0), Error);
  // Re-truncating equals truncating the raw records at the coarser mass.
  const auto inst = bridge::make_instance(f, 0.9, false);
  EXPECT_LT(bridge::max_diff(bridge::edges(coarse_g, s.corpus.vocabulary()), oracle::aggregate(inst, inst.all())), 1e-12);
}

TEST(Store, SaveLoadRoundTrip) {
  fuzz::FuzzSpec spec;
  spec.sentences = 12;
  const Store s = bridge::make_store(fuzz::generate(spec), 0.9);
  const auto path = std::filesystem::temp_directory_path() / "substinet_store_roundtrip.bin";
  save_store(path, s);
  const Store t = load_store(path);
  std::filesystem::remove(path);
  EXPECT_EQ(t.corpus.size(), s.corpus.size());
  EXPECT_EQ(t.settings.mass_threshold, 0.9);
  const auto a = s.graph.columns();
  const auto b = t.graph.columns();
  EXPECT_EQ(a.edge_weight, b.edge_weight);
  EXPECT_EQ(a.edge_mu, b.edge_mu);
  EXPECT_EQ(a.occ_seq, b.occ_seq);
  EXPECT_EQ(a.occ_self, b.occ_self);
}

TEST(Store, CorruptFileRejected) {
  std::istringstream junk("not a store at all");
  EXPECT_THROW(read_store(junk), Error);
}
