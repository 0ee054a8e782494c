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

#include <cmath>

#include "bridge.hpp"
#include "fuzz.hpp"
#include "jsonl.hpp"
#include "substinet/entropy.hpp"
#include "substinet/error.hpp"

using namespace substinet;

namespace {

Store single(double self_prob, const std::vector<std::pair<std::string, double>>& subs) {
  fuzz::FuzzCorpus f;
  f.corpus = jsonl::sentence(1, {"tau", "x"});
  f.records = jsonl::record(1, 0, "tau", self_prob, subs);
  return bridge::make_store(f, 1.0);
}

}  // namespace

TEST(Entropy, UniformOverFour) {
  const Store s = single(0.0, {{"a", 0.25}, {"b", 0.25}, {"c", 0.25}, {"d", 0.25}});
  EXPECT_NEAR(occurrence_entropy(s.graph, 0), std::log(4.0), 1e-14);
  EntropyOptions bits;
  bits.log_base = 2.0;
  EXPECT_NEAR(occurrence_entropy(s.graph, 0, bits), 2.0, 1e-14);
}

TEST(Entropy, KeepSelfAddsOneOutcome) {
  const Store s = single(0.5, {{"a", 0.25}, {"b", 0.25}});
  EntropyOptions opt;
  opt.log_base = 2.0;
  EXPECT_NEAR(occurrence_entropy(s.graph, 0, opt), 1.0, 1e-14);
  opt.keep_self = true;
  EXPECT_NEAR(occurrence_entropy(s.graph, 0, opt), 1.5, 1e-14);
}

TEST(Entropy, DegenerateOccurrence) {
  const Store s = single(0.0, {{"a", 1.0}});
  EXPECT_EQ(occurrence_entropy(s.graph, 0), 0.0);
  const ContextSet all = ContextSet::all(s.corpus);
  const auto cert = compound(s.graph, all, CompoundKind::Certainty);
  EXPECT_EQ(cert.graph.edge_count(), 0u);
  EXPECT_EQ(cert.dropped, 1u);
  const auto unc = compound(s.graph, all, CompoundKind::Unconventionality);
  EXPECT_EQ(unc.graph.edge_count(), 0u);
  EXPECT_EQ(unc.dropped, 1u);
}

TEST(Entropy, CompoundExamples) {
  const Store s = single(0.0, {{"a", 0.5}, {"b", 0.5}});
  const auto& v = s.corpus.vocabulary();
  EntropyOptions bits;
  bits.log_base = 2.0;
  const ContextSet all = ContextSet::all(s.corpus);
  const auto cert = compound(s.graph, all, CompoundKind::Certainty, bits);
  EXPECT_NEAR(cert.graph.weight(v.require("a"), v.require("tau")), 0.5, 1e-14);
  const auto unc = compound(s.graph, all, CompoundKind::Unconventionality, bits);
  EXPECT_NEAR(unc.graph.weight(v.require("a"), v.require("tau")), 1.0 / std::log(2.0), 1e-14);
  EXPECT_EQ(unc.dropped, 0u);
  const auto h = entropy_network(s.graph, all, bits);
  EXPECT_NEAR(h.weight(v.require("b"), v.require("tau")), 1.0, 1e-14);
  EXPECT_THROW(parse_compound_kind("surprise"), Error);
}

TEST(Entropy, NetworksMatchOracle) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    fuzz::FuzzSpec spec;
    spec.seed = seed;
    spec.sentences = 10;
    spec.max_subs = 1 + seed % 5;
    const auto f = fuzz::generate(spec);
    const Store s = bridge::make_store(f);
    const auto inst = bridge::make_instance(f);
    const auto& v = s.corpus.vocabulary();
    const ContextSpec recent = ContextSpec::meta_range("year", 2001.0, std::nullopt);
    const ContextSet ctx = resolve_context(s.corpus, recent);
    const oracle::SeqSet seqs = bridge::seqs(ctx);
    for (bool keep : {false, true}) {
      EntropyOptions opt;
      opt.keep_self = keep;
      EXPECT_LT(bridge::max_diff(bridge::edges(entropy_network(s.graph, ctx, opt), v), oracle::entropy(inst, seqs, keep)),
                1e-12);
      EXPECT_LT(bridge::max_diff(bridge::edges(compound(s.graph, ctx, CompoundKind::Certainty, opt).graph, v),
                                 oracle::certainty(inst, seqs, keep)),
                1e-9);
      EXPECT_LT(bridge::max_diff(bridge::edges(compound(s.graph, ctx, CompoundKind::Unconventionality, opt).graph, v),
                                 oracle::unconventionality(inst, seqs, keep)),
                1e-9);
    }
  }
}
