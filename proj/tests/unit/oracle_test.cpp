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
#include <stdexcept>

#include "dense.hpp"
#include "fuzz.hpp"
#include "jsonl.hpp"
#include "oracle.hpp"

// Hand-checked values for the reference implementations themselves.

TEST(OracleDense, PageRankTwoNodes) {
  const auto r = oracle::pagerank({{0, 1}, {1, 0}}, 0.85);
  EXPECT_NEAR(r[0], 0.5, 1e-14);
  EXPECT_NEAR(r[1], 0.5, 1e-14);
}

TEST(OracleDense, ModularityOfTwoTriangles) {
  oracle::Matrix w = oracle::zeros(6);
  auto link = [&](int a, int b, double x) { w[a][b] = w[b][a] = x; };
  link(0, 1, 1);
  link(1, 2, 1);
  link(0, 2, 1);
  link(3, 4, 1);
  link(4, 5, 1);
  link(3, 5, 1);
  link(2, 3, 0.1);
  EXPECT_NEAR(oracle::modularity(w, {0, 0, 0, 1, 1, 1}), 6.0 / 6.1 - 0.5, 1e-14);
  EXPECT_NEAR(oracle::modularity(w, {0, 0, 0, 0, 0, 0}), 0.0, 1e-14);
  const auto [best, q] = oracle::best_partition(w);
  EXPECT_NEAR(q, 6.0 / 6.1 - 0.5, 1e-14);
  EXPECT_EQ(best[0], best[2]);
  EXPECT_NE(best[2], best[3]);
}

TEST(OracleDense, InverseAndEigen) {
  const oracle::Matrix a{{2, 1}, {1, 2}};
  const auto inv = oracle::inverse(a);
  EXPECT_NEAR(inv[0][0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(inv[0][1], -1.0 / 3.0, 1e-15);
  const auto e = oracle::jacobi_eigen(a);
  EXPECT_NEAR(e.values[0], 1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 3.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors[0][1]), std::sqrt(0.5), 1e-14);
  // Laplacian of a path: L L+ L = L.
  const oracle::Matrix lap{{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
  const auto back = oracle::multiply(oracle::multiply(lap, oracle::pseudo_inverse(lap)), lap);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(back[i][j], lap[i][j], 1e-13);
  }
}

TEST(OracleDense, KatzAndRadius) {
  const oracle::Matrix w{{0, 1}, {1, 0}};
  EXPECT_NEAR(oracle::katz_inverse(w, 0.5)[0], 1.0, 1e-14);
  EXPECT_NEAR(oracle::katz_series(w, 0.5, 80)[0], 1.0, 1e-14);
  EXPECT_NEAR(oracle::spectral_radius({{1, 1}, {1, 1}}), 2.0, 1e-12);
}

TEST(OracleDense, FlowOnPath) {
  const auto f = oracle::flow_betweenness({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  EXPECT_NEAR(f[1], 1.0, 1e-14);
  EXPECT_NEAR(f[0], 0.0, 1e-14);
}

TEST(OracleInstance, TruncationAndStripping) {
  const auto d = oracle::truncate({{"a", 0.5}, {"b", 0.3}, {"c", 0.2}}, 0.8);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.at("a"), 0.625, 1e-15);
  const std::string corpus = jsonl::sentence(1, {"x", "y"});
  const std::string records = jsonl::record(1, 0, "x", 0.1, {{"x", 0.3}, {"y", 0.6}});
  const auto inst = oracle::build_instance(corpus, records, {}, 1.0);
  ASSERT_EQ(inst.occurrences.size(), 1u);
  EXPECT_EQ(inst.occurrences[0].subs.size(), 1u);
  EXPECT_NEAR(inst.occurrences[0].subs.at("y"), 1.0, 1e-15);
}

TEST(OracleInstance, RefusesLargeInstances) {
  fuzz::FuzzSpec spec;
  spec.sentences = oracle::kMaxSentences + 1;
  const auto f = fuzz::generate(spec);
  EXPECT_THROW(oracle::build_instance(f.corpus, f.records, f.stopwords, 0.95), std::length_error);
  EXPECT_NO_THROW(oracle::build_instance(f.corpus, f.records, f.stopwords, 0.95, false));
  EXPECT_THROW(oracle::best_partition(oracle::zeros(9)), std::length_error);
}
