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

#include <array>
#include <cmath>
#include <random>

#include "bridge.hpp"
#include "dense.hpp"
#include "fuzz.hpp"
#include "substinet/error.hpp"
#include "substinet/landscape.hpp"

using namespace substinet;

namespace {

// X X^T with three random features, so the centered kernel has two positive axes.
oracle::Matrix random_kernel(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::array<double, 3>> x(n);
  for (auto& row : x) {
    for (double& v : row) v = u(rng);
  }
  oracle::Matrix k = oracle::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i][j] = x[i][0] * x[j][0] + x[i][1] * x[j][1] + x[i][2] * x[j][2];
  }
  return k;
}

double axis_diff(const std::vector<Point>& p, const std::vector<double>& want, bool x_axis) {
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double got = x_axis ? p[i].x : p[i].y;
    plus = std::max(plus, std::abs(got - want[i]));
    minus = std::max(minus, std::abs(got + want[i]));
  }
  return std::min(plus, minus);
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<SparseEntry> sparse(std::initializer_list<std::pair<std::uint32_t, double>> v) {
  std::vector<SparseEntry> out;
  for (auto [t, p] : v) out.push_back({TokenId{t}, p});
  return out;
}

}  // namespace

TEST(Projection, MatchesClassicalScaling) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto k = random_kernel(rng, 3 + trial % 6);
    const auto p = project_kernel(k, 0);
    const auto want = oracle::classical_scaling(k);
    ASSERT_FALSE(p.degenerate);
    EXPECT_NEAR(p.lambda1, want.lambda1, 1e-8);
    EXPECT_NEAR(p.lambda2, want.lambda2, 1e-8);
    EXPECT_LT(axis_diff(p.points, want.x, true), 1e-6) << trial;
    EXPECT_LT(axis_diff(p.points, want.y, false), 1e-6) << trial;
    EXPECT_GE(p.points[0].x, 0.0);
    EXPECT_GE(p.points[0].y, 0.0);
  }
}

TEST(Projection, TwoClustersOnALine) {
  const auto p = project_kernel({{1, 0}, {0, 1}}, 1);
  EXPECT_TRUE(p.degenerate);
  EXPECT_NEAR(p.points[1].x, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(p.points[0].x, -std::sqrt(0.5), 1e-12);
  EXPECT_EQ(p.points[0].y, 0.0);
  EXPECT_NEAR(dist(p.points[0], p.points[1]), std::sqrt(2.0), 1e-12);
}

TEST(Projection, EquilateralTriangle) {
  const auto p = project_kernel({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 0);
  EXPECT_FALSE(p.degenerate);
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) EXPECT_NEAR(dist(p.points[a], p.points[b]), std::sqrt(2.0), 1e-12);
  }
  EXPECT_THROW(project_kernel({{1}}, 0), Error);
  EXPECT_THROW(project_kernel({{1, 0}, {0, 1}}, 2), Error);
}

TEST(Projection, KernelAveragesBothDirections) {
  const ConditionedGraph g({{TokenId{1}, TokenId{2}, 0.4}, {TokenId{2}, TokenId{1}, 0.2}}, GraphInfo{});
  const std::vector<std::vector<TokenId>> clusters{{TokenId{1}}, {TokenId{2}, TokenId{3}}};
  const auto k = cluster_kernel(g, clusters);
  EXPECT_NEAR(k[0][1], 0.15, 1e-15);
  EXPECT_NEAR(k[1][0], 0.15, 1e-15);
  EXPECT_EQ(k[0][0], 0.0);
  EXPECT_THROW(cluster_kernel(g, {{TokenId{1}}, {TokenId{1}}}), Error);
}

TEST(Positions, MatchSentenceDistributions) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    fuzz::FuzzSpec spec;
    spec.seed = seed;
    spec.sentences = 12;
    const auto f = fuzz::generate(spec);
    const Store s = bridge::make_store(f);
    const auto inst = bridge::make_instance(f);
    const auto& v = s.corpus.vocabulary();
    const std::vector<std::vector<std::string>> names{{"w0", "w2", "w4"}, {"w3", "w5"}, {"w6", "s0"}};
    std::vector<std::vector<TokenId>> clusters;
    std::map<std::string, std::size_t> cluster_of;
    for (std::size_t k = 0; k < names.size(); ++k) {
      clusters.emplace_back();
      for (const auto& n : names[k]) {
        if (auto t = v.find(n)) {
          clusters.back().push_back(*t);
          cluster_of[n] = k;
        }
      }
    }
    const std::vector<Point> points{{1.0, 0.0}, {-0.5, 0.8}, {-0.5, -0.8}};
    const auto focal = v.find("w1");
    if (!focal) continue;
    const auto got = position_sentences(s.graph, s.corpus, ContextSet::all(s.corpus), *focal, clusters, points);
    std::size_t expected_excluded = 0;
    std::size_t next = 0;
    for (const auto& sen : inst.sentences) {
      std::vector<double> prox(3, 0.0);
      double total = 0.0;
      for (const auto& [tok, p] : oracle::sentence_distribution(inst, sen.seq, "w1")) {
        auto it = cluster_of.find(tok);
        if (it == cluster_of.end()) continue;
        prox[it->second] += p;
        total += p;
      }
      if (total <= 0.0) {
        ++expected_excluded;
        continue;
      }
      ASSERT_LT(next, got.sentences.size());
      const auto& pos = got.sentences[next++];
      EXPECT_EQ(pos.seq.value, sen.seq);
      Point want;
      for (std::size_t k = 0; k < 3; ++k) {
        want.x += prox[k] / total * points[k].x;
        want.y += prox[k] / total * points[k].y;
        EXPECT_NEAR(pos.proximity[k], prox[k] / total, 1e-12);
      }
      EXPECT_NEAR(pos.point.x, want.x, 1e-12);
      EXPECT_NEAR(pos.point.y, want.y, 1e-12);
      double w = static_cast<double>(std::count(sen.tokens.begin(), sen.tokens.end(), "w1"));
      for (const auto* o : inst.in_sentence(sen.seq)) {
        auto it = o->subs.find("w1");
        if (it != o->subs.end()) w += it->second;
      }
      EXPECT_NEAR(pos.weight, std::min(w, 1.0), 1e-12);
    }
    EXPECT_EQ(next, got.sentences.size());
    EXPECT_EQ(got.excluded, expected_excluded);
  }
}

TEST(Elevation, MatchesUntruncatedKernel) {
  const std::vector<WeightedPoint> pts{{{0.1, 0.2}, 0.5}, {{-0.4, 0.3}, 1.0}, {{0.7, -0.6}, 0.25}};
  GridSpec grid{-2.0, 2.0, -1.5, 1.5, 32};
  std::vector<std::pair<double, double>> xy;
  std::vector<double> w;
  for (const auto& p : pts) {
    xy.emplace_back(p.point.x, p.point.y);
    w.push_back(p.weight);
  }
  const auto m = elevation_map(pts, grid, 0.3, false);
  for (std::size_t j = 0; j < grid.resolution; ++j) {
    for (std::size_t i = 0; i < grid.resolution; ++i) {
      EXPECT_NEAR(m.at(i, j), oracle::kde_at(xy, w, 0.3, grid.x(i), grid.y(j)), 1e-12);
    }
  }
}

TEST(Elevation, DensityIntegratesToOne) {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<WeightedPoint> pts;
  for (int i = 0; i < 200; ++i) pts.push_back({{n(rng), n(rng)}, 0.1 + std::abs(n(rng))});
  const double h = scott_bandwidth(pts);
  const GridSpec grid = default_grid({}, pts, h, 64);
  const auto m = elevation_map(pts, grid, h, true);
  EXPECT_NEAR(m.integral(), 1.0, 1e-6);
  // Without rescaling the padded grid holds nearly all of the mass.
  double w = 0.0;
  for (const auto& p : pts) w += p.weight;
  EXPECT_NEAR(elevation_map(pts, grid, h, false).integral() / w, 1.0, 0.01);
}

TEST(Elevation, EqualMassesAreSymmetric) {
  const std::vector<WeightedPoint> pts{{{-1.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}};
  GridSpec grid{-3.0, 3.0, -3.0, 3.0, 40};
  const auto m = elevation_map(pts, grid, 0.4, true);
  for (std::size_t j = 0; j < 40; ++j) {
    for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR(m.at(i, j), m.at(39 - i, j), 1e-12);
  }
}

TEST(Elevation, DensityIgnoresWeightScale) {
  const std::vector<WeightedPoint> a{{{0.0, 0.0}, 1.0}, {{0.5, 0.5}, 3.0}};
  const std::vector<WeightedPoint> b{{{0.0, 0.0}, 7.0}, {{0.5, 0.5}, 21.0}};
  GridSpec grid{-1.0, 1.5, -1.0, 1.5, 24};
  const auto ma = elevation_map(a, grid, 0.2, true);
  const auto mb = elevation_map(b, grid, 0.2, true);
  for (std::size_t i = 0; i < ma.values.size(); ++i) EXPECT_NEAR(ma.values[i], mb.values[i], 1e-12);
}

TEST(Elevation, InputErrors) {
  GridSpec grid{0, 1, 0, 1, 16};
  EXPECT_THROW(elevation_map({}, grid, 0.1), Error);
  EXPECT_THROW(elevation_map({{{0, 0}, -1.0}}, grid, 0.1), Error);
  EXPECT_THROW(elevation_map({{{0, 0}, 1.0}}, grid, 0.0), Error);
  grid.resolution = 8;
  EXPECT_THROW(elevation_map({{{0, 0}, 1.0}}, grid, 0.1), Error);
}

TEST(Bandwidth, ScottRule) {
  EXPECT_EQ(scott_bandwidth({{{0.3, 0.3}, 2.0}}), 0.0);
  const double h = scott_bandwidth({{{-1.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}});
  EXPECT_NEAR(h, std::sqrt(0.5) * std::pow(2.0, -1.0 / 6.0), 1e-15);
}

TEST(Difference, Identities) {
  const std::vector<WeightedPoint> a{{{0.0, 0.0}, 1.0}, {{0.5, 0.1}, 2.0}};
  const std::vector<WeightedPoint> b{{{0.4, -0.2}, 1.0}};
  GridSpec grid{-1.0, 1.5, -1.0, 1.0, 20};
  const auto ma = elevation_map(a, grid, 0.25);
  const auto mb = elevation_map(b, grid, 0.25);
  for (double v : difference_map(ma, ma).values) EXPECT_EQ(v, 0.0);
  const auto ab = difference_map(ma, mb);
  const auto ba = difference_map(mb, ma);
  for (std::size_t i = 0; i < ab.values.size(); ++i) {
    EXPECT_EQ(ab.values[i], -ba.values[i]);
    EXPECT_LE(std::abs(ab.values[i]), ma.values[i] + mb.values[i]);
  }
  GridSpec other = grid;
  other.resolution = 21;
  EXPECT_THROW(difference_map(ma, elevation_map(b, other, 0.25)), Error);
}

TEST(Drift, L2Distance) {
  const auto a = sparse({{1, 0.5}, {3, 0.5}});
  EXPECT_EQ(l2_distance(a, a), 0.0);
  EXPECT_NEAR(l2_distance(sparse({{1, 1.0}}), sparse({{2, 1.0}})), std::sqrt(2.0), 1e-12);
  const auto b = sparse({{2, 0.25}, {3, 0.75}});
  // Dense: (0.5, 0, 0.5) vs (0, 0.25, 0.75).
  EXPECT_NEAR(l2_distance(a, b), std::sqrt(0.25 + 0.0625 + 0.0625), 1e-15);
  EXPECT_EQ(l2_distance(a, b), l2_distance(b, a));
}

TEST(Drift, PooledAndWithin) {
  std::vector<WeightedDistribution> items{{SeqId{1}, 1.0, sparse({{1, 1.0}})},
                                          {SeqId{2}, 3.0, sparse({{2, 1.0}})},
                                          {SeqId{3}, 1.0, sparse({{1, 0.5}, {2, 0.5}})}};
  const auto pooled = pooled_distribution(items);
  ASSERT_EQ(pooled.size(), 2u);
  EXPECT_NEAR(pooled[0].prob, 1.5 / 5.0, 1e-15);
  EXPECT_NEAR(pooled[1].prob, 3.5 / 5.0, 1e-15);
  const double d12 = std::sqrt(2.0);
  const double d13 = std::sqrt(0.5);
  const double mean = (d12 + 2.0 * d13) / 3.0;
  EXPECT_NEAR(*within_spread(items, WithinMode::MeanPairwise), mean, 1e-15);
  const double var = ((d12 - mean) * (d12 - mean) + 2.0 * (d13 - mean) * (d13 - mean)) / 3.0;
  EXPECT_NEAR(*within_spread(items, WithinMode::PairwiseVariance), var, 1e-15);
  items.resize(1);
  EXPECT_FALSE(within_spread(items, WithinMode::MeanPairwise).has_value());
  EXPECT_TRUE(pooled_distribution({}).empty());
}

TEST(Variance, SharesSumToOneAndMatchDefinition) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<VarianceItem> items;
    for (int i = 0; i < 30; ++i) {
      items.push_back({{u(rng), u(rng)}, static_cast<std::uint32_t>(rng() % 4), 0.01 + std::abs(u(rng))});
    }
    const auto ev = explained_variance(items, 5);
    double w = 0.0, mx = 0.0, my = 0.0;
    for (const auto& it : items) {
      w += it.weight;
      mx += it.weight * it.point.x;
      my += it.weight * it.point.y;
    }
    mx /= w;
    my /= w;
    std::vector<double> part(5, 0.0), mass(5, 0.0);
    double total = 0.0;
    for (const auto& it : items) {
      const double v = it.weight * (std::pow(it.point.x - mx, 2) + std::pow(it.point.y - my, 2));
      part[it.cluster] += v;
      mass[it.cluster] += it.weight;
      total += v;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_NEAR(ev.share[k], part[k] / total, 1e-12);
      sum += ev.share[k];
      if (mass[k] > 0.0) {
        EXPECT_NEAR(*ev.relative[k], (part[k] / total) / (mass[k] / w), 1e-12);
      } else {
        EXPECT_FALSE(ev.relative[k].has_value());
      }
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_NEAR(ev.total_variance, total / w, 1e-12);
  }
}

TEST(Variance, HalfAndHalf) {
  const auto ev = explained_variance({{{-1.0, 0.0}, 0, 1.0}, {{1.0, 0.0}, 1, 1.0}}, 2);
  EXPECT_NEAR(ev.share[0], 0.5, 1e-15);
  EXPECT_NEAR(ev.share[1], 0.5, 1e-15);
  EXPECT_NEAR(*ev.relative[0], 1.0, 1e-15);
  EXPECT_THROW(explained_variance({{{0.5, 0.5}, 0, 1.0}, {{0.5, 0.5}, 1, 3.0}}, 2), Error);
  EXPECT_THROW(explained_variance({}, 2), Error);
  EXPECT_THROW(explained_variance({{{0.0, 0.0}, 3, 1.0}}, 2), Error);
}
