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

#include <benchmark/benchmark.h>

#include "fixture.hpp"
#include "substinet/clustering.hpp"
#include "substinet/landscape.hpp"
#include "substinet/substitution.hpp"

using namespace substinet;

namespace {

struct MapInput {
  std::vector<std::vector<TokenId>> clusters;
  Projection projection;
  TokenId focal;
};

const MapInput& map_input() {
  static const MapInput in = [] {
    const Store& s = bench::toy_store(8000);
    const auto g = aggregate_substitution(s.graph, ContextSet::all(s.corpus));
    MapInput m;
    m.focal = s.corpus.vocabulary().require("leader");
    ClusterOptions opt;
    opt.levels = 1;
    m.clusters = hierarchical_clusters(g, opt).partition(0);
    m.projection = project_clusters(g, m.clusters, m.focal);
    return m;
  }();
  return in;
}

}  // namespace

static void BM_PositionSentences(benchmark::State& state) {
  const Store& s = bench::toy_store(8000);
  const ContextSet all = ContextSet::all(s.corpus);
  const MapInput& m = map_input();
  for (auto _ : state) {
    benchmark::DoNotOptimize(position_sentences(s.graph, s.corpus, all, m.focal, m.clusters, m.projection.points));
  }
}
BENCHMARK(BM_PositionSentences)->Unit(benchmark::kMillisecond);

static void BM_ElevationMap(benchmark::State& state) {
  const Store& s = bench::toy_store(8000);
  const MapInput& m = map_input();
  const auto placed = position_sentences(s.graph, s.corpus, ContextSet::all(s.corpus), m.focal, m.clusters,
                                         m.projection.points);
  std::vector<WeightedPoint> pts;
  for (const auto& p : placed.sentences) pts.push_back({p.point, p.weight});
  const double bw = scott_bandwidth(pts);
  const GridSpec grid = default_grid(m.projection.points, pts, bw, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(elevation_map(pts, grid, bw));
  state.counters["points"] = static_cast<double>(pts.size());
}
BENCHMARK(BM_ElevationMap)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
