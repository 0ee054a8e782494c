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
#include "substinet/centrality.hpp"
#include "substinet/clustering.hpp"
#include "substinet/context.hpp"
#include "substinet/entropy.hpp"
#include "substinet/substitution.hpp"

using namespace substinet;

namespace {

constexpr std::size_t kSentences = 8000;

const ConditionedGraph& toy_graph() {
  static const ConditionedGraph g = [] {
    const Store& s = bench::toy_store(kSentences);
    return aggregate_substitution(s.graph, ContextSet::all(s.corpus));
  }();
  return g;
}

}  // namespace

static void BM_Aggregate(benchmark::State& state) {
  const Store& s = bench::toy_store(static_cast<std::size_t>(state.range(0)));
  const ContextSet all = ContextSet::all(s.corpus);
  for (auto _ : state) benchmark::DoNotOptimize(aggregate_substitution(s.graph, all));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.graph.edge_count()));
}
BENCHMARK(BM_Aggregate)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

static void BM_Compositional(benchmark::State& state) {
  const Store& s = bench::toy_store(kSentences);
  const ContextSet all = ContextSet::all(s.corpus);
  for (auto _ : state) benchmark::DoNotOptimize(compositional_substitution(s.graph, all));
}
BENCHMARK(BM_Compositional)->Unit(benchmark::kMillisecond);

static void BM_LambdaCondition(benchmark::State& state) {
  const Store& s = bench::toy_store(kSentences);
  const ContextSet all = ContextSet::all(s.corpus);
  LambdaSpec spec;
  spec.tokens = {s.corpus.vocabulary().require("leader")};
  spec.mode = static_cast<LambdaMode>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_condition(s.graph, s.corpus, spec, all));
}
BENCHMARK(BM_LambdaCondition)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_TokenContext(benchmark::State& state) {
  const Store& s = bench::toy_store(kSentences);
  const ContextSet all = ContextSet::all(s.corpus);
  const TokenId mu = s.corpus.vocabulary().require("leader");
  for (auto _ : state) benchmark::DoNotOptimize(token_context(s.graph, mu, all));
}
BENCHMARK(BM_TokenContext)->Unit(benchmark::kMillisecond);

static void BM_EntropyNetwork(benchmark::State& state) {
  const Store& s = bench::toy_store(kSentences);
  const ContextSet all = ContextSet::all(s.corpus);
  for (auto _ : state) benchmark::DoNotOptimize(entropy_network(s.graph, all));
}
BENCHMARK(BM_EntropyNetwork)->Unit(benchmark::kMillisecond);

static void BM_PageRank(benchmark::State& state) {
  const ConditionedGraph& g = toy_graph();
  for (auto _ : state) benchmark::DoNotOptimize(pagerank(g));
}
BENCHMARK(BM_PageRank);

static void BM_Katz(benchmark::State& state) {
  const ConditionedGraph& g = toy_graph();
  const double delta = 0.5 / spectral_radius(g);
  for (auto _ : state) benchmark::DoNotOptimize(katz_bonacich(g, delta));
}
BENCHMARK(BM_Katz);

static void BM_FlowBetweenness(benchmark::State& state) {
  const ConditionedGraph& g = toy_graph();
  for (auto _ : state) benchmark::DoNotOptimize(flow_betweenness(g));
}
BENCHMARK(BM_FlowBetweenness);

static void BM_HierarchicalClusters(benchmark::State& state) {
  const ConditionedGraph& g = toy_graph();
  ClusterOptions opt;
  opt.levels = 3;
  for (auto _ : state) benchmark::DoNotOptimize(hierarchical_clusters(g, opt));
}
BENCHMARK(BM_HierarchicalClusters);
