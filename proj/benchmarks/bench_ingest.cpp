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

#include <sstream>

#include "fixture.hpp"
#include "substinet/store.hpp"

using namespace substinet;

static void BM_LoadCorpus(benchmark::State& state) {
  const auto& t = bench::toy_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::istringstream in(t.corpus);
    benchmark::DoNotOptimize(load_corpus(in, {}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoadCorpus)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

static void BM_IngestRecords(benchmark::State& state) {
  const auto& t = bench::toy_text(static_cast<std::size_t>(state.range(0)));
  std::istringstream cin(t.corpus);
  const Corpus corpus = load_corpus(cin, {});
  std::size_t edges = 0;
  for (auto _ : state) {
    Store store;
    store.corpus = corpus;
    std::istringstream in(t.records);
    edges = ingest_records(store, in).edges;
    benchmark::DoNotOptimize(store.graph.edge_count());
  }
  state.counters["edges"] = static_cast<double>(edges);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges));
}
BENCHMARK(BM_IngestRecords)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

static void BM_StoreRoundTrip(benchmark::State& state) {
  const Store& store = bench::toy_store(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::stringstream buf;
    write_store(buf, store);
    benchmark::DoNotOptimize(read_store(buf));
  }
}
BENCHMARK(BM_StoreRoundTrip)->Arg(8000)->Unit(benchmark::kMillisecond);
