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

#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "substinet/conditioned_graph.hpp"
#include "substinet/ids.hpp"
#include "substinet/parallel.hpp"

namespace substinet::detail {

using PairSums = std::unordered_map<std::uint64_t, double>;

inline constexpr std::size_t kSequenceBlock = 2048;

/// Runs fn(i, sums) for i in [0, n) over fixed blocks and merges the block
/// maps in block order, so every key's summation order is independent of
/// the worker count.
template <typename Fn>
PairSums reduce_indexed(std::size_t n, Fn&& fn) {
  const std::size_t blocks = parallel::block_count(n, kSequenceBlock);
  std::vector<PairSums> partial(blocks);
  parallel::for_each_block(n, kSequenceBlock, [&](std::size_t blk, std::size_t b, std::size_t e) {
    PairSums& local = partial[blk];
    for (std::size_t i = b; i < e; ++i) fn(i, local);
  });
  if (partial.empty()) return {};
  PairSums total = std::move(partial.front());
  for (std::size_t blk = 1; blk < blocks; ++blk) {
    for (const auto& [key, value] : partial[blk]) total[key] += value;
    PairSums().swap(partial[blk]);
  }
  return total;
}

template <typename Fn>
PairSums reduce_pairs(std::span<const SeqId> seqs, Fn&& fn) {
  return reduce_indexed(seqs.size(), [&](std::size_t i, PairSums& sums) { fn(seqs[i], sums); });
}

inline std::vector<WeightedEdge> to_edges(const PairSums& sums, double divisor = 1.0) {
  std::vector<WeightedEdge> edges;
  edges.reserve(sums.size());
  for (const auto& [key, value] : sums) {
    edges.push_back({pair_first(key), pair_second(key), value / divisor});
  }
  return edges;
}

}  // namespace substinet::detail
