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

#include <cstddef>
#include <functional>

namespace substinet::parallel {

/// Worker count used by every parallel section. Defaults to the number of
/// hardware threads. Results never depend on this value: work is split into
/// fixed-size blocks and partial results are merged in block order.
unsigned threads();
void set_threads(unsigned count);

/// Number of blocks of size `block` covering [0, n).
constexpr std::size_t block_count(std::size_t n, std::size_t block) {
  return block == 0 ? 0 : (n + block - 1) / block;
}

/// Calls fn(block_index, begin, end) for each fixed-size block of [0, n).
/// Blocks run concurrently; the first exception thrown is rethrown here.
void for_each_block(std::size_t n, std::size_t block,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace substinet::parallel
