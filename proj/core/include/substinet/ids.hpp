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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>

namespace substinet {

/// Value wrapper that keeps different integer identities from mixing.
template <typename Tag, typename Rep>
struct StrongId {
  using rep_type = Rep;
  Rep value{};

  constexpr StrongId() = default;
  constexpr explicit StrongId(Rep v) : value(v) {}

  constexpr auto operator<=>(const StrongId&) const = default;
};

struct TokenTag {};
struct SeqTag {};
struct OccurrenceTag {};

/// Dense vocabulary index, contiguous from 0.
using TokenId = StrongId<TokenTag, std::uint32_t>;
/// Sequence identifier as supplied by the corpus (not necessarily dense).
using SeqId = StrongId<SeqTag, std::int64_t>;
/// Canonical occurrence rank in (seq, pos) order inside a built multigraph.
using OccurrenceId = StrongId<OccurrenceTag, std::uint64_t>;

inline constexpr TokenId kInvalidToken{std::numeric_limits<std::uint32_t>::max()};

/// Packs an ordered token pair into one hashable key.
constexpr std::uint64_t pair_key(TokenId a, TokenId b) {
  return (static_cast<std::uint64_t>(a.value) << 32) | b.value;
}
constexpr TokenId pair_first(std::uint64_t key) {
  return TokenId{static_cast<std::uint32_t>(key >> 32)};
}
constexpr TokenId pair_second(std::uint64_t key) {
  return TokenId{static_cast<std::uint32_t>(key & 0xffffffffu)};
}

}  // namespace substinet

template <typename Tag, typename Rep>
struct std::hash<substinet::StrongId<Tag, Rep>> {
  std::size_t operator()(const substinet::StrongId<Tag, Rep>& id) const noexcept {
    return std::hash<Rep>{}(id.value);
  }
};
