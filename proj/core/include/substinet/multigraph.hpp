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
#include <utility>
#include <vector>

#include "substinet/context_spec.hpp"
#include "substinet/ids.hpp"
#include "substinet/ingest.hpp"

namespace substinet {

/// One parallel edge g_mu(s, tau): mu replaces tau at (seq, pos).
struct EdgeRef {
  OccurrenceId occurrence;
  SeqId seq;
  std::uint32_t pos;
  TokenId tau;
  TokenId mu;
  double weight;
};

struct OccurrenceRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  bool empty() const { return begin == end; }
};

/// Occurrence-indexed substitution multigraph stored as columns.
/// Occurrences are ranked in (seq, pos) order; the edges of an occurrence
/// are contiguous and ordered by descending weight.
class Multigraph {
 public:
  Multigraph() = default;

  std::uint64_t occurrence_count() const { return occ_seq_.size(); }
  std::uint64_t edge_count() const { return edge_mu_.size(); }

  SeqId seq(std::uint64_t occ) const { return occ_seq_[occ]; }
  std::uint32_t pos(std::uint64_t occ) const { return occ_pos_[occ]; }
  TokenId tau(std::uint64_t occ) const { return occ_tau_[occ]; }
  double self_prob(std::uint64_t occ) const { return occ_self_[occ]; }
  double kept_mass(std::uint64_t occ) const { return occ_kept_[occ]; }

  /// Edge index range of one occurrence.
  std::uint64_t edges_begin(std::uint64_t occ) const { return edge_offset_[occ]; }
  std::uint64_t edges_end(std::uint64_t occ) const { return edge_offset_[occ + 1]; }
  TokenId mu(std::uint64_t edge) const { return edge_mu_[edge]; }
  double weight(std::uint64_t edge) const { return edge_weight_[edge]; }

  /// Occurrences belonging to one sequence (empty when it has none).
  OccurrenceRange seq_range(SeqId seq) const;
  /// Occurrence ids whose focal token is `tau`, ascending.
  std::span<const std::uint64_t> occurrences_of(TokenId tau) const;

  /// Parallel edges into `tau` from sequences in `context`.
  std::vector<EdgeRef> in_edges(TokenId tau, const ContextSet& context) const;
  /// Parallel edges out of `mu` from sequences in `context`.
  std::vector<EdgeRef> out_edges(TokenId mu, const ContextSet& context) const;

  /// Largest token id referenced plus one.
  std::uint32_t token_bound() const { return token_bound_; }

  /// Re-truncates every occurrence to `mass` of its original substitute
  /// mass and renormalizes. `mass` may not exceed the mass the graph was
  /// ingested at.
  Multigraph truncated(double mass) const;

  /// Reconstructs the accepted records (truth excluded). Substitute weights
  /// are scaled into 1 - self_prob so the records ingest again.
  std::vector<DistributionRecord> to_records(const Vocabulary& vocab) const;

  /// Raw column access for persistence.
  struct Columns {
    std::vector<SeqId> occ_seq;
    std::vector<std::uint32_t> occ_pos;
    std::vector<TokenId> occ_tau;
    std::vector<double> occ_self;
    std::vector<double> occ_kept;
    std::vector<std::uint64_t> edge_offset;
    std::vector<TokenId> edge_mu;
    std::vector<double> edge_weight;
  };
  Columns columns() const;
  /// Rebuilds indexes from columns; validates ordering and offsets.
  static Multigraph from_columns(Columns cols);

 private:
  void build_indexes();

  std::vector<SeqId> occ_seq_;
  std::vector<std::uint32_t> occ_pos_;
  std::vector<TokenId> occ_tau_;
  std::vector<double> occ_self_;
  std::vector<double> occ_kept_;
  std::vector<std::uint64_t> edge_offset_{0};
  std::vector<TokenId> edge_mu_;
  std::vector<double> edge_weight_;

  std::uint32_t token_bound_ = 0;
  std::vector<std::uint64_t> tau_offset_;
  std::vector<std::uint64_t> tau_occ_;
  std::vector<std::uint64_t> mu_offset_;
  std::vector<std::uint64_t> mu_edge_;
};

/// Single-writer builder. Insertion order does not affect the built graph.
class MultigraphBuilder {
 public:
  MultigraphBuilder() = default;
  /// Starts from an existing graph so new records extend it.
  explicit MultigraphBuilder(const Multigraph& base);

  /// Adds the edges of one occurrence and returns its provisional id (the
  /// insertion index). Canonical ids are assigned by build().
  std::uint64_t insert(const CheckedRecord& rec);
  std::uint64_t size() const { return seq_.size(); }

  /// Throws on a duplicate (seq, pos).
  Multigraph build() &&;

 private:
  std::vector<SeqId> seq_;
  std::vector<std::uint32_t> pos_;
  std::vector<TokenId> tau_;
  std::vector<double> self_;
  std::vector<double> kept_;
  std::vector<std::uint64_t> offset_{0};
  std::vector<TokenId> mu_;
  std::vector<double> weight_;
};

}  // namespace substinet
