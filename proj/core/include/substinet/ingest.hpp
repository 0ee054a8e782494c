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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "substinet/corpus.hpp"
#include "substinet/ids.hpp"

namespace substinet {

struct SparseEntry {
  TokenId token;
  double prob;
  bool operator==(const SparseEntry&) const = default;
};

/// Sparse distribution ordered by descending probability, ties by ascending
/// token id.
using SparseDistribution = std::vector<SparseEntry>;

void sort_distribution(SparseDistribution& dist);

/// Keeps the smallest descending-probability prefix whose mass reaches
/// `mass_threshold` of the distribution's total mass, then rescales it to
/// sum to one. Throws on empty input, non-positive mass or a threshold
/// outside (0, 1].
/// When `kept_fraction` is given it receives the kept share of the input mass.
SparseDistribution truncate_and_renormalize(SparseDistribution dist, double mass_threshold,
                                            double* kept_fraction = nullptr);

/// Named cutoffs: analysis default, robustness check, and the storage run.
enum class MassPreset { Analysis, Robust, Storage };
double mass_for_preset(MassPreset preset);
MassPreset parse_mass_preset(std::string_view name);

/// One masked-position prediction exactly as written by the adapter:
/// {"seq", "pos", "token", "self_prob", "subs": [[surface, prob], ...], "mass_retained"}.
struct DistributionRecord {
  SeqId seq;
  std::uint32_t pos = 0;
  std::string truth;
  double self_prob = 0.0;
  std::vector<std::pair<std::string, double>> subs;
  double mass_retained = 1.0;
};

DistributionRecord parse_record_line(std::string_view line);
std::string record_to_json(const DistributionRecord& rec);

enum class CutoffOrder {
  AfterSelfRemoval,   // drop the truth mass, renormalize, then truncate
  BeforeSelfRemoval,  // truncate the full distribution, then drop the truth
};

struct IngestOptions {
  double mass_threshold = 0.95;
  double min_edge_weight = 0.0;
  CutoffOrder cutoff_order = CutoffOrder::AfterSelfRemoval;
};

struct IngestStats {
  std::uint64_t accepted = 0;
  std::uint64_t truth_stripped = 0;
  std::uint64_t edges = 0;
};

/// Validated record with interned tokens and a renormalized substitute
/// distribution (sums to one, truth excluded).
struct CheckedRecord {
  SeqId seq;
  std::uint32_t pos = 0;
  TokenId tau;
  double self_prob = 0.0;
  /// Share of the substitute mass (truth excluded) that survived truncation.
  double kept_mass = 1.0;
  SparseDistribution subs;
};

/// Checks a record against the corpus, interns substitute surfaces and
/// applies truncation. Throws on unknown sequences, position/truth
/// mismatches, stop-word focal tokens and malformed probabilities.
CheckedRecord validate_record(const DistributionRecord& rec, Corpus& corpus,
                              const IngestOptions& options, IngestStats& stats);

}  // namespace substinet
