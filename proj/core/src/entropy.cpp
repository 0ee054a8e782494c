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

#include "substinet/entropy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "pair_reduce.hpp"
#include "substinet/error.hpp"

namespace substinet {

using detail::PairSums;

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

double log_scale(const EntropyOptions& options) {
  if (options.log_base == 0.0) return 1.0;
  if (!(options.log_base > 0.0) || options.log_base == 1.0) {
    fail("entropy log base must be positive and not 1");
  }
  return std::log(options.log_base);
}

}  // namespace

double occurrence_entropy(const Multigraph& g, std::uint64_t occ, const EntropyOptions& options) {
  const double scale = options.keep_self ? 1.0 - g.self_prob(occ) : 1.0;
  double h = options.keep_self ? -plogp(g.self_prob(occ)) : 0.0;
  for (auto e = g.edges_begin(occ); e < g.edges_end(occ); ++e) h -= plogp(scale * g.weight(e));
  // Rounding can leave a tiny negative value for a degenerate distribution.
  return std::max(0.0, h) / log_scale(options);
}

ConditionedGraph entropy_network(const Multigraph& g, const ContextSet& context,
                                 const EntropyOptions& options) {
  GraphInfo info{Provenance::Entropy, options.context_descriptor, options.normalize};
  if (context.empty()) return ConditionedGraph({}, info);
  log_scale(options);
  PairSums sums = detail::reduce_pairs(context.ids(), [&](SeqId seq, PairSums& out) {
    const OccurrenceRange r = g.seq_range(seq);
    for (auto o = r.begin; o < r.end; ++o) {
      const double h = occurrence_entropy(g, o, options);
      for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) out[pair_key(g.mu(e), g.tau(o))] += h;
    }
  });
  const double divisor = options.normalize ? static_cast<double>(context.size()) : 1.0;
  return ConditionedGraph(detail::to_edges(sums, divisor), info);
}

CompoundKind parse_compound_kind(const std::string& name) {
  if (name == "certainty") return CompoundKind::Certainty;
  if (name == "unconventionality") return CompoundKind::Unconventionality;
  fail("unknown compound measure '" + name + "' (certainty|unconventionality)");
}

CompoundResult compound(const Multigraph& g, const ContextSet& context, CompoundKind kind,
                        const EntropyOptions& options) {
  const Provenance p = kind == CompoundKind::Certainty ? Provenance::Certainty : Provenance::Unconventionality;
  GraphInfo info{p, options.context_descriptor, options.normalize};
  CompoundResult result{ConditionedGraph({}, info), 0};
  if (context.empty()) return result;
  log_scale(options);
  std::atomic<std::uint64_t> dropped{0};
  PairSums sums = detail::reduce_pairs(context.ids(), [&](SeqId seq, PairSums& out) {
    const OccurrenceRange r = g.seq_range(seq);
    std::uint64_t skipped = 0;
    for (auto o = r.begin; o < r.end; ++o) {
      const double h = occurrence_entropy(g, o, options);
      for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) {
        const double w = g.weight(e);
        double value = 0.0;
        if (kind == CompoundKind::Certainty) {
          if (h == 0.0) {
            ++skipped;
            continue;
          }
          value = w / h;
        } else {
          if (w >= 1.0) {
            ++skipped;
            continue;
          }
          value = -h / std::log(w);
        }
        out[pair_key(g.mu(e), g.tau(o))] += value;
      }
    }
    dropped += skipped;
  });
  const double divisor = options.normalize ? static_cast<double>(context.size()) : 1.0;
  result.graph = ConditionedGraph(detail::to_edges(sums, divisor), info);
  result.dropped = dropped.load();
  return result;
}

}  // namespace substinet
