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

#include "substinet/multigraph.hpp"

#include <algorithm>
#include <numeric>

#include "substinet/error.hpp"

namespace substinet {

namespace {

constexpr double kPrefixSlack = 1e-12;

void counting_index(std::size_t keys, std::size_t n, const auto& key_of,
                    std::vector<std::uint64_t>& offset, std::vector<std::uint64_t>& items) {
  offset.assign(keys + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++offset[key_of(i) + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  items.resize(n);
  std::vector<std::uint64_t> cursor(offset.begin(), offset.end() - 1);
  for (std::size_t i = 0; i < n; ++i) items[cursor[key_of(i)]++] = i;
}

}  // namespace

void Multigraph::build_indexes() {
  std::uint32_t bound = 0;
  for (TokenId t : occ_tau_) bound = std::max(bound, t.value + 1);
  for (TokenId t : edge_mu_) bound = std::max(bound, t.value + 1);
  token_bound_ = bound;
  counting_index(bound, occ_tau_.size(), [&](std::size_t i) { return occ_tau_[i].value; },
                 tau_offset_, tau_occ_);
  counting_index(bound, edge_mu_.size(), [&](std::size_t i) { return edge_mu_[i].value; },
                 mu_offset_, mu_edge_);
}

OccurrenceRange Multigraph::seq_range(SeqId seq) const {
  auto lo = std::lower_bound(occ_seq_.begin(), occ_seq_.end(), seq);
  auto hi = std::upper_bound(lo, occ_seq_.end(), seq);
  return {static_cast<std::uint64_t>(lo - occ_seq_.begin()),
          static_cast<std::uint64_t>(hi - occ_seq_.begin())};
}

std::span<const std::uint64_t> Multigraph::occurrences_of(TokenId tau) const {
  if (tau.value >= token_bound_) return {};
  const auto b = tau_offset_[tau.value];
  const auto e = tau_offset_[tau.value + 1];
  return {tau_occ_.data() + b, e - b};
}

std::vector<EdgeRef> Multigraph::in_edges(TokenId tau, const ContextSet& context) const {
  std::vector<EdgeRef> out;
  for (std::uint64_t occ : occurrences_of(tau)) {
    if (!context.contains(occ_seq_[occ])) continue;
    for (auto e = edge_offset_[occ]; e < edge_offset_[occ + 1]; ++e) {
      out.push_back({OccurrenceId{occ}, occ_seq_[occ], occ_pos_[occ], tau, edge_mu_[e], edge_weight_[e]});
    }
  }
  return out;
}

std::vector<EdgeRef> Multigraph::out_edges(TokenId mu, const ContextSet& context) const {
  std::vector<EdgeRef> out;
  if (mu.value >= token_bound_) return out;
  for (auto i = mu_offset_[mu.value]; i < mu_offset_[mu.value + 1]; ++i) {
    const std::uint64_t e = mu_edge_[i];
    const auto occ = static_cast<std::uint64_t>(
        std::upper_bound(edge_offset_.begin(), edge_offset_.end(), e) - edge_offset_.begin() - 1);
    if (!context.contains(occ_seq_[occ])) continue;
    out.push_back({OccurrenceId{occ}, occ_seq_[occ], occ_pos_[occ], occ_tau_[occ], mu, edge_weight_[e]});
  }
  return out;
}

Multigraph Multigraph::truncated(double mass) const {
  if (!(mass > 0.0 && mass <= 1.0)) fail("mass threshold must lie in (0, 1]");
  Multigraph g;
  g.occ_seq_ = occ_seq_;
  g.occ_pos_ = occ_pos_;
  g.occ_tau_ = occ_tau_;
  g.occ_self_ = occ_self_;
  g.occ_kept_.resize(occ_kept_.size());
  g.edge_offset_.assign(1, 0);
  g.edge_mu_.reserve(edge_mu_.size());
  g.edge_weight_.reserve(edge_weight_.size());
  for (std::uint64_t o = 0; o < occurrence_count(); ++o) {
    const double kept = occ_kept_[o];
    // Stored weights are shares of the kept mass; the target is a share of
    // the original substitute mass.
    const double target = std::min(1.0, mass / kept);
    const auto b = edge_offset_[o];
    const auto e = edge_offset_[o + 1];
    double prefix = 0.0;
    auto stop = b;
    while (stop < e) {
      prefix += edge_weight_[stop];
      ++stop;
      if (prefix >= target - kPrefixSlack) break;
    }
    for (auto i = b; i < stop; ++i) {
      g.edge_mu_.push_back(edge_mu_[i]);
      g.edge_weight_.push_back(edge_weight_[i] / prefix);
    }
    g.edge_offset_.push_back(g.edge_mu_.size());
    g.occ_kept_[o] = kept * prefix;
  }
  g.build_indexes();
  return g;
}

std::vector<DistributionRecord> Multigraph::to_records(const Vocabulary& vocab) const {
  std::vector<DistributionRecord> out;
  out.reserve(occurrence_count());
  for (std::uint64_t o = 0; o < occurrence_count(); ++o) {
    DistributionRecord r;
    r.seq = occ_seq_[o];
    r.pos = occ_pos_[o];
    r.truth = vocab.surface(occ_tau_[o]);
    r.self_prob = occ_self_[o];
    r.mass_retained = occ_kept_[o];
    const double room = occ_self_[o] < 1.0 ? 1.0 - occ_self_[o] : 1.0;
    for (auto e = edge_offset_[o]; e < edge_offset_[o + 1]; ++e) {
      r.subs.emplace_back(vocab.surface(edge_mu_[e]), edge_weight_[e] * room);
    }
    out.push_back(std::move(r));
  }
  return out;
}

Multigraph::Columns Multigraph::columns() const {
  return {occ_seq_, occ_pos_, occ_tau_, occ_self_, occ_kept_, edge_offset_, edge_mu_, edge_weight_};
}

Multigraph Multigraph::from_columns(Columns cols) {
  const auto n = cols.occ_seq.size();
  if (cols.occ_pos.size() != n || cols.occ_tau.size() != n || cols.occ_self.size() != n ||
      cols.occ_kept.size() != n || cols.edge_offset.size() != n + 1) {
    fail("multigraph columns have inconsistent lengths");
  }
  if (cols.edge_mu.size() != cols.edge_weight.size() || cols.edge_offset.front() != 0 ||
      cols.edge_offset.back() != cols.edge_mu.size()) {
    fail("multigraph edge offsets do not cover the edge table");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cols.edge_offset[i] > cols.edge_offset[i + 1]) fail("multigraph edge offsets decrease");
    if (i > 0 && std::pair(cols.occ_seq[i - 1], cols.occ_pos[i - 1]) >=
                     std::pair(cols.occ_seq[i], cols.occ_pos[i])) {
      fail("multigraph occurrences are not in canonical order");
    }
  }
  Multigraph g;
  g.occ_seq_ = std::move(cols.occ_seq);
  g.occ_pos_ = std::move(cols.occ_pos);
  g.occ_tau_ = std::move(cols.occ_tau);
  g.occ_self_ = std::move(cols.occ_self);
  g.occ_kept_ = std::move(cols.occ_kept);
  g.edge_offset_ = std::move(cols.edge_offset);
  g.edge_mu_ = std::move(cols.edge_mu);
  g.edge_weight_ = std::move(cols.edge_weight);
  g.build_indexes();
  return g;
}

MultigraphBuilder::MultigraphBuilder(const Multigraph& base) {
  auto cols = base.columns();
  seq_ = std::move(cols.occ_seq);
  pos_ = std::move(cols.occ_pos);
  tau_ = std::move(cols.occ_tau);
  self_ = std::move(cols.occ_self);
  kept_ = std::move(cols.occ_kept);
  offset_ = std::move(cols.edge_offset);
  mu_ = std::move(cols.edge_mu);
  weight_ = std::move(cols.edge_weight);
}

std::uint64_t MultigraphBuilder::insert(const CheckedRecord& rec) {
  if (rec.subs.empty()) fail("occurrence has no substitutes");
  const std::uint64_t id = seq_.size();
  seq_.push_back(rec.seq);
  pos_.push_back(rec.pos);
  tau_.push_back(rec.tau);
  self_.push_back(rec.self_prob);
  kept_.push_back(rec.kept_mass);
  for (const auto& e : rec.subs) {
    mu_.push_back(e.token);
    weight_.push_back(e.prob);
  }
  offset_.push_back(mu_.size());
  return id;
}

Multigraph MultigraphBuilder::build() && {
  const auto n = seq_.size();
  std::vector<std::uint64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    if (seq_[a] != seq_[b]) return seq_[a] < seq_[b];
    return pos_[a] < pos_[b];
  });
  for (std::size_t i = 1; i < n; ++i) {
    const auto a = order[i - 1];
    const auto b = order[i];
    if (seq_[a] == seq_[b] && pos_[a] == pos_[b]) {
      fail("duplicate occurrence (seq " + std::to_string(seq_[b].value) + ", pos " +
           std::to_string(pos_[b]) + ")");
    }
  }

  Multigraph::Columns c;
  c.occ_seq.reserve(n);
  c.occ_pos.reserve(n);
  c.occ_tau.reserve(n);
  c.occ_self.reserve(n);
  c.occ_kept.reserve(n);
  c.edge_offset.reserve(n + 1);
  c.edge_offset.push_back(0);
  c.edge_mu.reserve(mu_.size());
  c.edge_weight.reserve(weight_.size());
  for (std::uint64_t o : order) {
    c.occ_seq.push_back(seq_[o]);
    c.occ_pos.push_back(pos_[o]);
    c.occ_tau.push_back(tau_[o]);
    c.occ_self.push_back(self_[o]);
    c.occ_kept.push_back(kept_[o]);
    c.edge_mu.insert(c.edge_mu.end(), mu_.begin() + offset_[o], mu_.begin() + offset_[o + 1]);
    c.edge_weight.insert(c.edge_weight.end(), weight_.begin() + offset_[o],
                         weight_.begin() + offset_[o + 1]);
    c.edge_offset.push_back(c.edge_mu.size());
  }
  *this = MultigraphBuilder();
  return Multigraph::from_columns(std::move(c));
}

}  // namespace substinet
