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

#include "substinet/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "substinet/error.hpp"

namespace substinet {

using nlohmann::json;

namespace {

constexpr double kMassSlack = 1e-9;
// Absorbs summation error when a prefix sum lands exactly on the threshold.
constexpr double kPrefixSlack = 1e-12;

}  // namespace

void sort_distribution(SparseDistribution& dist) {
  std::sort(dist.begin(), dist.end(), [](const SparseEntry& a, const SparseEntry& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    return a.token < b.token;
  });
}

SparseDistribution truncate_and_renormalize(SparseDistribution dist, double mass_threshold,
                                            double* kept_fraction) {
  if (!(mass_threshold > 0.0 && mass_threshold <= 1.0)) {
    fail("mass threshold must lie in (0, 1]");
  }
  if (dist.empty()) fail("cannot truncate an empty distribution");
  double total = 0.0;
  for (const auto& e : dist) {
    if (!(e.prob >= 0.0) || !std::isfinite(e.prob)) fail("distribution has a negative or non-finite entry");
    total += e.prob;
  }
  if (!(total > 0.0)) fail("distribution has zero mass");
  sort_distribution(dist);

  const double target = mass_threshold * total;
  double prefix = 0.0;
  std::size_t keep = 0;
  while (keep < dist.size()) {
    prefix += dist[keep].prob;
    ++keep;
    if (prefix >= target - kPrefixSlack * total) break;
  }
  dist.resize(keep);
  while (!dist.empty() && dist.back().prob == 0.0) dist.pop_back();

  double kept = 0.0;
  for (const auto& e : dist) kept += e.prob;
  for (auto& e : dist) e.prob /= kept;
  if (kept_fraction) *kept_fraction = kept / total;
  return dist;
}

double mass_for_preset(MassPreset preset) {
  switch (preset) {
    case MassPreset::Analysis: return 0.95;
    case MassPreset::Robust: return 0.99;
    case MassPreset::Storage: return 0.90;
  }
  return 0.95;
}

MassPreset parse_mass_preset(std::string_view name) {
  if (name == "analysis") return MassPreset::Analysis;
  if (name == "robust") return MassPreset::Robust;
  if (name == "storage") return MassPreset::Storage;
  fail("unknown mass preset '" + std::string(name) + "' (analysis|robust|storage)");
}

DistributionRecord parse_record_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed record line: ") + e.what());
  }
  if (!j.is_object()) fail("record line is not an object");
  DistributionRecord r;
  try {
    r.seq = SeqId{j.at("seq").get<std::int64_t>()};
    const auto pos = j.at("pos").get<std::int64_t>();
    if (pos < 0 || pos > static_cast<std::int64_t>(UINT32_MAX)) fail("record position out of range");
    r.pos = static_cast<std::uint32_t>(pos);
    r.truth = j.at("token").get<std::string>();
    r.self_prob = j.value("self_prob", 0.0);
    r.mass_retained = j.value("mass_retained", 1.0);
    const auto& subs = j.at("subs");
    if (!subs.is_array()) fail("record 'subs' must be an array");
    r.subs.reserve(subs.size());
    for (const auto& pair : subs) {
      if (!pair.is_array() || pair.size() != 2) fail("substitute entries must be [surface, prob]");
      r.subs.emplace_back(pair[0].get<std::string>(), pair[1].get<double>());
    }
  } catch (const json::exception& e) {
    fail(std::string("malformed record: ") + e.what());
  }
  return r;
}

std::string record_to_json(const DistributionRecord& rec) {
  json subs = json::array();
  for (const auto& [surface, p] : rec.subs) subs.push_back(json::array({surface, p}));
  json j;
  j["seq"] = rec.seq.value;
  j["pos"] = rec.pos;
  j["token"] = rec.truth;
  j["self_prob"] = rec.self_prob;
  j["subs"] = std::move(subs);
  j["mass_retained"] = rec.mass_retained;
  return j.dump();
}

CheckedRecord validate_record(const DistributionRecord& rec, Corpus& corpus,
                              const IngestOptions& options, IngestStats& stats) {
  const std::string where =
      "record (seq " + std::to_string(rec.seq.value) + ", pos " + std::to_string(rec.pos) + ")";
  const SequenceRecord* seq = corpus.find(rec.seq);
  if (!seq) fail(where + ": unknown seq id " + std::to_string(rec.seq.value));
  if (rec.pos >= seq->tokens.size()) fail(where + ": position beyond sequence length");
  Vocabulary& vocab = corpus.mutable_vocabulary();
  const TokenId at_pos = seq->tokens[rec.pos];
  if (vocab.surface(at_pos) != rec.truth) {
    fail(where + ": truth mismatch, record has '" + rec.truth + "' but corpus has '" +
         vocab.surface(at_pos) + "'");
  }
  if (vocab.is_stopword(at_pos)) fail(where + ": focal token '" + rec.truth + "' is a stop word");
  if (!(rec.self_prob >= 0.0 && rec.self_prob <= 1.0)) fail(where + ": self_prob outside [0, 1]");
  if (!(rec.mass_retained > 0.0 && rec.mass_retained <= 1.0 + kMassSlack)) {
    fail(where + ": mass_retained outside (0, 1]");
  }

  std::unordered_set<std::string_view> seen;
  std::vector<std::pair<std::string_view, double>> kept;
  kept.reserve(rec.subs.size());
  double mass = rec.self_prob;
  bool stripped = false;
  for (const auto& [surface, p] : rec.subs) {
    if (!(p > 0.0 && p <= 1.0)) fail(where + ": substitute probability outside (0, 1] for '" + surface + "'");
    if (!seen.insert(surface).second) fail(where + ": duplicate substitute '" + surface + "'");
    if (surface == rec.truth) {
      stripped = true;
      continue;
    }
    mass += p;
    kept.emplace_back(surface, p);
  }
  if (mass > 1.0 + kMassSlack) fail(where + ": probabilities sum above one");
  if (kept.empty()) fail(where + ": no substitutes besides the truth token");
  if (stripped) ++stats.truth_stripped;

  CheckedRecord out;
  out.seq = rec.seq;
  out.pos = rec.pos;
  out.tau = at_pos;
  out.self_prob = rec.self_prob;

  SparseDistribution dist;
  dist.reserve(kept.size() + 1);
  for (const auto& [surface, p] : kept) dist.push_back({vocab.intern(surface), p});

  double sub_total = 0.0;
  for (const auto& e : dist) sub_total += e.prob;
  if (options.cutoff_order == CutoffOrder::BeforeSelfRemoval && rec.self_prob > 0.0) {
    dist.push_back({at_pos, rec.self_prob});
    double share = 1.0;
    dist = truncate_and_renormalize(std::move(dist), options.mass_threshold, &share);
    std::erase_if(dist, [&](const SparseEntry& e) { return e.token == at_pos; });
    if (dist.empty()) fail(where + ": truncation left only the truth token");
    const double scale = share * (sub_total + rec.self_prob);
    double raw_kept = 0.0;
    for (const auto& e : dist) raw_kept += e.prob * scale;
    out.kept_mass = std::min(1.0, raw_kept / sub_total);
    dist = truncate_and_renormalize(std::move(dist), 1.0);
  } else {
    dist = truncate_and_renormalize(std::move(dist), options.mass_threshold, &out.kept_mass);
  }

  if (options.min_edge_weight > 0.0) {
    const double floor = options.min_edge_weight;
    // The strongest substitute always survives so the occurrence keeps its mass.
    SparseDistribution filtered;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      if (i == 0 || dist[i].prob >= floor) filtered.push_back(dist[i]);
    }
    if (filtered.size() != dist.size()) {
      double share = 1.0;
      dist = truncate_and_renormalize(std::move(filtered), 1.0, &share);
      out.kept_mass *= share;
    }
  }

  out.subs = std::move(dist);
  ++stats.accepted;
  stats.edges += out.subs.size();
  return out;
}

}  // namespace substinet
