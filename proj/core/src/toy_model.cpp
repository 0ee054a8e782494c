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

#include "substinet/toy_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "substinet/error.hpp"

namespace substinet {

namespace {

using nlohmann::json;

ToyDistribution read_distribution(const json& j, const std::set<std::string>& vocab, const std::string& where) {
  if (!j.is_object()) fail(where + ": distribution must be an object of surface -> probability");
  ToyDistribution d;
  double total = 0.0;
  for (const auto& [surface, p] : j.items()) {
    if (!vocab.contains(surface)) fail(where + ": '" + surface + "' is not in the vocabulary");
    const double v = p.get<double>();
    if (!(v >= 0.0) || !std::isfinite(v)) fail(where + ": probabilities must be non-negative");
    d.emplace_back(surface, v);
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) fail(where + ": probabilities sum to " + std::to_string(total) + ", not 1");
  std::sort(d.begin(), d.end());
  return d;
}

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(unit(rng) * static_cast<double>(n));
}

const std::string& draw(const ToyDistribution& d, std::mt19937_64& rng) {
  const double u = unit(rng);
  double acc = 0.0;
  for (const auto& [surface, p] : d) {
    acc += p;
    if (u < acc) return surface;
  }
  for (auto it = d.rbegin(); it != d.rend(); ++it) {
    if (it->second > 0.0) return it->first;
  }
  fail("cannot draw from an empty distribution");
}

}  // namespace

ToyModelSpec read_toy_spec(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(std::string("toy spec: ") + e.what());
  }
  ToyModelSpec spec;
  try {
    spec.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    if (spec.vocabulary.empty()) fail("toy spec: empty vocabulary");
    const std::set<std::string> vocab(spec.vocabulary.begin(), spec.vocabulary.end());
    if (vocab.size() != spec.vocabulary.size()) fail("toy spec: duplicate vocabulary entries");
    if (j.contains("stopwords")) spec.stopwords = j["stopwords"].get<std::vector<std::string>>();
    if (j.contains("boundary")) spec.boundary = j["boundary"].get<std::string>();
    if (vocab.contains(spec.boundary)) fail("toy spec: the boundary symbol must not be a vocabulary token");
    spec.unigram = read_distribution(j.at("unigram"), vocab, "toy spec unigram");
    if (j.contains("table")) {
      for (const auto& row : j["table"]) {
        const auto left = row.at("left").get<std::string>();
        const auto right = row.at("right").get<std::string>();
        for (const auto& side : {left, right}) {
          if (side != spec.boundary && !vocab.contains(side)) {
            fail("toy spec table: unknown neighbour '" + side + "'");
          }
        }
        const std::string where = "toy spec table (" + left + ", " + right + ")";
        if (!spec.table.emplace(std::pair{left, right}, read_distribution(row.at("dist"), vocab, where)).second) {
          fail(where + ": duplicate row");
        }
      }
    }
    if (j.contains("sentences")) {
      std::int64_t next = 1;
      for (const auto& s : j["sentences"]) {
        SequenceInput seq;
        seq.seq = SeqId{s.value("seq", next)};
        next = seq.seq.value + 1;
        seq.doc = s.value("doc", "toy-" + std::to_string(seq.seq.value));
        seq.tokens = s.at("tokens").get<std::vector<std::string>>();
        for (const auto& t : seq.tokens) {
          if (!vocab.contains(t)) fail("toy spec sentence: '" + t + "' is not in the vocabulary");
        }
        if (s.contains("year")) seq.meta.emplace_back("year", MetaValue{s["year"].get<std::int64_t>()});
        spec.sentences.push_back(std::move(seq));
      }
    }
    if (j.contains("generate")) {
      const json& g = j["generate"];
      spec.generate.count = g.value("count", spec.generate.count);
      spec.generate.min_len = g.value("min_len", spec.generate.min_len);
      spec.generate.max_len = g.value("max_len", spec.generate.max_len);
      spec.generate.seed = g.value("seed", spec.generate.seed);
      if (g.contains("years")) {
        const auto years = g["years"].get<std::vector<std::int64_t>>();
        if (years.size() != 2 || years[0] > years[1]) fail("toy spec: generate.years must be [first, last]");
        spec.generate.first_year = years[0];
        spec.generate.last_year = years[1];
      }
      if (g.contains("classes")) {
        spec.generate.classes = g["classes"].get<std::map<std::string, std::vector<std::string>>>();
        for (const auto& [name, words] : spec.generate.classes) {
          if (vocab.contains(name)) fail("toy spec: class name '" + name + "' collides with a vocabulary token");
          if (words.empty()) fail("toy spec: class '" + name + "' is empty");
          for (const auto& w : words) {
            if (!vocab.contains(w)) fail("toy spec class " + name + ": '" + w + "' is not in the vocabulary");
          }
        }
      }
      if (g.contains("patterns")) {
        spec.generate.patterns = g["patterns"].get<std::vector<std::vector<std::string>>>();
        for (const auto& pattern : spec.generate.patterns) {
          if (pattern.empty()) fail("toy spec: empty pattern");
          for (const auto& slot : pattern) {
            if (!vocab.contains(slot) && !spec.generate.classes.contains(slot)) {
              fail("toy spec pattern: '" + slot + "' is neither a token nor a class");
            }
          }
        }
      }
      if (spec.generate.min_len == 0 || spec.generate.min_len > spec.generate.max_len) {
        fail("toy spec: generate lengths must satisfy 1 <= min_len <= max_len");
      }
    }
  } catch (const json::exception& e) {
    fail(std::string("toy spec: ") + e.what());
  }
  return spec;
}

ToyModelSpec load_toy_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open toy spec " + path);
  return read_toy_spec(in);
}

const ToyDistribution& toy_distribution(const ToyModelSpec& spec, std::span<const std::string> tokens,
                                        std::size_t i) {
  if (i >= tokens.size()) fail("toy position out of range");
  const std::string& left = i == 0 ? spec.boundary : tokens[i - 1];
  const std::string& right = i + 1 == tokens.size() ? spec.boundary : tokens[i + 1];
  auto it = spec.table.find({left, right});
  return it == spec.table.end() ? spec.unigram : it->second;
}

ToyOutput generate_toy(const ToyModelSpec& spec) {
  ToyOutput out;
  if (!spec.sentences.empty()) {
    out.sequences = spec.sentences;
  } else {
    std::mt19937_64 rng(spec.generate.seed);
    const auto& g = spec.generate;
    const auto years = static_cast<std::size_t>(g.last_year - g.first_year + 1);
    for (std::size_t n = 0; n < g.count; ++n) {
      SequenceInput seq;
      seq.seq = SeqId{static_cast<std::int64_t>(n + 1)};
      seq.doc = "toy-" + std::to_string(n / 5 + 1);
      if (g.patterns.empty()) {
        const std::size_t len = g.min_len + below(rng, g.max_len - g.min_len + 1);
        for (std::size_t k = 0; k < len; ++k) seq.tokens.push_back(draw(spec.unigram, rng));
      } else {
        for (const auto& slot : g.patterns[below(rng, g.patterns.size())]) {
          auto cls = g.classes.find(slot);
          seq.tokens.push_back(cls == g.classes.end() ? slot : cls->second[below(rng, cls->second.size())]);
        }
      }
      seq.meta.emplace_back("year", MetaValue{g.first_year + static_cast<std::int64_t>(below(rng, years))});
      out.sequences.push_back(std::move(seq));
    }
  }

  const std::set<std::string> stop(spec.stopwords.begin(), spec.stopwords.end());
  for (const auto& seq : out.sequences) {
    for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
      const std::string& truth = seq.tokens[i];
      if (stop.contains(truth)) continue;
      DistributionRecord rec;
      rec.seq = seq.seq;
      rec.pos = static_cast<std::uint32_t>(i);
      rec.truth = truth;
      for (const auto& [surface, p] : toy_distribution(spec, seq.tokens, i)) {
        if (surface == truth) {
          rec.self_prob = p;
        } else if (p > 0.0) {
          rec.subs.emplace_back(surface, p);
        }
      }
      if (rec.subs.empty()) {
        ++out.skipped;
        continue;
      }
      std::stable_sort(rec.subs.begin(), rec.subs.end(),
                       [](const auto& a, const auto& b) { return a.second > b.second; });
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace substinet
