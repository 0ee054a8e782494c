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
#include <map>
#include <string>

#include "substinet/store.hpp"

namespace acceptance {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Largest error seen per named check against that check's tolerance.
class Tracker {
 public:
  void check(const std::string& name, double error, double tolerance);
  void require(const std::string& name, bool ok) { check(name, ok ? 0.0 : 1.0, 0.0); }
  bool pass() const;
  std::size_t count() const { return count_; }
  /// Worst check, or every failing one.
  std::string summary() const;
  Outcome outcome(const std::string& prefix) const;

 private:
  struct Entry {
    double worst = 0.0;
    double tolerance = 0.0;
    std::size_t n = 0;
    bool failed = false;
  };
  std::map<std::string, Entry> entries_;
  std::size_t count_ = 0;
};

std::string num(double v);

/// Toy-model corpus and records ingested at `mass`; `count` overrides the
/// number of generated sentences when nonzero.
substinet::Store toy_store(double mass = 0.95, std::size_t count = 0);
std::string toy_spec_path();

Outcome probability_conservation();
Outcome aggregation_identities();
Outcome oracle_equivalence();
Outcome context_ordering();
Outcome centrality_checks();
Outcome clustering_checks();
Outcome landscape_checks();
Outcome determinism_and_scale(std::size_t scale_sequences);

}  // namespace acceptance
