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
#include <filesystem>
#include <iosfwd>

#include "substinet/corpus.hpp"
#include "substinet/ingest.hpp"
#include "substinet/multigraph.hpp"

namespace substinet {

struct StoreSettings {
  double mass_threshold = 0.95;
  double min_edge_weight = 0.0;
  CutoffOrder cutoff_order = CutoffOrder::AfterSelfRemoval;
  /// Entropy measures fold the truth probability back into each occurrence.
  bool keep_self = false;

  IngestOptions ingest_options() const { return {mass_threshold, min_edge_weight, cutoff_order}; }
};

/// Corpus plus multigraph plus the settings they were ingested with.
struct Store {
  Corpus corpus;
  Multigraph graph;
  StoreSettings settings;
};

/// Validates and inserts every record line of `records` into the store's
/// multigraph. Parsing runs in parallel; validation and interning run in
/// line order so token ids do not depend on the worker count.
IngestStats ingest_records(Store& store, std::istream& records);

/// Graph at a coarser mass cutoff than the store was ingested at.
Multigraph graph_at_mass(const Store& store, double mass);

/// Binary file format, see docs/store_format.md.
void write_store(std::ostream& out, const Store& store);
Store read_store(std::istream& in);

/// Atomic save and load by path.
void save_store(const std::filesystem::path& path, const Store& store);
Store load_store(const std::filesystem::path& path);

}  // namespace substinet
