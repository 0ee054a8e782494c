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
#include <vector>

namespace substinet::cli {

/// Every flag of every subcommand. A config file provides defaults; flags
/// given on the command line override them.
struct RunConfig {
  // Paths.
  std::string store;
  std::string corpus;
  std::string records;
  std::string stopwords;
  std::string spec;
  std::string graph;
  std::string clusters;
  std::string contexts;
  std::string out;
  std::string out_dir;

  // Ingestion.
  double mass = 0.95;
  std::string preset;
  double min_edge_weight = 0.0;
  std::string cutoff_order = "after";
  bool keep_self = false;

  // Graph construction.
  std::string kind = "aggregate";
  std::string context = "*";
  double build_mass = 0.0;
  bool normalize = false;
  bool sequence_counting = false;
  std::vector<std::string> lambda;
  std::string lambda_mode = "occurrence";
  bool lambda_include_focal = false;
  double sparsify_mass = 0.0;
  std::uint64_t sparsify_k = 0;
  double log_base = 0.0;
  std::string format = "csv";

  // Centrality.
  std::string centrality = "pagerank";
  double damping = 0.85;
  double tolerance = 1e-12;
  std::uint64_t max_iterations = 10000;
  double delta = 0.0;
  double delta_fraction = 0.5;
  bool power = false;
  std::string focal;

  // Clustering.
  std::uint64_t levels = 5;
  double resolution = 1.0;
  std::string symmetrize = "bidirectional";
  std::uint64_t label_size = 3;
  std::uint64_t level = 0;

  // Profiles and series.
  std::string by = "year";
  bool weighted = false;
  bool shares = false;
  std::uint64_t window = 0;
  std::vector<std::string> ratio;

  // Context measures and landscapes.
  std::string tau;
  std::string variant = "joint-approx";
  std::string network = "token";
  double cutoff = 0.1;
  std::uint64_t top_n = 1000;
  std::uint64_t max_degree = 100;
  std::uint64_t context_levels = 5;
  std::vector<std::string> split;
  bool diff = false;
  std::uint64_t grid = 256;
  double bandwidth = 0.0;
  std::string baseline;
  std::string mode = "between";
  bool relative = false;

  std::uint64_t seed = 0;
  std::uint64_t threads = 0;

  bool operator==(const RunConfig&) const = default;
};

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace substinet::cli
