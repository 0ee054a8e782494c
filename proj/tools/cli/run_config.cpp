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

#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "substinet/error.hpp"

namespace substinet::cli {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    RunConfig, store, corpus, records, stopwords, spec, graph, clusters, contexts, out, out_dir, mass,
    preset, min_edge_weight, cutoff_order, keep_self, kind, context, build_mass, normalize,
    sequence_counting, lambda, lambda_mode, lambda_include_focal, sparsify_mass, sparsify_k, log_base,
    format, centrality, damping, tolerance, max_iterations, delta, delta_fraction, power, focal, levels,
    resolution, symmetrize, label_size, level, by, weighted, shares, window, ratio, tau, variant, network,
    cutoff, top_n, max_degree, context_levels, split, diff, grid, bandwidth, baseline, mode, relative,
    seed, threads)

std::string config_to_json(const RunConfig& config) {
  // Default float formatting in nlohmann is round-trip exact.
  return nlohmann::ordered_json(nlohmann::json(config)).dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) fail("config must be a JSON object");
    const nlohmann::json known = RunConfig{};
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) fail("config: unknown key '" + key + "'");
    }
    return j.get<RunConfig>();
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return config_from_json(text.str());
}

}  // namespace substinet::cli
