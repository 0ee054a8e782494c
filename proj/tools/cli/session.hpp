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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "run_config.hpp"
#include "substinet/clustering.hpp"
#include "substinet/conditioned_graph.hpp"
#include "substinet/context_spec.hpp"
#include "substinet/store.hpp"

namespace substinet::cli {

/// Files written by the current command, removed again if it fails.
class Outputs {
 public:
  /// Writes atomically to `path`, or to `fallback` when the path is empty.
  void write(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& writer);
  void remove_all() noexcept;

 private:
  std::vector<std::filesystem::path> written_;
};

struct NamedContext {
  std::string label;
  ContextSpec spec;
};

/// State shared by the subcommands of one invocation.
class Session {
 public:
  Session(RunConfig config, std::ostream& out, std::ostream& err);

  const RunConfig& config() const { return config_; }
  std::ostream& out() { return out_; }
  void warn(const std::string& message);
  Outputs& outputs() { return outputs_; }

  bool has_store() const;
  Store& store();
  /// The store's graph, re-truncated when a build mass is configured.
  const Multigraph& graph();
  const Vocabulary& vocab() { return store().corpus.vocabulary(); }
  TokenId token(const std::string& surface);

  ContextSpec context_spec(const std::string& expr) const;
  ContextSet context(const ContextSpec& spec);

  /// Graph of the configured kind over one context.
  ConditionedGraph build_graph(const ContextSpec& spec);
  /// --graph file when given, else build_graph over --context.
  ConditionedGraph input_graph();

  /// Ordered contexts from --contexts, or one per value of the --by key.
  std::vector<NamedContext> series_contexts();

  /// Clusters of --clusters at --level (0 selects the deepest level).
  std::vector<std::vector<TokenId>> load_cluster_level(std::vector<std::string>* labels);

 private:
  RunConfig config_;
  std::ostream& out_;
  std::ostream& err_;
  Outputs outputs_;
  std::optional<Store> store_;
  std::optional<Multigraph> truncated_;
};

/// Token id, surface and one value per row.
void write_scores_csv(std::ostream& out, const std::vector<TokenId>& nodes, const std::vector<double>& values,
                      const Vocabulary& vocab, const std::string& column);

std::string join_labels(const std::vector<TokenId>& tokens, const Vocabulary& vocab);

}  // namespace substinet::cli
