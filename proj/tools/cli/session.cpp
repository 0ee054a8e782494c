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

#include "session.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "substinet/entropy.hpp"
#include "substinet/error.hpp"
#include "substinet/substitution.hpp"
#include "substinet/text_format.hpp"

namespace substinet::cli {

void Outputs::write(const std::string& path, std::ostream& fallback,
                    const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(fallback);
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  write_file_atomically(p, writer);
  written_.push_back(p);
}

void Outputs::remove_all() noexcept {
  for (const auto& p : written_) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
  }
  written_.clear();
}

Session::Session(RunConfig config, std::ostream& out, std::ostream& err)
    : config_(std::move(config)), out_(out), err_(err) {}

void Session::warn(const std::string& message) { err_ << "warning: " << message << '\n'; }

bool Session::has_store() const { return !config_.store.empty() && std::filesystem::exists(config_.store); }

Store& Session::store() {
  if (!store_) {
    if (config_.store.empty()) fail("no store given (use --store or set SUBSTINET_STORE)");
    if (!std::filesystem::exists(config_.store)) fail("store not found: " + config_.store);
    store_ = load_store(config_.store);
  }
  return *store_;
}

const Multigraph& Session::graph() {
  Store& s = store();
  const double mass = config_.build_mass;
  if (mass == 0.0 || mass == s.settings.mass_threshold) return s.graph;
  if (!truncated_) truncated_ = graph_at_mass(s, mass);
  return *truncated_;
}

TokenId Session::token(const std::string& surface) {
  if (surface.empty()) fail("a token is required");
  return vocab().require(surface);
}

ContextSpec Session::context_spec(const std::string& expr) const {
  if (!expr.empty() && expr.front() == '@') return load_context_spec(expr.substr(1));
  return parse_context_expression(expr);
}

ContextSet Session::context(const ContextSpec& spec) { return resolve_context(store().corpus, spec); }

ConditionedGraph Session::build_graph(const ContextSpec& spec) {
  const Multigraph& g = graph();
  const ContextSet c = context(spec);
  AggregationOptions agg{config_.normalize, config_.sequence_counting, spec.to_json()};
  const std::string& kind = config_.kind;
  ConditionedGraph out;
  if (kind == "aggregate") {
    out = aggregate_substitution(g, c, agg);
  } else if (kind == "compositional") {
    out = compositional_substitution(g, c, agg);
  } else if (kind == "bidirectional" || kind == "min" || kind == "max") {
    out = symmetric_variant(aggregate_substitution(g, c, agg), parse_symmetric_mode(kind));
  } else if (kind == "lambda") {
    if (config_.lambda.empty()) fail("--lambda needs at least one token");
    LambdaSpec lambda;
    for (const auto& t : config_.lambda) lambda.tokens.push_back(token(t));
    lambda.mode = parse_lambda_mode(config_.lambda_mode);
    lambda.exclude_focal = !config_.lambda_include_focal;
    out = lambda_condition(g, store().corpus, lambda, c, agg);
  } else if (kind == "entropy" || kind == "certainty" || kind == "unconventionality") {
    EntropyOptions opts{store().settings.keep_self, config_.log_base, config_.normalize, spec.to_json()};
    if (kind == "entropy") {
      out = entropy_network(g, c, opts);
    } else {
      CompoundResult r = compound(g, c, parse_compound_kind(kind), opts);
      if (r.dropped > 0) warn(std::to_string(r.dropped) + " occurrence ties dropped where " + kind + " is undefined");
      out = std::move(r.graph);
    }
  } else {
    fail("unknown graph kind '" + kind +
         "' (aggregate|compositional|bidirectional|min|max|lambda|entropy|certainty|unconventionality)");
  }
  if (config_.sparsify_mass > 0.0) out = sparsify(out, SparsifyPolicy::out_mass(config_.sparsify_mass));
  if (config_.sparsify_k > 0) out = sparsify(out, SparsifyPolicy::max_degree(config_.sparsify_k));
  return out;
}

ConditionedGraph Session::input_graph() {
  if (!config_.graph.empty()) return load_cgraph(config_.graph).graph;
  return build_graph(context_spec(config_.context));
}

std::vector<NamedContext> Session::series_contexts() {
  std::vector<NamedContext> out;
  if (!config_.contexts.empty()) {
    std::ifstream in(config_.contexts);
    if (!in) fail("cannot open contexts file " + config_.contexts);
    try {
      const auto j = nlohmann::json::parse(in);
      for (const auto& item : j) {
        out.push_back({item.at("label").get<std::string>(), parse_context_spec(item.at("context").dump())});
      }
    } catch (const nlohmann::json::exception& e) {
      fail("contexts file " + config_.contexts + ": " + e.what());
    }
  } else {
    if (config_.by.empty()) fail("either --contexts or --by is required");
    std::set<MetaValue> values;
    for (const auto& seq : store().corpus.sequences()) {
      if (const MetaValue* v = find_meta(seq.meta, config_.by)) values.insert(*v);
    }
    if (values.empty()) fail("no sequence carries meta key '" + config_.by + "'");
    for (const auto& v : values) out.push_back({meta_to_string(v), ContextSpec::meta_eq(config_.by, v)});
  }
  if (out.empty()) fail("no contexts to evaluate");
  // Restrict every series point to the base context.
  if (config_.context != "*") {
    const ContextSpec base = context_spec(config_.context);
    for (auto& c : out) c.spec = ContextSpec::all_of({base, c.spec});
  }
  return out;
}

std::vector<std::vector<TokenId>> Session::load_cluster_level(std::vector<std::string>* labels) {
  if (config_.clusters.empty()) fail("--clusters is required");
  const ClusterHierarchy h = load_clusters(config_.clusters);
  if (h.levels.empty()) fail("cluster file " + config_.clusters + " has no levels");
  const std::size_t level = config_.level == 0 ? h.levels.size() : config_.level;
  if (level > h.levels.size()) {
    fail("cluster level " + std::to_string(level) + " requested but the file has " +
         std::to_string(h.levels.size()));
  }
  auto parts = h.partition(level - 1);
  if (labels) {
    labels->clear();
    for (const auto& l : h.levels[level - 1].labels) labels->push_back(join_labels(l, vocab()));
  }
  return parts;
}

void write_scores_csv(std::ostream& out, const std::vector<TokenId>& nodes, const std::vector<double>& values,
                      const Vocabulary& vocab, const std::string& column) {
  CsvWriter csv(out, {"token_id", "token", column});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    csv.field(static_cast<unsigned long long>(nodes[i].value)).field(vocab.surface(nodes[i])).field(values[i]);
    csv.end_row();
  }
}

std::string join_labels(const std::vector<TokenId>& tokens, const Vocabulary& vocab) {
  std::string s;
  for (TokenId t : tokens) {
    if (!s.empty()) s += ' ';
    s += vocab.surface(t);
  }
  return s;
}

}  // namespace substinet::cli
