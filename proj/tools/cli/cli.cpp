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

#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <string_view>

#include <CLI11.hpp>

#include "commands.hpp"
#include "substinet/error.hpp"
#include "substinet/parallel.hpp"
#include "substinet/text_format.hpp"

namespace substinet::cli {

namespace {

using Command = void (*)(Session&);

// Config file named on the command line, read before flags are bound so
// explicit flags override it.
std::string find_config_flag(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.starts_with("--config=")) return std::string(a.substr(9));
  }
  return {};
}

void context_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--context", c.context, "context expression (key=v&key<=v&has:token) or @spec.json");
}

void graph_flags(CLI::App* app, RunConfig& c, const std::string& kind_flag = "--kind") {
  context_flags(app, c);
  app->add_option(kind_flag, c.kind,
                  "aggregate|compositional|bidirectional|min|max|lambda|entropy|certainty|unconventionality");
  app->add_option("--mass", c.build_mass, "re-truncate distributions to this mass before building");
  app->add_flag("--normalize", c.normalize, "divide aggregate ties by the number of sequences");
  app->add_flag("--sequence-counting", c.sequence_counting, "count a token once per sequence");
  app->add_option("--lambda", c.lambda, "conditioning tokens for --kind lambda");
  app->add_option("--lambda-mode", c.lambda_mode, "occurrence|substitution|bidirectional");
  app->add_flag("--lambda-include-focal", c.lambda_include_focal, "let the focal position count for lambda");
  app->add_option("--sparsify-mass", c.sparsify_mass, "keep each node's strongest ties up to this out-mass share");
  app->add_option("--sparsify-k", c.sparsify_k, "keep at most this many out-ties per node");
  app->add_option("--log-base", c.log_base, "entropy log base (natural log by default)");
}

void graph_input_flags(CLI::App* app, RunConfig& c, const std::string& kind_flag = "--kind") {
  graph_flags(app, c, kind_flag);
  app->add_option("--graph", c.graph, "read a .cgraph file instead of building from the store");
}

void series_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--by", c.by, "one context per value of this meta key");
  app->add_option("--contexts", c.contexts, "JSON list of {label, context} objects");
  app->add_option("--window", c.window, "centered moving average half-width (0 = off)");
}

void landscape_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--top-n", c.top_n, "context tokens kept in the context network");
  app->add_option("--max-degree", c.max_degree, "out-ties per node in the context network");
  app->add_option("--context-levels", c.context_levels, "clustering depth for context clusters");
  app->add_option("--resolution", c.resolution, "modularity resolution");
  app->add_option("--seed", c.seed, "node sweep seed (0 = token order)");
  app->add_option("--label-size", c.label_size, "tokens per cluster label");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string write_config;
  std::string config_path;
  Command command = nullptr;

  CLI::App app{"Semantic substitution networks from masked language model predictions", "substinet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "substinet 0.1.0");

  try {
    config_path = find_config_flag(argc, argv);
    if (!config_path.empty()) c = load_config(config_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  app.add_option("--config", config_path, "JSON run configuration providing defaults");
  app.add_option("--write-config", write_config, "write the effective configuration to this file");
  app.add_option("--store", c.store, "store file (default: $SUBSTINET_STORE)");
  app.add_option("--threads", c.threads, "worker threads (default: hardware threads)");

  auto on = [&](CLI::App* sub, Command fn) { sub->callback([&command, fn] { command = fn; }); };

  auto* toy = app.add_subcommand("toy", "toy language model");
  toy->require_subcommand(1);
  auto* toy_gen = toy->add_subcommand("generate", "write corpus, records and stop words from a toy spec");
  toy_gen->add_option("--spec", c.spec, "toy model spec (JSON)");
  toy_gen->add_option("--out-dir", c.out_dir, "output directory");
  on(toy_gen, toy_generate);

  auto* ing = app.add_subcommand("ingest", "create a store or add distribution records to it");
  ing->add_option("--corpus", c.corpus, "corpus JSONL (creates the store)");
  ing->add_option("--stopwords", c.stopwords, "stop-word list, one per line");
  ing->add_option("--records", c.records, "distribution records JSONL");
  ing->add_option("--mass", c.mass, "probability mass kept per occurrence");
  ing->add_option("--preset", c.preset, "analysis|robust|storage mass preset");
  ing->add_option("--min-edge-weight", c.min_edge_weight, "drop substitutes below this probability");
  ing->add_option("--cutoff-order", c.cutoff_order, "apply the mass cutoff after|before removing the truth");
  ing->add_flag("--keep-self", c.keep_self, "use the truth probability in entropy measures");
  on(ing, ingest);

  on(app.add_subcommand("info", "store summary"), info);

  auto* graph = app.add_subcommand("graph", "conditioned graphs");
  graph->require_subcommand(1);
  auto* build = graph->add_subcommand("build", "build a conditioned graph (.cgraph)");
  graph_flags(build, c);
  build->add_option("--out", c.out, "output file (default: stdout)");
  on(build, graph_build);
  auto* exp = graph->add_subcommand("export", "convert a .cgraph file");
  exp->add_option("--graph", c.graph, "input .cgraph");
  exp->add_option("--format", c.format, "csv|graphml|cgraph");
  exp->add_option("--out", c.out, "output file (default: stdout)");
  on(exp, graph_export);

  auto* export_cmd = app.add_subcommand("export", "raw store contents");
  export_cmd->require_subcommand(1);
  auto* edges = export_cmd->add_subcommand("edges", "every multigraph edge of a context (CSV)");
  edges->add_option("--context", c.context, "context expression or @spec.json");
  edges->add_option("--mass", c.build_mass, "re-truncate distributions to this mass first");
  edges->add_option("--out", c.out, "output CSV (default: stdout)");
  on(edges, export_edges);

  auto* cen = app.add_subcommand("centrality", "node centrality scores (CSV)");
  graph_input_flags(cen, c, "--graph-kind");
  cen->add_option("--kind", c.centrality, "pagerank|betweenness|katz");
  cen->add_option("--damping", c.damping, "pagerank damping");
  cen->add_option("--tolerance", c.tolerance, "pagerank L1 tolerance");
  cen->add_option("--max-iterations", c.max_iterations, "pagerank iteration limit");
  cen->add_option("--delta", c.delta, "katz attenuation (0 = --delta-fraction / lambda_max)");
  cen->add_option("--delta-fraction", c.delta_fraction, "katz attenuation as a share of 1 / lambda_max");
  cen->add_flag("--power", c.power, "power centrality (negative attenuation)");
  cen->add_option("--focal", c.focal, "betweenness: score only this token's component");
  cen->add_option("--out", c.out, "output CSV (default: stdout)");
  on(cen, centrality);

  auto* clu = app.add_subcommand("cluster", "hierarchical modularity clustering");
  graph_input_flags(clu, c);
  clu->add_option("--levels", c.levels, "number of levels");
  clu->add_option("--resolution", c.resolution, "modularity resolution");
  clu->add_option("--seed", c.seed, "node sweep seed (0 = token order)");
  clu->add_option("--symmetrize", c.symmetrize, "bidirectional|min|max");
  clu->add_option("--label-size", c.label_size, "tokens per cluster label");
  clu->add_option("--focal", c.focal, "label clusters by tie strength from this token");
  clu->add_option("--out", c.out, "clusters JSON, or CSV when the name ends in .csv");
  on(clu, cluster);

  auto* pro = app.add_subcommand("profile", "cluster proximity series of a token");
  graph_flags(pro, c);
  series_flags(pro, c);
  pro->add_option("--mu", c.focal, "token whose profile is measured");
  pro->add_option("--clusters", c.clusters, "clusters JSON");
  pro->add_option("--level", c.level, "cluster level, 1-based (0 = deepest)");
  pro->add_flag("--weighted", c.weighted, "weighted proximity");
  pro->add_flag("--shares", c.shares, "shares of the token's out-strength");
  pro->add_option("--ratio", c.ratio, "extra series A/B of two clusters (1-based)");
  pro->add_option("--out", c.out, "output CSV (default: stdout)");
  on(pro, profile);

  auto* ctx = app.add_subcommand("context", "contextual measures");
  ctx->require_subcommand(1);
  auto* dyad = ctx->add_subcommand("dyad", "context distribution of one substitution dyad");
  graph_flags(dyad, c);
  dyad->add_option("--mu", c.focal, "substituting token");
  dyad->add_option("--tau", c.tau, "substituted token");
  dyad->add_option("--variant", c.variant, "joint-approx|random-element|conditional");
  dyad->add_option("--out", c.out, "output CSV (default: stdout)");
  on(dyad, context_dyad);
  auto* net = ctx->add_subcommand("network", "context network around a token");
  graph_flags(net, c);
  net->add_option("--mu", c.focal, "focal token");
  net->add_option("--tau", c.tau, "substituted token (substitution: optional; element: required)");
  net->add_option("--network", c.network, "substitution|element|token");
  net->add_option("--cutoff", c.cutoff, "minimum tie weight");
  net->add_option("--top-n", c.top_n, "token network: context tokens kept");
  net->add_option("--max-degree", c.max_degree, "token network: out-ties per node");
  net->add_option("--out", c.out, "edges CSV, or .cgraph / .graphml by extension");
  on(net, context_network);
  auto* map = ctx->add_subcommand("map", "contextual landscape of a token");
  graph_flags(map, c);
  landscape_flags(map, c);
  map->add_option("--focal", c.focal, "focal token");
  map->add_option("--split", c.split, "one map per context expression");
  map->add_flag("--diff", c.diff, "also write second minus first split");
  map->add_option("--grid", c.grid, "grid resolution per axis");
  map->add_option("--bandwidth", c.bandwidth, "kernel bandwidth (0 = Scott's rule)");
  map->add_option("--out-dir", c.out_dir, "output directory");
  on(map, context_map);

  auto* dri = app.add_subcommand("drift", "L2 drift of contextual distributions");
  graph_flags(dri, c);
  series_flags(dri, c);
  dri->add_option("--focal", c.focal, "focal token");
  dri->add_option("--baseline", c.baseline, "baseline context label (default: first)");
  dri->add_option("--mode", c.mode, "between|within|within-variance");
  dri->add_option("--out", c.out, "output CSV (default: stdout)");
  on(dri, drift);

  auto* var = app.add_subcommand("variance", "contextual variance explained by substitution clusters");
  graph_flags(var, c);
  series_flags(var, c);
  landscape_flags(var, c);
  var->add_option("--focal", c.focal, "focal token");
  var->add_option("--clusters", c.clusters, "substitution clusters JSON");
  var->add_option("--level", c.level, "cluster level, 1-based (0 = deepest)");
  var->add_flag("--relative", c.relative, "divide shares by the cluster's share of substitution mass");
  var->add_option("--out", c.out, "output CSV (default: stdout)");
  on(var, variance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (c.store.empty()) {
    if (const char* env = std::getenv("SUBSTINET_STORE")) c.store = env;
  }
  if (c.threads > 0) parallel::set_threads(static_cast<unsigned>(c.threads));

  Session session(c, out, err);
  try {
    if (!write_config.empty()) {
      session.outputs().write(write_config, out, [&](std::ostream& o) { o << config_to_json(c); });
    }
    command(session);
    return 0;
  } catch (const Error& e) {
    session.outputs().remove_all();
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    session.outputs().remove_all();
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace substinet::cli
