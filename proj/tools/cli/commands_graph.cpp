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

#include <cmath>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "substinet/centrality.hpp"
#include "substinet/clustering.hpp"
#include "substinet/error.hpp"
#include "substinet/profile.hpp"
#include "substinet/text_format.hpp"
#include "substinet/toy_model.hpp"

namespace substinet::cli {

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void field_or_na(CsvWriter& csv, const std::optional<double>& v) {
  if (v) {
    csv.field(*v);
  } else {
    csv.field("NA");
  }
}

std::optional<TokenId> optional_token(Session& s, const std::string& surface) {
  if (surface.empty()) return std::nullopt;
  return s.token(surface);
}

}  // namespace

void toy_generate(Session& s) {
  const RunConfig& c = s.config();
  if (c.spec.empty()) fail("--spec is required");
  if (c.out_dir.empty()) fail("--out-dir is required");
  const ToyModelSpec spec = load_toy_spec(c.spec);
  const ToyOutput toy = generate_toy(spec);
  const std::filesystem::path dir(c.out_dir);
  s.outputs().write((dir / "corpus.jsonl").string(), s.out(), [&](std::ostream& out) {
    for (const auto& seq : toy.sequences) out << sequence_to_json(seq) << '\n';
  });
  s.outputs().write((dir / "records.jsonl").string(), s.out(), [&](std::ostream& out) {
    for (const auto& rec : toy.records) out << record_to_json(rec) << '\n';
  });
  s.outputs().write((dir / "stopwords.txt").string(), s.out(), [&](std::ostream& out) {
    for (const auto& w : spec.stopwords) out << w << '\n';
  });
  s.out() << "sequences\t" << toy.sequences.size() << "\nrecords\t" << toy.records.size() << "\nskipped\t"
          << toy.skipped << '\n';
}

void ingest(Session& s) {
  const RunConfig& c = s.config();
  if (c.store.empty()) fail("no store given (use --store or set SUBSTINET_STORE)");
  Store store;
  if (s.has_store()) {
    if (!c.corpus.empty()) fail("store " + c.store + " already holds a corpus; only records can be added");
    store = load_store(c.store);
  } else {
    if (c.corpus.empty()) fail("--corpus is required to create store " + c.store);
    std::unordered_set<std::string> stop;
    if (!c.stopwords.empty()) stop = read_stopwords(c.stopwords);
    std::ifstream in(c.corpus);
    if (!in) fail("cannot open corpus " + c.corpus);
    store.corpus = load_corpus(in, std::move(stop));
    store.settings.mass_threshold = c.preset.empty() ? c.mass : mass_for_preset(parse_mass_preset(c.preset));
    store.settings.min_edge_weight = c.min_edge_weight;
    if (c.cutoff_order == "after") {
      store.settings.cutoff_order = CutoffOrder::AfterSelfRemoval;
    } else if (c.cutoff_order == "before") {
      store.settings.cutoff_order = CutoffOrder::BeforeSelfRemoval;
    } else {
      fail("unknown cutoff order '" + c.cutoff_order + "' (after|before)");
    }
    store.settings.keep_self = c.keep_self;
    if (!(store.settings.mass_threshold > 0.0 && store.settings.mass_threshold <= 1.0)) {
      fail("--mass must lie in (0, 1]");
    }
  }
  IngestStats stats;
  if (!c.records.empty()) {
    std::ifstream in(c.records);
    if (!in) fail("cannot open records " + c.records);
    stats = ingest_records(store, in);
  }
  save_store(c.store, store);
  if (stats.truth_stripped > 0) {
    s.warn(std::to_string(stats.truth_stripped) + " records listed their own token as a substitute; it was removed");
  }
  s.out() << "accepted\t" << stats.accepted << "\ntruth_stripped\t" << stats.truth_stripped << "\nedges\t"
          << stats.edges << '\n';
}

void info(Session& s) {
  const Store& st = s.store();
  std::string keys;
  for (const auto& k : st.corpus.meta_keys()) {
    if (!keys.empty()) keys += ',';
    keys += k;
  }
  s.out() << "sequences\t" << st.corpus.size() << "\ntokens\t" << st.corpus.total_tokens() << "\nnon_stop_tokens\t"
          << st.corpus.non_stop_tokens() << "\nvocabulary\t" << st.corpus.vocabulary().size() << "\noccurrences\t"
          << st.graph.occurrence_count() << "\nedges\t" << st.graph.edge_count() << "\nmass_threshold\t"
          << format_double(st.settings.mass_threshold) << "\nmin_edge_weight\t"
          << format_double(st.settings.min_edge_weight) << "\ncutoff_order\t"
          << (st.settings.cutoff_order == CutoffOrder::AfterSelfRemoval ? "after" : "before") << "\nkeep_self\t"
          << (st.settings.keep_self ? "true" : "false") << "\nmeta_keys\t" << keys << '\n';
}

void graph_build(Session& s) {
  const ConditionedGraph g = s.build_graph(s.context_spec(s.config().context));
  s.outputs().write(s.config().out, s.out(), [&](std::ostream& out) { write_cgraph(out, g, s.vocab()); });
  if (!s.config().out.empty()) s.out() << "nodes\t" << g.node_count() << "\nedges\t" << g.edge_count() << '\n';
}

void graph_export(Session& s) {
  const RunConfig& c = s.config();
  if (c.graph.empty()) fail("--graph is required");
  const ConditionedGraph g = load_cgraph(c.graph).graph;
  s.outputs().write(c.out, s.out(), [&](std::ostream& out) {
    if (c.format == "csv") {
      write_edges_csv(out, g, s.vocab());
    } else if (c.format == "graphml") {
      write_graphml(out, g, s.vocab());
    } else if (c.format == "cgraph") {
      write_cgraph(out, g, s.vocab());
    } else {
      fail("unknown export format '" + c.format + "' (csv|graphml|cgraph)");
    }
  });
}

void export_edges(Session& s) {
  const RunConfig& c = s.config();
  const Multigraph& g = s.graph();
  const ContextSet context = s.context(s.context_spec(c.context));
  const Vocabulary& vocab = s.vocab();
  s.outputs().write(c.out, s.out(), [&](std::ostream& out) {
    CsvWriter csv(out, {"occurrence_id", "seq", "pos", "tau", "mu", "tau_token", "mu_token", "weight"});
    for (SeqId seq : context) {
      const OccurrenceRange r = g.seq_range(seq);
      for (auto o = r.begin; o < r.end; ++o) {
        for (auto e = g.edges_begin(o); e < g.edges_end(o); ++e) {
          csv.field(o).field(seq.value).field(g.pos(o)).field(g.tau(o).value).field(g.mu(e).value);
          csv.field(vocab.surface(g.tau(o))).field(vocab.surface(g.mu(e))).field(g.weight(e)).end_row();
        }
      }
    }
  });
}

void centrality(Session& s) {
  const RunConfig& c = s.config();
  const ConditionedGraph g = s.input_graph();
  NodeScores scores;
  if (c.centrality == "pagerank") {
    scores = pagerank(g, {c.damping, c.tolerance, c.max_iterations});
  } else if (c.centrality == "betweenness") {
    scores = flow_betweenness(g, optional_token(s, c.focal));
  } else if (c.centrality == "katz") {
    double delta = c.delta;
    if (delta == 0.0) {
      const double radius = spectral_radius(g);
      delta = radius > 0.0 ? c.delta_fraction / radius : c.delta_fraction;
    }
    scores = katz_bonacich(g, delta, c.power);
  } else {
    fail("unknown centrality '" + c.centrality + "' (pagerank|betweenness|katz)");
  }
  s.outputs().write(c.out, s.out(),
                    [&](std::ostream& out) { write_scores_csv(out, scores.nodes, scores.values, s.vocab(), "score"); });
}

void cluster(Session& s) {
  const RunConfig& c = s.config();
  const ConditionedGraph g = s.input_graph();
  ClusterOptions opts;
  opts.levels = c.levels;
  opts.resolution = c.resolution;
  opts.seed = c.seed;
  opts.symmetrize = parse_symmetric_mode(c.symmetrize);
  opts.label_size = c.label_size;
  opts.focal = optional_token(s, c.focal);
  const ClusterHierarchy h = hierarchical_clusters(g, opts);
  s.outputs().write(c.out, s.out(), [&](std::ostream& out) {
    if (!ends_with(c.out, ".csv")) {
      write_clusters_json(out, h, s.vocab());
      return;
    }
    std::vector<std::string> header{"token_id", "token"};
    for (std::size_t l = 0; l < h.levels.size(); ++l) header.push_back("level_" + std::to_string(l + 1));
    CsvWriter csv(out, header);
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
      csv.field(static_cast<unsigned long long>(h.nodes[i].value)).field(s.vocab().surface(h.nodes[i]));
      for (const auto& level : h.levels) csv.field(static_cast<unsigned long long>(level.assignment[i]));
      csv.end_row();
    }
  });
}

void profile(Session& s) {
  const RunConfig& c = s.config();
  const TokenId mu = s.token(c.focal);
  std::vector<std::string> labels;
  const auto clusters = s.load_cluster_level(&labels);
  const auto contexts = s.series_contexts();
  std::vector<ConditionedGraph> graphs;
  graphs.reserve(contexts.size());
  for (const auto& ctx : contexts) graphs.push_back(s.build_graph(ctx.spec));
  const ProfileMatrix m = profile_series(mu, graphs, clusters, {c.weighted, c.shares, c.window});

  struct Ratio {
    std::size_t a, b;
  };
  std::vector<Ratio> ratios;
  for (const auto& r : c.ratio) {
    const auto slash = r.find('/');
    std::size_t a = 0;
    std::size_t b = 0;
    try {
      if (slash == std::string::npos) throw std::invalid_argument(r);
      a = std::stoul(r.substr(0, slash));
      b = std::stoul(r.substr(slash + 1));
    } catch (const std::exception&) {
      fail("--ratio expects CLUSTER/CLUSTER with 1-based cluster numbers, got '" + r + "'");
    }
    if (a == 0 || b == 0 || a > clusters.size() || b > clusters.size()) {
      fail("--ratio cluster out of range: '" + r + "'");
    }
    ratios.push_back({a - 1, b - 1});
  }

  s.outputs().write(c.out, s.out(), [&](std::ostream& out) {
    CsvWriter csv(out, {"context", "cluster", "label", "value"});
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (std::size_t t = 0; t < contexts.size(); ++t) {
        csv.field(contexts[t].label).field(std::to_string(k + 1)).field(k < labels.size() ? labels[k] : "");
        field_or_na(csv, m[k][t]);
        csv.end_row();
      }
    }
    for (const auto& r : ratios) {
      const auto series = ratio_series(m[r.a], m[r.b]);
      const std::string name = std::to_string(r.a + 1) + "/" + std::to_string(r.b + 1);
      for (std::size_t t = 0; t < contexts.size(); ++t) {
        csv.field(contexts[t].label).field(name).field("ratio");
        field_or_na(csv, series[t]);
        csv.end_row();
      }
    }
  });
}

}  // namespace substinet::cli
