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

#include <algorithm>
#include <cmath>
#include <ostream>

#include "commands.hpp"
#include "substinet/clustering.hpp"
#include "substinet/context.hpp"
#include "substinet/error.hpp"
#include "substinet/landscape.hpp"
#include "substinet/profile.hpp"
#include "substinet/text_format.hpp"
#include "svg.hpp"

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

ContextSpec restricted(Session& s, const std::string& expr) {
  const ContextSpec spec = s.context_spec(expr);
  if (s.config().context == "*") return spec;
  return ContextSpec::all_of({s.context_spec(s.config().context), spec});
}

// Context clusters of the focal token and their projected positions, fixed
// over the pooled base context so maps of sub-contexts share one basis.
struct Basis {
  std::vector<std::vector<TokenId>> clusters;
  std::vector<std::string> labels;
  std::vector<Point> points;
};

Basis landscape_basis(Session& s, TokenId focal) {
  const RunConfig& c = s.config();
  const ContextSet pooled = s.context(s.context_spec(c.context));
  const ConditionedGraph q = token_context_network(s.graph(), focal, pooled, c.top_n, c.max_degree);
  ClusterOptions opts;
  opts.levels = c.context_levels;
  opts.resolution = c.resolution;
  opts.seed = c.seed;
  opts.label_size = c.label_size;
  opts.focal = focal;
  const ClusterHierarchy h = hierarchical_clusters(q, opts);
  if (h.levels.empty()) fail("the context network of '" + c.focal + "' is empty");
  const std::size_t level = h.levels.size() - 1;
  Basis b;
  b.clusters = h.partition(level);
  if (b.clusters.size() < 2) fail("the context network of '" + c.focal + "' has fewer than two clusters");
  for (const auto& l : h.levels[level].labels) b.labels.push_back(join_labels(l, s.vocab()));
  const Projection p = project_clusters(q, b.clusters, focal);
  if (p.degenerate) s.warn("context kernel has rank below 2; the missing axes are set to zero");
  b.points = p.points;
  return b;
}

std::vector<WeightedPoint> weighted_points(const PositionedSentences& ps) {
  std::vector<WeightedPoint> out;
  out.reserve(ps.sentences.size());
  for (const auto& sp : ps.sentences) out.push_back({sp.point, sp.weight});
  return out;
}

void write_grid_csv(std::ostream& out, const ContextLandscape& map) {
  CsvWriter csv(out, {"i", "j", "x", "y", "value"});
  const std::size_t r = map.grid.resolution;
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < r; ++i) {
      csv.field(static_cast<unsigned long long>(i)).field(static_cast<unsigned long long>(j));
      csv.field(map.grid.x(i)).field(map.grid.y(j)).field(map.at(i, j));
      csv.end_row();
    }
  }
}

std::vector<Marker> markers(const Basis& b) {
  std::vector<Marker> out;
  for (std::size_t k = 0; k < b.points.size(); ++k) out.push_back({b.points[k], b.labels[k]});
  return out;
}

}  // namespace

void context_dyad(Session& s) {
  const RunConfig& c = s.config();
  const TokenId mu = s.token(c.focal);
  const TokenId tau = s.token(c.tau);
  const ContextSet ctx = s.context(s.context_spec(c.context));
  const ContextDistribution d = dyadic_context(s.graph(), mu, tau, ctx, parse_dyad_variant(c.variant), c.normalize);
  std::vector<TokenId> nodes;
  std::vector<double> values;
  for (const auto& e : d.weights) {
    nodes.push_back(e.token);
    values.push_back(e.prob);
  }
  s.outputs().write(c.out, s.out(),
                    [&](std::ostream& out) { write_scores_csv(out, nodes, values, s.vocab(), "weight"); });
}

void context_network(Session& s) {
  const RunConfig& c = s.config();
  const TokenId mu = s.token(c.focal);
  const ContextSet ctx = s.context(s.context_spec(c.context));
  ConditionedGraph q;
  if (c.network == "substitution") {
    std::optional<TokenId> tau;
    if (!c.tau.empty()) tau = s.token(c.tau);
    q = context_substitution_network(s.graph(), mu, tau, ctx, c.cutoff);
  } else if (c.network == "element") {
    q = context_element_network(s.graph(), mu, s.token(c.tau), ctx, c.cutoff);
  } else if (c.network == "token") {
    q = token_context_network(s.graph(), mu, ctx, c.top_n, c.max_degree);
  } else {
    fail("unknown context network '" + c.network + "' (substitution|element|token)");
  }
  s.outputs().write(c.out, s.out(), [&](std::ostream& out) {
    if (ends_with(c.out, ".cgraph")) {
      write_cgraph(out, q, s.vocab());
    } else if (ends_with(c.out, ".graphml")) {
      write_graphml(out, q, s.vocab());
    } else {
      write_edges_csv(out, q, s.vocab());
    }
  });
}

void context_map(Session& s) {
  const RunConfig& c = s.config();
  if (c.out_dir.empty()) fail("--out-dir is required");
  const TokenId focal = s.token(c.focal);
  std::vector<std::string> splits = c.split;
  if (splits.empty()) splits.push_back("*");
  if (c.diff && splits.size() != 2) fail("--diff needs exactly two --split contexts");

  const Basis basis = landscape_basis(s, focal);
  std::vector<PositionedSentences> positioned;
  std::vector<WeightedPoint> all;
  for (const auto& expr : splits) {
    positioned.push_back(position_sentences(s.graph(), s.store().corpus, s.context(restricted(s, expr)), focal,
                                            basis.clusters, basis.points));
    const auto pts = weighted_points(positioned.back());
    all.insert(all.end(), pts.begin(), pts.end());
  }
  double h = c.bandwidth > 0.0 ? c.bandwidth : scott_bandwidth(all);
  if (!(h > 0.0)) {
    double extent = 0.0;
    for (const auto& p : basis.points) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    h = extent > 0.0 ? 0.1 * extent : 1.0;
    s.warn("sentence positions have no spread; bandwidth set to " + format_double(h));
  }
  const GridSpec grid = default_grid(basis.points, all, h, c.grid);

  const std::filesystem::path dir(c.out_dir);
  s.outputs().write((dir / "clusters.csv").string(), s.out(), [&](std::ostream& out) {
    CsvWriter csv(out, {"cluster", "label", "size", "x", "y"});
    for (std::size_t k = 0; k < basis.clusters.size(); ++k) {
      csv.field(static_cast<unsigned long long>(k + 1)).field(basis.labels[k]);
      csv.field(static_cast<unsigned long long>(basis.clusters[k].size()));
      csv.field(basis.points[k].x).field(basis.points[k].y);
      csv.end_row();
    }
  });
  std::vector<ContextLandscape> maps;
  for (std::size_t k = 0; k < splits.size(); ++k) {
    const std::string stem = "map_" + std::to_string(k + 1);
    s.outputs().write((dir / ("sentences_" + std::to_string(k + 1) + ".csv")).string(), s.out(),
                      [&](std::ostream& out) {
                        CsvWriter csv(out, {"seq", "x", "y", "weight"});
                        for (const auto& sp : positioned[k].sentences) {
                          csv.field(static_cast<long long>(sp.seq.value)).field(sp.point.x).field(sp.point.y);
                          csv.field(sp.weight);
                          csv.end_row();
                        }
                      });
    maps.push_back(elevation_map(weighted_points(positioned[k]), grid, h, true));
    s.outputs().write((dir / (stem + ".csv")).string(), s.out(),
                      [&](std::ostream& out) { write_grid_csv(out, maps.back()); });
    s.outputs().write((dir / (stem + ".svg")).string(), s.out(),
                      [&](std::ostream& out) { write_heatmap_svg(out, maps.back(), false, markers(basis)); });
  }
  if (c.diff) {
    const ContextLandscape d = difference_map(maps[1], maps[0]);
    s.outputs().write((dir / "diff.csv").string(), s.out(), [&](std::ostream& out) { write_grid_csv(out, d); });
    s.outputs().write((dir / "diff.svg").string(), s.out(),
                      [&](std::ostream& out) { write_heatmap_svg(out, d, true, markers(basis)); });
  }
  CsvWriter summary(s.out(), {"map", "context", "sentences", "excluded", "bandwidth"});
  for (std::size_t k = 0; k < splits.size(); ++k) {
    summary.field(static_cast<unsigned long long>(k + 1)).field(splits[k]);
    summary.field(static_cast<unsigned long long>(positioned[k].sentences.size()));
    summary.field(static_cast<unsigned long long>(positioned[k].excluded)).field(h);
    summary.end_row();
  }
}

void drift(Session& s) {
  const RunConfig& c = s.config();
  const TokenId focal = s.token(c.focal);
  const auto contexts = s.series_contexts();
  std::vector<std::vector<WeightedDistribution>> items;
  for (const auto& ctx : contexts) items.push_back(focal_distributions(s.graph(), s.store().corpus, s.context(ctx.spec), focal));

  std::vector<std::optional<double>> values(contexts.size());
  std::vector<std::string> flags(contexts.size());
  if (c.mode == "between") {
    std::size_t base = 0;
    if (!c.baseline.empty()) {
      auto it = std::find_if(contexts.begin(), contexts.end(), [&](const auto& x) { return x.label == c.baseline; });
      if (it == contexts.end()) fail("baseline '" + c.baseline + "' is not one of the contexts");
      base = static_cast<std::size_t>(it - contexts.begin());
    }
    const auto reference = pooled_distribution(items[base]);
    if (reference.empty()) fail("baseline context '" + contexts[base].label + "' has no sentences with positive focal weight");
    for (std::size_t t = 0; t < contexts.size(); ++t) {
      const auto pooled = pooled_distribution(items[t]);
      if (pooled.empty()) {
        flags[t] = "empty";
        continue;
      }
      values[t] = l2_distance(pooled, reference);
    }
  } else if (c.mode == "within" || c.mode == "within-variance") {
    const WithinMode mode = c.mode == "within" ? WithinMode::MeanPairwise : WithinMode::PairwiseVariance;
    for (std::size_t t = 0; t < contexts.size(); ++t) {
      values[t] = within_spread(items[t], mode);
      if (!values[t]) flags[t] = items[t].empty() ? "empty" : "single";
    }
  } else {
    fail("unknown drift mode '" + c.mode + "' (between|within|within-variance)");
  }
  for (std::size_t t = 0; t < contexts.size(); ++t) {
    if (!flags[t].empty()) s.warn("context '" + contexts[t].label + "' has no drift value (" + flags[t] + ")");
  }
  if (c.window > 0) values = centered_moving_average(values, c.window);
  s.outputs().write(c.out, s.out(), [&](std::ostream& out) {
    CsvWriter csv(out, {"context", "sentences", "value", "flag"});
    for (std::size_t t = 0; t < contexts.size(); ++t) {
      csv.field(contexts[t].label).field(static_cast<unsigned long long>(items[t].size()));
      field_or_na(csv, values[t]);
      csv.field(flags[t]);
      csv.end_row();
    }
  });
}

void variance(Session& s) {
  const RunConfig& c = s.config();
  const TokenId focal = s.token(c.focal);
  std::vector<std::string> labels;
  const auto clusters = s.load_cluster_level(&labels);
  const auto contexts = s.series_contexts();
  const Basis basis = landscape_basis(s, focal);

  const std::size_t k_count = clusters.size();
  std::vector<std::vector<std::optional<double>>> share(k_count, std::vector<std::optional<double>>(contexts.size()));
  auto relative = share;
  for (std::size_t t = 0; t < contexts.size(); ++t) {
    const auto positioned = position_sentences(s.graph(), s.store().corpus, s.context(contexts[t].spec), focal,
                                               basis.clusters, basis.points);
    const auto items = variance_items(s.graph(), positioned, focal, clusters);
    try {
      const ExplainedVariance ev = explained_variance(items, k_count);
      for (std::size_t k = 0; k < k_count; ++k) {
        share[k][t] = ev.share[k];
        relative[k][t] = ev.relative[k];
      }
    } catch (const Error& e) {
      s.warn("context '" + contexts[t].label + "': " + e.what());
    }
  }
  if (c.window > 0) {
    for (std::size_t k = 0; k < k_count; ++k) {
      share[k] = centered_moving_average(share[k], c.window);
      relative[k] = centered_moving_average(relative[k], c.window);
    }
  }
  s.outputs().write(c.out, s.out(), [&](std::ostream& out) {
    CsvWriter csv(out, {"context", "cluster", "label", c.relative ? "relative" : "share"});
    for (std::size_t k = 0; k < k_count; ++k) {
      for (std::size_t t = 0; t < contexts.size(); ++t) {
        csv.field(contexts[t].label).field(std::to_string(k + 1)).field(k < labels.size() ? labels[k] : "");
        field_or_na(csv, c.relative ? relative[k][t] : share[k][t]);
        csv.end_row();
      }
    }
  });
}

}  // namespace substinet::cli
