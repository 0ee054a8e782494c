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

// Thread-count determinism of the CLI and the synthetic ingestion benchmark.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "criteria.hpp"
#include "substinet/store.hpp"
#include "substinet/substitution.hpp"

namespace fs = std::filesystem;
using namespace substinet;

namespace acceptance {

namespace {

constexpr double kIngestSeconds = 300.0;
constexpr double kAggregateSeconds = 30.0;
constexpr double kMemoryBytes = 4.0 * 1024 * 1024 * 1024;
constexpr std::size_t kDeterminismSentences = 12000;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "substinet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every output file and stdout of one pipeline run, keyed by name.
std::map<std::string, std::string> pipeline(const fs::path& dir, const fs::path& toy, const std::string& threads,
                                            std::string& error) {
  fs::create_directories(dir);
  const std::string store = (dir / "s.store").string();
  auto at = [&](const std::string& name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> steps{
      {"ingest", "--corpus", (toy / "corpus.jsonl").string(), "--stopwords", (toy / "stopwords.txt").string(),
       "--records", (toy / "records.jsonl").string(), "--mass", "0.95"},
      {"export", "edges", "--context", "year<2000", "--out", at("multigraph.csv")},
      {"graph", "build", "--out", at("g.cgraph")},
      {"graph", "export", "--graph", at("g.cgraph"), "--format", "csv", "--out", at("edges.csv")},
      {"centrality", "--kind", "pagerank", "--out", at("pagerank.csv")},
      {"centrality", "--kind", "betweenness", "--out", at("betweenness.csv")},
      {"centrality", "--kind", "katz", "--out", at("katz.csv")},
      {"cluster", "--levels", "3", "--out", at("clusters.json")},
      {"cluster", "--levels", "3", "--out", at("clusters.csv")},
      {"profile", "--mu", "leader", "--clusters", at("clusters.json"), "--by", "year", "--out", at("profile.csv")},
      {"context", "dyad", "--mu", "leader", "--tau", "coach", "--out", at("dyad.csv")},
      {"context", "network", "--mu", "leader", "--network", "token", "--out", at("network.csv")},
      {"context", "map", "--focal", "leader", "--grid", "64", "--out-dir", at("map")},
      {"drift", "--focal", "leader", "--by", "year", "--out", at("drift.csv")},
      {"variance", "--focal", "leader", "--clusters", at("clusters.json"), "--out", at("variance.csv")},
  };
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::vector<std::string> args{"--store", store, "--threads", threads};
    args.insert(args.end(), steps[i].begin(), steps[i].end());
    const Run r = cli(args);
    if (r.code != 0) {
      error = steps[i][0] + " failed: " + r.err;
      return out;
    }
    out["stdout " + std::to_string(i)] = r.out;
  }
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return out;
}

void determinism(Tracker& t, const fs::path& root, std::string& detail) {
  nlohmann::json spec;
  std::ifstream(toy_spec_path()) >> spec;
  spec["generate"]["count"] = kDeterminismSentences;
  const fs::path spec_path = root / "toy_spec.json";
  std::ofstream(spec_path) << spec.dump(2);
  const fs::path toy = root / "toy";
  const Run gen = cli({"toy", "generate", "--spec", spec_path.string(), "--out-dir", toy.string()});
  t.require("toy generate", gen.code == 0);
  if (gen.code != 0) return;

  std::map<std::string, std::string> reference;
  for (const std::string threads : {"1", "4", "8"}) {
    std::string error;
    const auto files = pipeline(root / ("threads" + threads), toy, threads, error);
    t.require("pipeline at " + threads + " threads", error.empty());
    if (!error.empty()) {
      detail += error;
      return;
    }
    if (reference.empty()) {
      reference = files;
      continue;
    }
    bool same = files.size() == reference.size();
    for (const auto& [name, bytes] : reference) {
      auto it = files.find(name);
      if (it == files.end() || it->second != bytes) {
        same = false;
        detail += name + " differs at " + threads + " threads; ";
      }
    }
    t.require("byte-identical outputs", same);
  }
  detail += std::to_string(reference.size()) + " outputs identical at 1/4/8 threads";
}

// Corpus of 3-token sentences over a 20k vocabulary, one record with three
// substitutes per position.
void write_synthetic(const fs::path& dir, std::size_t sequences) {
  std::FILE* corpus = std::fopen((dir / "corpus.jsonl").c_str(), "w");
  std::FILE* records = std::fopen((dir / "records.jsonl").c_str(), "w");
  if (!corpus || !records) std::_Exit(3);
  std::mt19937_64 rng(42);
  constexpr std::uint64_t kVocab = 20000;
  auto word = [&] {
    // Skewed so some tokens are frequent.
    const std::uint64_t a = rng() % kVocab;
    const std::uint64_t b = rng() % kVocab;
    return std::min(a, b);
  };
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t s = 1; s <= sequences; ++s) {
    const std::uint64_t t[3] = {word(), word(), word()};
    std::fprintf(corpus, "{\"seq\":%zu,\"doc\":\"d%zu\",\"tokens\":[\"t%lu\",\"t%lu\",\"t%lu\"],\"meta\":{\"year\":%zu}}\n", s,
                 s / 50, t[0], t[1], t[2], 1990 + s % 20);
    for (int p = 0; p < 3; ++p) {
      std::uint64_t subs[3];
      for (int k = 0; k < 3; ++k) {
        do {
          subs[k] = word();
        } while (subs[k] == t[p] || (k > 0 && subs[k] == subs[0]) || (k > 1 && subs[k] == subs[1]));
      }
      const double self = 0.1 + 0.3 * u(rng);
      const double rest = 1.0 - self;
      std::fprintf(records,
                   "{\"seq\":%zu,\"pos\":%d,\"token\":\"t%lu\",\"self_prob\":%.6f,\"subs\":[[\"t%lu\",%.6f],[\"t%lu\",%.6f],"
                   "[\"t%lu\",%.6f]],\"mass_retained\":1.0}\n",
                   s, p, t[p], self, subs[0], rest * 0.45, subs[1], rest * 0.3, subs[2], rest * 0.2);
    }
  }
  std::fclose(corpus);
  std::fclose(records);
}

struct ScaleResult {
  bool ok = false;
  double ingest_s = 0.0;
  double load_s = 0.0;
  double aggregate_s = 0.0;
  std::uint64_t edges = 0;
  std::uint64_t context_size = 0;
  double peak_bytes = 0.0;
  std::string error;
};

// Runs `body` in a child process; returns its stdout text and peak RSS.
template <typename Body>
std::pair<std::string, double> in_child(Body body, int& status) {
  int fd[2];
  if (pipe(fd) != 0) return {"pipe failed", 0.0};
  std::fflush(nullptr);
  const pid_t pid = fork();
  if (pid == 0) {
    close(fd[0]);
    const std::string text = body();
    const ssize_t written = write(fd[1], text.data(), text.size());
    close(fd[1]);
    std::_Exit(written == static_cast<ssize_t>(text.size()) ? 0 : 4);
  }
  close(fd[1]);
  std::string text;
  char buf[4096];
  for (ssize_t n; (n = read(fd[0], buf, sizeof buf)) > 0;) text.append(buf, static_cast<std::size_t>(n));
  close(fd[0]);
  struct rusage usage {};
  wait4(pid, &status, 0, &usage);
  return {text, static_cast<double>(usage.ru_maxrss) * 1024.0};
}

ScaleResult scale(const fs::path& root, std::size_t sequences) {
  ScaleResult r;
  int status = 0;
  in_child(
      [&] {
        write_synthetic(root, sequences);
        return std::string("ok");
      },
      status);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    r.error = "generation failed";
    return r;
  }
  const auto [text, peak] = in_child(
      [&] {
        const std::string store = (root / "big.store").string();
        auto t0 = std::chrono::steady_clock::now();
        const Run ing = cli({"--store", store, "ingest", "--corpus", (root / "corpus.jsonl").string(), "--records",
                             (root / "records.jsonl").string(), "--mass", "1.0"});
        const double ingest_s = seconds_since(t0);
        if (ing.code != 0) return "error " + ing.err;
        // The file is no longer needed once ingested.
        fs::remove(root / "records.jsonl");
        t0 = std::chrono::steady_clock::now();
        const Store s = load_store(store);
        const double load_s = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const ContextSet c = resolve_context(s.corpus, ContextSpec::meta_range("year", 1995.0, 2004.0));
        const ConditionedGraph g = aggregate_substitution(s.graph, c);
        const double aggregate_s = seconds_since(t0);
        std::ostringstream o;
        o.precision(17);
        o << ingest_s << ' ' << load_s << ' ' << aggregate_s << ' ' << s.graph.edge_count() << ' ' << c.size() << ' '
          << g.edge_count();
        return o.str();
      },
      status);
  r.peak_bytes = peak;
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0 || text.rfind("error", 0) == 0) {
    r.error = text.empty() ? "ingest child failed" : text;
    return r;
  }
  std::istringstream in(text);
  std::uint64_t graph_edges = 0;
  in >> r.ingest_s >> r.load_s >> r.aggregate_s >> r.edges >> r.context_size >> graph_edges;
  r.ok = static_cast<bool>(in) && graph_edges > 0;
  if (!r.ok) r.error = "unreadable child report: " + text;
  return r;
}

}  // namespace

Outcome determinism_and_scale(std::size_t scale_sequences) {
  Tracker t;
  const fs::path root = fs::temp_directory_path() / ("substinet_acceptance_" + std::to_string(getpid()));
  fs::remove_all(root);
  fs::create_directories(root / "det");
  fs::create_directories(root / "scale");
  std::string detail;
  determinism(t, root / "det", detail);
  fs::remove_all(root / "det");

  const ScaleResult r = scale(root / "scale", scale_sequences);
  fs::remove_all(root);
  t.require("synthetic ingestion ran", r.ok);
  if (!r.ok) {
    detail += "; " + r.error;
    return {false, detail};
  }
  t.require("edge count", r.edges == 9 * static_cast<std::uint64_t>(scale_sequences));
  t.check("ingest seconds", std::max(0.0, r.ingest_s - kIngestSeconds), 0.0);
  t.check("aggregate seconds", std::max(0.0, r.aggregate_s - kAggregateSeconds), 0.0);
  t.check("peak memory", std::max(0.0, r.peak_bytes - kMemoryBytes), 0.0);
  detail += "; " + std::to_string(r.edges) + " edges ingested in " + num(r.ingest_s) + " s, peak " +
            num(r.peak_bytes / (1024.0 * 1024 * 1024)) + " GB, store load " + num(r.load_s) + " s, aggregate over " +
            std::to_string(r.context_size) + " sequences " + num(r.aggregate_s) + " s";
  Outcome o = t.outcome("");
  o.detail = (o.pass ? "" : o.detail + "; ") + detail;
  return o;
}

}  // namespace acceptance
