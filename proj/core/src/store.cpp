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

#include "substinet/store.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "substinet/error.hpp"
#include "substinet/parallel.hpp"
#include "substinet/text_format.hpp"

namespace substinet {

namespace {

constexpr std::array<char, 8> kMagic{'S', 'N', 'S', 'T', 'O', 'R', 'E', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kFlagKeepSelf = 1u << 0;
constexpr std::uint32_t kFlagBeforeRemoval = 1u << 1;
constexpr std::uint64_t kEdgeSegment = std::uint64_t{1} << 22;
constexpr std::size_t kParseBatch = 1 << 16;
constexpr std::size_t kParseBlock = 1024;

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

class Writer {
 public:
  explicit Writer(std::string& buf) : buf_(buf) {}

  template <typename T>
  void put(T v) {
    v = to_little(v);
    const auto* p = reinterpret_cast<const char*>(&v);
    buf_.append(p, sizeof(T));
  }
  void put_string(const std::string& s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }

 private:
  std::string& buf_;
};

class Reader {
 public:
  Reader(const char* data, std::size_t size) : p_(data), end_(data + size) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, p_, sizeof(T));
    p_ += sizeof(T);
    return to_little(v);
  }
  std::string get_string() {
    const auto n = get<std::uint32_t>();
    need(n);
    std::string s(p_, n);
    p_ += n;
    return s;
  }
  template <typename T>
  void get_array(std::vector<T>& out, std::uint64_t n) {
    need(n * sizeof(T));
    const auto base = out.size();
    out.resize(base + n);
    for (std::uint64_t i = 0; i < n; ++i) out[base + i] = get<T>();
  }
  bool done() const { return p_ == end_; }

 private:
  void need(std::uint64_t n) const {
    if (static_cast<std::uint64_t>(end_ - p_) < n) fail("store file is truncated");
  }
  const char* p_;
  const char* end_;
};

void write_section(std::ostream& out, const char (&tag)[5], const std::string& payload) {
  out.write(tag, 4);
  const auto len = to_little<std::uint64_t>(payload.size());
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

enum MetaTag : std::uint8_t { kInt = 0, kDouble = 1, kBool = 2, kString = 3 };

std::string vocab_payload(const Vocabulary& vocab) {
  std::string buf;
  Writer w(buf);
  std::vector<std::string> stop(vocab.stopwords().begin(), vocab.stopwords().end());
  std::sort(stop.begin(), stop.end());
  w.put<std::uint64_t>(stop.size());
  for (const auto& s : stop) w.put_string(s);
  w.put<std::uint64_t>(vocab.size());
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    w.put<std::uint8_t>(vocab.is_stopword(TokenId{i}) ? 1 : 0);
    w.put_string(vocab.surface(TokenId{i}));
  }
  return buf;
}

std::string corpus_payload(const Corpus& corpus) {
  std::string buf;
  Writer w(buf);
  w.put<std::uint64_t>(corpus.size());
  for (const auto& s : corpus.sequences()) {
    w.put<std::int64_t>(s.seq.value);
    w.put_string(s.doc);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(s.tokens.size()));
    for (TokenId t : s.tokens) w.put<std::uint32_t>(t.value);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(s.meta.size()));
    for (const auto& [key, value] : s.meta) {
      w.put_string(key);
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::int64_t>) {
              w.put<std::uint8_t>(kInt);
              w.put<std::int64_t>(v);
            } else if constexpr (std::is_same_v<T, double>) {
              w.put<std::uint8_t>(kDouble);
              w.put<double>(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              w.put<std::uint8_t>(kBool);
              w.put<std::uint8_t>(v ? 1 : 0);
            } else {
              w.put<std::uint8_t>(kString);
              w.put_string(v);
            }
          },
          value);
    }
  }
  return buf;
}

std::string occurrence_payload(const Multigraph::Columns& c) {
  std::string buf;
  Writer w(buf);
  const auto n = c.occ_seq.size();
  w.put<std::uint64_t>(n);
  for (auto s : c.occ_seq) w.put<std::int64_t>(s.value);
  for (auto p : c.occ_pos) w.put<std::uint32_t>(p);
  for (auto t : c.occ_tau) w.put<std::uint32_t>(t.value);
  for (auto v : c.occ_self) w.put<double>(v);
  for (auto v : c.occ_kept) w.put<double>(v);
  for (auto v : c.edge_offset) w.put<std::uint64_t>(v);
  return buf;
}

std::string edge_payload(const Multigraph::Columns& c, std::size_t begin, std::size_t end) {
  std::string buf;
  Writer w(buf);
  w.put<std::uint64_t>(end - begin);
  for (std::size_t i = begin; i < end; ++i) w.put<std::uint32_t>(c.edge_mu[i].value);
  for (std::size_t i = begin; i < end; ++i) w.put<double>(c.edge_weight[i]);
  return buf;
}

}  // namespace

IngestStats ingest_records(Store& store, std::istream& records) {
  IngestStats stats;
  const IngestOptions options = store.settings.ingest_options();
  MultigraphBuilder builder(store.graph);
  std::vector<std::string> lines;
  std::vector<std::size_t> numbers;
  std::vector<DistributionRecord> parsed;
  std::size_t line_no = 0;

  auto flush = [&] {
    parsed.assign(lines.size(), {});
    // Parsing is pure; any parse error is reported for the earliest line.
    std::vector<std::string> errors(parallel::block_count(lines.size(), kParseBlock));
    std::vector<std::size_t> error_line(errors.size(), 0);
    parallel::for_each_block(lines.size(), kParseBlock, [&](std::size_t blk, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        try {
          parsed[i] = parse_record_line(lines[i]);
        } catch (const Error& err) {
          errors[blk] = err.what();
          error_line[blk] = numbers[i];
          return;
        }
      }
    });
    for (std::size_t blk = 0; blk < errors.size(); ++blk) {
      if (!errors[blk].empty()) fail("records line " + std::to_string(error_line[blk]) + ": " + errors[blk]);
    }
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      try {
        builder.insert(validate_record(parsed[i], store.corpus, options, stats));
      } catch (const Error& err) {
        fail("records line " + std::to_string(numbers[i]) + ": " + err.what());
      }
    }
    lines.clear();
    numbers.clear();
  };

  std::string line;
  while (std::getline(records, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(std::move(line));
    numbers.push_back(line_no);
    if (lines.size() == kParseBatch) flush();
  }
  flush();
  store.graph = std::move(builder).build();
  return stats;
}

Multigraph graph_at_mass(const Store& store, double mass) {
  if (mass > store.settings.mass_threshold + 1e-12) {
    fail("store was ingested at mass " + format_double(store.settings.mass_threshold) +
         "; cannot rebuild at " + format_double(mass));
  }
  if (store.settings.cutoff_order == CutoffOrder::BeforeSelfRemoval) {
    fail("re-truncation needs a store ingested with the cutoff after truth removal");
  }
  if (mass == store.settings.mass_threshold) return store.graph;
  return store.graph.truncated(mass);
}

void write_store(std::ostream& out, const Store& store) {
  out.write(kMagic.data(), kMagic.size());
  std::string header;
  Writer w(header);
  std::uint32_t flags = 0;
  if (store.settings.keep_self) flags |= kFlagKeepSelf;
  if (store.settings.cutoff_order == CutoffOrder::BeforeSelfRemoval) flags |= kFlagBeforeRemoval;
  w.put<std::uint32_t>(kVersion);
  w.put<std::uint32_t>(flags);
  w.put<double>(store.settings.mass_threshold);
  w.put<double>(store.settings.min_edge_weight);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));

  write_section(out, "VOCB", vocab_payload(store.corpus.vocabulary()));
  write_section(out, "CRPS", corpus_payload(store.corpus));
  const auto cols = store.graph.columns();
  write_section(out, "OCCS", occurrence_payload(cols));
  for (std::size_t b = 0; b < cols.edge_mu.size(); b += kEdgeSegment) {
    write_section(out, "EDGS", edge_payload(cols, b, std::min<std::size_t>(cols.edge_mu.size(), b + kEdgeSegment)));
  }
  write_section(out, "END ", {});
  if (!out) fail("failed writing store");
}

Store read_store(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < kMagic.size() || std::memcmp(data.data(), kMagic.data(), kMagic.size()) != 0) {
    fail("not a store file (bad magic)");
  }
  Reader r(data.data() + kMagic.size(), data.size() - kMagic.size());
  const auto version = r.get<std::uint32_t>();
  if (version != kVersion) fail("unsupported store version " + std::to_string(version));
  const auto flags = r.get<std::uint32_t>();
  Store store;
  store.settings.keep_self = flags & kFlagKeepSelf;
  store.settings.cutoff_order =
      (flags & kFlagBeforeRemoval) ? CutoffOrder::BeforeSelfRemoval : CutoffOrder::AfterSelfRemoval;
  store.settings.mass_threshold = r.get<double>();
  store.settings.min_edge_weight = r.get<double>();

  std::optional<Vocabulary> vocab;
  std::optional<Corpus> corpus;
  Multigraph::Columns cols;
  bool have_occ = false;
  bool ended = false;
  while (!ended) {
    char tag[4];
    for (char& c : tag) c = static_cast<char>(r.get<std::uint8_t>());
    const auto len = r.get<std::uint64_t>();
    const std::string name(tag, 4);
    if (name == "END ") {
      ended = true;
    } else if (name == "VOCB") {
      std::unordered_set<std::string> stop;
      const auto ns = r.get<std::uint64_t>();
      for (std::uint64_t i = 0; i < ns; ++i) stop.insert(r.get_string());
      const auto n = r.get<std::uint64_t>();
      std::vector<std::string> surfaces;
      std::vector<bool> flags_stop;
      surfaces.reserve(n);
      flags_stop.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i) {
        flags_stop.push_back(r.get<std::uint8_t>() != 0);
        surfaces.push_back(r.get_string());
      }
      vocab = Vocabulary::from_entries(std::move(surfaces), std::move(flags_stop), std::move(stop));
    } else if (name == "CRPS") {
      if (!vocab) fail("store corpus section precedes vocabulary");
      CorpusBuilder builder(std::move(*vocab));
      vocab.reset();
      const auto n = r.get<std::uint64_t>();
      for (std::uint64_t i = 0; i < n; ++i) {
        SequenceRecord s;
        s.seq = SeqId{r.get<std::int64_t>()};
        s.doc = r.get_string();
        const auto nt = r.get<std::uint32_t>();
        s.tokens.reserve(nt);
        for (std::uint32_t k = 0; k < nt; ++k) s.tokens.push_back(TokenId{r.get<std::uint32_t>()});
        const auto nm = r.get<std::uint32_t>();
        for (std::uint32_t k = 0; k < nm; ++k) {
          std::string key = r.get_string();
          switch (r.get<std::uint8_t>()) {
            case kInt: s.meta.emplace_back(std::move(key), r.get<std::int64_t>()); break;
            case kDouble: s.meta.emplace_back(std::move(key), r.get<double>()); break;
            case kBool: s.meta.emplace_back(std::move(key), r.get<std::uint8_t>() != 0); break;
            case kString: s.meta.emplace_back(std::move(key), r.get_string()); break;
            default: fail("store has an unknown meta type");
          }
        }
        builder.add_interned(std::move(s));
      }
      corpus = std::move(builder).build();
    } else if (name == "OCCS") {
      const auto n = r.get<std::uint64_t>();
      std::vector<std::int64_t> seqs;
      std::vector<std::uint32_t> taus;
      r.get_array(seqs, n);
      r.get_array(cols.occ_pos, n);
      r.get_array(taus, n);
      r.get_array(cols.occ_self, n);
      r.get_array(cols.occ_kept, n);
      r.get_array(cols.edge_offset, n + 1);
      cols.occ_seq.reserve(n);
      for (auto s : seqs) cols.occ_seq.push_back(SeqId{s});
      cols.occ_tau.reserve(n);
      for (auto t : taus) cols.occ_tau.push_back(TokenId{t});
      have_occ = true;
    } else if (name == "EDGS") {
      const auto m = r.get<std::uint64_t>();
      std::vector<std::uint32_t> mus;
      r.get_array(mus, m);
      r.get_array(cols.edge_weight, m);
      cols.edge_mu.reserve(cols.edge_mu.size() + m);
      for (auto t : mus) cols.edge_mu.push_back(TokenId{t});
    } else {
      fail("store has an unknown section '" + name + "' of " + std::to_string(len) + " bytes");
    }
  }
  if (!r.done()) fail("store has trailing bytes");
  if (!corpus) fail("store lacks a corpus section");
  if (!have_occ) cols.edge_offset = {0};
  for (TokenId t : cols.occ_tau) {
    if (t.value >= corpus->vocabulary().size()) fail("store references an unknown token id");
  }
  for (TokenId t : cols.edge_mu) {
    if (t.value >= corpus->vocabulary().size()) fail("store references an unknown token id");
  }
  store.corpus = std::move(*corpus);
  store.graph = Multigraph::from_columns(std::move(cols));
  return store;
}

void save_store(const std::filesystem::path& path, const Store& store) {
  write_file_atomically(path, [&](std::ostream& out) { write_store(out, store); });
}

Store load_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open store: " + path.string());
  try {
    return read_store(in);
  } catch (const Error& e) {
    fail(path.string() + ": " + e.what());
  }
}

}  // namespace substinet
