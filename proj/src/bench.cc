// Copyright 2026 The D4M Schema Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "d4m/bench.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "d4m/error.h"
#include "d4m/store.h"

namespace d4m {
namespace {

using Clock = std::chrono::steady_clock;

size_t DecimalDigits(uint64_t n) {
  size_t digits = 1;
  while (n >= 10) {
    n /= 10;
    ++digits;
  }
  return digits;
}

double Seconds(Clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

// Split keys for the transpose and degree tables, whose rows are the
// `in|<vertex>` and `out|<vertex>` column keys.
std::vector<std::string> ColumnSplitKeys(size_t count) {
  std::vector<std::string> keys;
  if (count == 0) return keys;
  size_t in_keys = count / 2;
  for (const std::string& k : DecimalSplitKeys(in_keys)) {
    keys.push_back(MakePair("in", k));
  }
  keys.push_back(MakePair("out", ""));
  for (const std::string& k : DecimalSplitKeys(count - in_keys - 1)) {
    keys.push_back(MakePair("out", k));
  }
  return keys;
}

}  // namespace

void RmatConfig::Validate() const {
  if (scale < 1 || scale > 40) {
    throw std::invalid_argument("rmat scale must be in [1, 40]");
  }
  if (edgefactor < 1) {
    throw std::invalid_argument("rmat edgefactor must be >= 1");
  }
  for (double p : {a, b, c, d}) {
    if (p < 0 || p > 1) {
      throw std::invalid_argument("rmat probabilities must lie in [0, 1]");
    }
  }
  if (std::abs(a + b + c + d - 1.0) > 1e-9) {
    throw std::invalid_argument("rmat probabilities must sum to 1");
  }
}

uint64_t RmatConfig::edge_count() const {
  return static_cast<uint64_t>(edgefactor) << scale;
}

std::vector<RmatEdge> RmatGenerate(const RmatConfig& cfg) {
  cfg.Validate();
  const uint64_t n = cfg.edge_count();
  const double ab = cfg.a + cfg.b;
  const double abc = ab + cfg.c;
  std::vector<RmatEdge> edges;
  edges.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    std::seed_seq seq{static_cast<uint32_t>(cfg.seed),
                      static_cast<uint32_t>(cfg.seed >> 32),
                      static_cast<uint32_t>(i), static_cast<uint32_t>(i >> 32)};
    std::mt19937_64 gen(seq);
    uint64_t src = 0;
    uint64_t dst = 0;
    for (int level = 0; level < cfg.scale; ++level) {
      // 53 random bits into [0, 1); engine output is portable, distributions
      // are not.
      double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      uint64_t row_bit = 0;
      uint64_t col_bit = 0;
      if (u < cfg.a) {
      } else if (u < ab) {
        col_bit = 1;
      } else if (u < abc) {
        row_bit = 1;
      } else {
        row_bit = 1;
        col_bit = 1;
      }
      src = (src << 1) | row_bit;
      dst = (dst << 1) | col_bit;
    }
    edges.push_back({std::to_string(src), std::to_string(dst)});
  }
  return edges;
}

std::string PaddedId(uint64_t id, size_t width) {
  std::string s = std::to_string(id);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

std::vector<RawRecord> EdgesToRecords(const std::vector<RmatEdge>& edges,
                                      size_t id_width) {
  std::vector<RawRecord> records;
  records.reserve(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    records.push_back({{"id", PaddedId(i, id_width)},
                       {"out", edges[i].start},
                       {"in", edges[i].end}});
  }
  return records;
}

RecordSpec EdgeRecordSpec() {
  RecordSpec spec;
  spec.row_key_field = "id";
  spec.explode_fields = {"out", "in"};
  return spec;
}

std::vector<std::string> DecimalSplitKeys(size_t count) {
  std::vector<std::string> keys;
  if (count == 0) return keys;
  // Width L with 10^L >= count + 1 keeps the keys distinct.
  size_t width = 1;
  uint64_t space = 10;
  while (space < count + 1) {
    space *= 10;
    ++width;
  }
  for (size_t i = 1; i <= count; ++i) {
    keys.push_back(PaddedId(i * space / (count + 1), width));
  }
  return keys;
}

KeyMode ParseKeyMode(std::string_view text) {
  if (text == "flipped") return KeyMode::kFlipped;
  if (text == "sequential") return KeyMode::kSequential;
  throw std::invalid_argument("key mode must be flipped or sequential");
}

std::string_view KeyModeName(KeyMode mode) {
  return mode == KeyMode::kFlipped ? "flipped" : "sequential";
}

void BenchConfig::Validate() const {
  if (ingestors < 1) throw std::invalid_argument("ingestors must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (!(sample_interval_s > 0)) {
    throw std::invalid_argument("sample interval must be positive");
  }
  rmat.Validate();
}

BenchReport RunIngestBench(const BenchConfig& cfg) {
  cfg.Validate();
  Store store;
  SchemaSplits splits;
  splits.edge = DecimalSplitKeys(cfg.presplits);
  splits.raw_text = splits.edge;
  splits.edge_t = ColumnSplitKeys(cfg.presplits);
  splits.degree = splits.edge_t;
  QuadSchema q =
      InitSchema(store, "T", cfg.key_mode == KeyMode::kFlipped, splits);
  return RunIngestBench(cfg, q);
}

BenchReport RunIngestBench(const BenchConfig& cfg, const QuadSchema& q) {
  cfg.Validate();
  BenchReport report;
  std::vector<RmatEdge> edges = RmatGenerate(cfg.rmat);
  report.edge_count = edges.size();
  // Fixed-width ids make byte order match arrival order for sequential keys.
  std::vector<RawRecord> records = EdgesToRecords(
      edges, DecimalDigits(edges.empty() ? 0 : edges.size() - 1));
  edges.clear();
  edges.shrink_to_fit();
  const RecordSpec spec = EdgeRecordSpec();
  const bool flip = q.flip_row_keys;

  std::atomic<uint64_t> cumulative{0};
  std::atomic<uint64_t> degree_mutations{0};
  std::atomic<size_t> finished{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;

  auto worker = [&](size_t w) {
    try {
      std::vector<ExplodedRecord> batch;
      batch.reserve(cfg.batch_size);
      for (size_t i = w; i < records.size() && !failed.load();
           i += cfg.ingestors) {
        batch.push_back(Explode(records[i], spec, flip));
        bool last = i + cfg.ingestors >= records.size();
        if (batch.size() == cfg.batch_size || last) {
          IngestStats s = IngestBatch(q, batch);
          cumulative.fetch_add(s.edge_entries);
          degree_mutations.fetch_add(s.degree_mutations);
          batch.clear();
        }
      }
    } catch (const std::exception& e) {
      std::lock_guard lock(error_mu);
      if (!failed.exchange(true)) report.error = e.what();
    }
    finished.fetch_add(1);
  };

  const auto start = Clock::now();
  std::vector<std::thread> threads;
  threads.reserve(cfg.ingestors);
  for (size_t w = 0; w < cfg.ingestors; ++w) threads.emplace_back(worker, w);

  const auto interval = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(cfg.sample_interval_s));
  BenchSample prev;
  auto take_sample = [&] {
    BenchSample s;
    s.elapsed_s = Seconds(Clock::now() - start);
    s.cumulative_entries = cumulative.load();
    double dt = s.elapsed_s - prev.elapsed_s;
    s.inst_rate_eps =
        dt > 0 ? (s.cumulative_entries - prev.cumulative_entries) / dt : 0.0;
    report.samples.push_back(s);
    prev = s;
  };
  auto next_tick = start + interval;
  while (finished.load() < cfg.ingestors) {
    auto now = Clock::now();
    if (now >= next_tick) {
      take_sample();
      next_tick += interval;
    } else {
      std::this_thread::sleep_for(std::min<Clock::duration>(
          next_tick - now, std::chrono::milliseconds(5)));
    }
  }
  for (std::thread& t : threads) t.join();
  take_sample();

  report.elapsed_s = report.samples.back().elapsed_s;
  report.total_entries = cumulative.load();
  report.degree_mutations = degree_mutations.load();
  report.mean_rate_eps =
      report.elapsed_s > 0 ? report.total_entries / report.elapsed_s : 0.0;
  for (const TabletStat& s : q.edge->TabletStats()) {
    report.tablet_write_counts.push_back(s.write_count);
  }
  if (failed.load()) {
    report.valid = false;
    return report;
  }
  if (cfg.verify) {
    SchemaReport audit = VerifySchema(q);
    report.verified = audit.ok();
    if (!audit.ok()) {
      report.valid = false;
      report.error = "schema audit found " +
                     std::to_string(audit.violations.size()) + " violations";
    }
  }
  return report;
}

void WriteBenchCsv(std::ostream& out, const BenchReport& report) {
  out << "elapsed_s,cumulative_entries,inst_rate_eps\n";
  for (const BenchSample& s : report.samples) {
    out << s.elapsed_s << ',' << s.cumulative_entries << ',' << s.inst_rate_eps
        << '\n';
  }
}

CandleReport BurningCandleReport(const CandleConfig& cfg) {
  CandleReport report;
  report.splits = cfg.splits.empty() ? DecimalSplitKeys(9) : cfg.splits;
  report.id_width = DecimalDigits(cfg.record_count);
  constexpr size_t kBatch = 10000;

  for (KeyMode mode : {KeyMode::kSequential, KeyMode::kFlipped}) {
    Store store;
    store.CreateTable("candle").AddSplits(report.splits);
    Mutation m{"candle", {}};
    for (uint64_t id = 1; id <= cfg.record_count; ++id) {
      std::string key = PaddedId(id, report.id_width);
      if (mode == KeyMode::kFlipped) key = FlipKey(key);
      m.entries.push_back({std::move(key), "x", "1"});
      if (m.entries.size() == kBatch || id == cfg.record_count) {
        store.ApplyMutation(m);
        m.entries.clear();
      }
    }
    std::vector<size_t>& writes = mode == KeyMode::kSequential
                                      ? report.sequential_writes
                                      : report.flipped_writes;
    for (const TabletStat& s : store.GetTable("candle").TabletStats()) {
      writes.push_back(s.write_count);
    }
  }
  return report;
}

}  // namespace d4m
