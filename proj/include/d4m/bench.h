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

#ifndef D4M_BENCH_H_
#define D4M_BENCH_H_

// Graph500-style ingest benchmarking: an RMAT edge generator, the mapping
// from edges to records, a multi-ingestor harness that samples ingest rate
// over time, and a demonstration of hot-tablet ("burning candle") routing.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "d4m/parse.h"
#include "d4m/schema.h"

namespace d4m {

struct RmatConfig {
  int scale = 12;       // 2^scale vertices
  int edgefactor = 16;  // edgefactor * 2^scale edges
  uint64_t seed = 1;
  // Graph500 reference quadrant probabilities.
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;

  /// Raises std::invalid_argument unless scale >= 1, edgefactor >= 1 and
  /// a + b + c + d = 1 within 1e-9.
  void Validate() const;
  uint64_t edge_count() const;
};

struct RmatEdge {
  std::string start;
  std::string end;

  bool operator==(const RmatEdge&) const = default;
};

/// Edge i is drawn from its own generator stream seeded by (seed, i), so the
/// output never depends on how edges are later partitioned.
std::vector<RmatEdge> RmatGenerate(const RmatConfig& cfg);

/// Record i is {id: i, out: start, in: end}; ids are zero-padded to
/// `id_width` digits when it is nonzero.
std::vector<RawRecord> EdgesToRecords(const std::vector<RmatEdge>& edges,
                                      size_t id_width = 0);

/// The record spec matching EdgesToRecords: row key "id", exploded "out"
/// and "in".
RecordSpec EdgeRecordSpec();

/// `count` distinct split keys spread evenly over the space of decimal digit
/// strings, e.g. 9 keys are "1".."9".
std::vector<std::string> DecimalSplitKeys(size_t count);

enum class KeyMode { kFlipped, kSequential };

KeyMode ParseKeyMode(std::string_view text);
std::string_view KeyModeName(KeyMode mode);

struct BenchConfig {
  size_t ingestors = 1;
  size_t batch_size = 1000;  // records per IngestBatch call
  size_t presplits = 0;
  RmatConfig rmat;
  KeyMode key_mode = KeyMode::kFlipped;
  double sample_interval_s = 0.1;
  bool verify = true;

  void Validate() const;
};

struct BenchSample {
  double elapsed_s = 0;
  uint64_t cumulative_entries = 0;
  double inst_rate_eps = 0;
};

struct BenchReport {
  std::vector<BenchSample> samples;
  std::vector<size_t> tablet_write_counts;  // edge table
  uint64_t edge_count = 0;
  uint64_t total_entries = 0;  // edge table entries written
  uint64_t degree_mutations = 0;
  double elapsed_s = 0;
  double mean_rate_eps = 0;
  bool valid = true;
  bool verified = false;  // VerifySchema ran and passed
  std::string error;
};

/// Ingests RMAT edges into a fresh schema with `cfg.ingestors` concurrent
/// workers; records are dealt round-robin and each worker calls IngestBatch
/// on `cfg.batch_size` records at a time.
BenchReport RunIngestBench(const BenchConfig& cfg);

/// Same as above into a caller-provided fresh schema.
BenchReport RunIngestBench(const BenchConfig& cfg, const QuadSchema& q);

/// CSV with header elapsed_s,cumulative_entries,inst_rate_eps.
void WriteBenchCsv(std::ostream& out, const BenchReport& report);

struct CandleConfig {
  size_t record_count = 100000;  // ids 1..record_count
  // Split keys shared by both key modes; empty means DecimalSplitKeys(9).
  std::vector<std::string> splits;
};

struct CandleReport {
  std::vector<std::string> splits;
  std::vector<size_t> sequential_writes;  // per tablet, in range order
  std::vector<size_t> flipped_writes;
  size_t id_width = 0;
};

/// Inserts ids 1..N once as zero-padded sequential keys and once flipped,
/// each into a table with the same splits, and reports per-tablet writes.
CandleReport BurningCandleReport(const CandleConfig& cfg);

/// Zero-padded decimal id.
std::string PaddedId(uint64_t id, size_t width);

}  // namespace d4m

#endif  // D4M_BENCH_H_
