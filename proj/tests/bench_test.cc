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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "d4m/schema.h"
#include "testing/oracles.h"

namespace d4m {
namespace {

TEST(RmatTest, EdgeCountAndVertexRange) {
  RmatConfig tiny;
  tiny.scale = 1;
  tiny.edgefactor = 1;
  tiny.seed = 99;
  std::vector<RmatEdge> e = RmatGenerate(tiny);
  ASSERT_EQ(e.size(), 2u);
  for (const RmatEdge& x : e) {
    EXPECT_TRUE(x.start == "0" || x.start == "1");
    EXPECT_TRUE(x.end == "0" || x.end == "1");
  }
  RmatConfig def;
  EXPECT_EQ(def.edge_count(), 65536u);

  RmatConfig s8;
  s8.scale = 8;
  for (const RmatEdge& x : RmatGenerate(s8)) {
    EXPECT_LT(std::stoul(x.start), 256u);
    EXPECT_LT(std::stoul(x.end), 256u);
  }
}

TEST(RmatTest, DegenerateQuadrant) {
  RmatConfig cfg;
  cfg.scale = 5;
  cfg.a = 1;
  cfg.b = cfg.c = cfg.d = 0;
  for (const RmatEdge& x : RmatGenerate(cfg)) {
    EXPECT_EQ(x, (RmatEdge{"0", "0"}));
  }
}

TEST(RmatTest, DeterministicPerSeed) {
  RmatConfig cfg;
  cfg.scale = 8;
  cfg.seed = 42;
  EXPECT_EQ(RmatGenerate(cfg), RmatGenerate(cfg));
  RmatConfig other = cfg;
  other.seed = 43;
  EXPECT_NE(RmatGenerate(cfg), RmatGenerate(other));
}

TEST(RmatTest, ValidationRejectsBadConfigs) {
  RmatConfig cfg;
  cfg.scale = 0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
  cfg = RmatConfig();
  cfg.edgefactor = 0;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
  cfg = RmatConfig();
  cfg.d = 0.1;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
}

TEST(EdgesToRecordsTest, Mapping) {
  std::vector<RawRecord> r = EdgesToRecords({{"3", "7"}});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], (RawRecord{{"id", "0"}, {"out", "3"}, {"in", "7"}}));
  EXPECT_TRUE(EdgesToRecords({}).empty());
  EXPECT_EQ(*EdgesToRecords({{"1", "2"}}, 4)[0].Find("id"), "0000");
  RmatConfig cfg;
  EXPECT_EQ(EdgesToRecords(RmatGenerate(cfg)).size(), 65536u);
}

TEST(SplitKeysTest, LeadingDigitsAndEvenSpacing) {
  EXPECT_EQ(
      DecimalSplitKeys(9),
      (std::vector<std::string>{"1", "2", "3", "4", "5", "6", "7", "8", "9"}));
  EXPECT_TRUE(DecimalSplitKeys(0).empty());
  std::vector<std::string> k15 = DecimalSplitKeys(15);
  EXPECT_EQ(k15.size(), 15u);
  EXPECT_TRUE(std::is_sorted(k15.begin(), k15.end()));
  EXPECT_EQ(k15.front(), "06");
}

TEST(KeyModeTest, ParseAndName) {
  EXPECT_EQ(ParseKeyMode("flipped"), KeyMode::kFlipped);
  EXPECT_EQ(KeyModeName(ParseKeyMode("sequential")), "sequential");
  EXPECT_THROW(ParseKeyMode("random"), std::invalid_argument);
}

TEST(RunIngestBenchTest, ReportIsConsistentAndVerified) {
  BenchConfig cfg;
  cfg.rmat.scale = 8;
  cfg.ingestors = 3;
  cfg.batch_size = 100;
  cfg.presplits = 7;
  BenchReport r = RunIngestBench(cfg);
  ASSERT_TRUE(r.valid) << r.error;
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.edge_count, 4096u);
  EXPECT_EQ(r.total_entries, 2 * r.edge_count);
  ASSERT_FALSE(r.samples.empty());
  EXPECT_EQ(r.samples.back().cumulative_entries, r.total_entries);
  for (size_t i = 1; i < r.samples.size(); ++i) {
    EXPECT_GE(r.samples[i].cumulative_entries,
              r.samples[i - 1].cumulative_entries);
  }
  EXPECT_EQ(r.tablet_write_counts.size(), 8u);
  EXPECT_EQ(std::accumulate(r.tablet_write_counts.begin(),
                            r.tablet_write_counts.end(), uint64_t{0}),
            r.total_entries);

  std::ostringstream csv;
  WriteBenchCsv(csv, r);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "elapsed_s,cumulative_entries,inst_rate_eps");
}

TEST(RunIngestBenchTest, UnsplitSequentialUsesOneTablet) {
  BenchConfig cfg;
  cfg.rmat.scale = 6;
  cfg.key_mode = KeyMode::kSequential;
  cfg.presplits = 0;
  BenchReport r = RunIngestBench(cfg);
  ASSERT_TRUE(r.valid);
  EXPECT_EQ(r.tablet_write_counts, std::vector<size_t>{r.total_entries});
}

TEST(RunIngestBenchTest, DataIndependentOfWorkerCount) {
  BenchConfig one;
  one.rmat.scale = 6;
  one.ingestors = 1;
  BenchConfig four = one;
  four.ingestors = 4;
  Store s1, s4;
  QuadSchema q1 = InitSchema(s1, "T", true);
  QuadSchema q4 = InitSchema(s4, "T", true);
  ASSERT_TRUE(RunIngestBench(one, q1).valid);
  ASSERT_TRUE(RunIngestBench(four, q4).valid);
  for (auto [a, b] :
       {std::pair{q1.edge, q4.edge}, std::pair{q1.edge_t, q4.edge_t},
        std::pair{q1.degree, q4.degree}}) {
    EXPECT_EQ(a->Scan(RowSelection::All()).Collect(),
              b->Scan(RowSelection::All()).Collect());
  }
}

TEST(BurningCandleTest, EmptyIdSetIsAllZeros) {
  CandleConfig cfg;
  cfg.record_count = 0;
  CandleReport r = BurningCandleReport(cfg);
  EXPECT_EQ(r.sequential_writes, std::vector<size_t>(10, 0));
  EXPECT_EQ(r.flipped_writes, std::vector<size_t>(10, 0));
}

TEST(BurningCandleTest, MatchesRoutingOracle) {
  CandleConfig cfg;
  cfg.record_count = 5000;
  CandleReport r = BurningCandleReport(cfg);
  std::vector<std::string> seq, flip;
  for (uint64_t id = 1; id <= cfg.record_count; ++id) {
    seq.push_back(PaddedId(id, r.id_width));
    flip.push_back(FlipKey(seq.back()));
  }
  EXPECT_EQ(r.sequential_writes, testing::RouteCounts(r.splits, seq));
  EXPECT_EQ(r.flipped_writes, testing::RouteCounts(r.splits, flip));
}

}  // namespace
}  // namespace d4m
