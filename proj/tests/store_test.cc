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

#include "d4m/store.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <thread>

#include "d4m/error.h"
#include "testing/oracles.h"

namespace d4m {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("d4m_store_test_" + std::to_string(std::random_device()()));
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<Triple> ScanAll(const Table& t) {
  return t.Scan(RowSelection::All()).Collect();
}

TEST(NumericSumTest, IntegersAddExactly) {
  EXPECT_EQ(NumericSum("16", "1"), "17");
  EXPECT_EQ(NumericSum("-3", "3"), "0");
  EXPECT_EQ(NumericSum("9007199254740993", "1"), "9007199254740994");
}

TEST(NumericSumTest, NonIntegersFoldAsDoubles) {
  EXPECT_EQ(NumericSum("1.5", "1"), "2.5");
  EXPECT_EQ(NumericSum("1e2", "1"), "101");
  EXPECT_EQ(NumericSum("9223372036854775807", "1"), "9223372036854775808");
  EXPECT_FALSE(NumericSum("x", "1"));
  EXPECT_FALSE(NumericSum("1", ""));
}

TEST(StoreTest, CreateTableOnce) {
  Store s;
  Table& t = s.CreateTable("Tedge");
  EXPECT_EQ(t.tablet_count(), 1u);
  EXPECT_TRUE(ScanAll(t).empty());
  EXPECT_THROW(s.CreateTable("Tedge"), StoreError);
  EXPECT_THROW(s.CreateTable("bad name"), StoreError);
  EXPECT_THROW(s.GetTable("missing"), StoreError);
}

TEST(StoreTest, NumericSumAppliesToItsColumnOnly) {
  Store s;
  s.CreateTable("TedgeDeg", CombinerSpec{"Degree", CombinerKind::kNumericSum});
  s.ApplyMutation(
      {"TedgeDeg",
       {{"word|バスなう", "Degree", "16"}, {"word|バスなう", "note", "a"}}});
  s.ApplyMutation(
      {"TedgeDeg",
       {{"word|バスなう", "Degree", "1"}, {"word|バスなう", "note", "b"}}});
  const Table& t = s.GetTable("TedgeDeg");
  EXPECT_EQ(t.Get("word|バスなう", "Degree"), "17");
  EXPECT_EQ(t.Get("word|バスなう", "note"), "b");
}

TEST(StoreTest, NonNumericValueUnderCombinerIsRejected) {
  Store s;
  s.CreateTable("D", CombinerSpec{"Degree", CombinerKind::kNumericSum});
  try {
    s.ApplyMutation({"D", {{"k", "Degree", "1"}, {"k2", "Degree", "many"}}});
    FAIL() << "expected CombinerError";
  } catch (const CombinerError& e) {
    EXPECT_EQ(e.row(), "k2");
    EXPECT_EQ(e.col(), "Degree");
  }
  // Validation precedes application, so nothing was written.
  EXPECT_EQ(s.GetTable("D").Nnz(), 0u);
}

TEST(StoreTest, EmptyMutationWritesNothing) {
  Store s;
  s.CreateTable("T");
  AppliedStats st = s.ApplyMutation({"T", {}});
  EXPECT_EQ(st.entries_written, 0u);
  EXPECT_EQ(st.tablets_touched, 0u);
  EXPECT_THROW(s.ApplyMutation({"missing", {}}), StoreError);
  EXPECT_THROW(s.ApplyMutation({"T", {{"", "c", "1"}}}), StoreError);
}

TEST(StoreTest, MutationAcrossFourTablets) {
  Store s;
  Table& t = s.CreateTable("T");
  std::vector<std::string> splits = {"2", "5", "7"};
  t.AddSplits(splits);
  std::vector<Triple> entries;
  std::vector<std::string> rows;
  for (int i = 0; i < 10000; ++i) {
    std::string row = std::to_string(i);
    rows.push_back(row);
    entries.push_back({row, "c", "1"});
  }
  AppliedStats st = s.ApplyMutation({"T", entries});
  EXPECT_EQ(st.entries_written, 10000u);
  EXPECT_EQ(st.tablets_touched, 4u);
  std::vector<size_t> want = testing::RouteCounts(splits, rows);
  std::vector<TabletStat> stats = t.TabletStats();
  ASSERT_EQ(stats.size(), 4u);
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(stats[i].write_count, want[i]) << i;
    EXPECT_EQ(stats[i].entry_count, want[i]) << i;
  }
}

TEST(SplitTest, SingleSplitMakesTwoRanges) {
  Table t("T", std::nullopt);
  std::vector<std::string> m = {"m"};
  t.AddSplits(m);
  std::vector<TabletStat> stats = t.TabletStats();
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_FALSE(stats[0].range_lo);
  EXPECT_EQ(stats[0].range_hi, "m");
  EXPECT_EQ(stats[1].range_lo, "m");
  EXPECT_FALSE(stats[1].range_hi);
  EXPECT_EQ(Table::RouteRow(m, "m"), 0u);
  EXPECT_EQ(Table::RouteRow(m, "ma"), 1u);
}

TEST(SplitTest, SixteenSplitsAndDuplicatesIgnored) {
  Table t("T", std::nullopt);
  std::vector<std::string> keys;
  for (char c : std::string("0123456789abcdef")) keys.emplace_back(1, c);
  t.AddSplits(keys);
  EXPECT_EQ(t.tablet_count(), 17u);
  t.AddSplits(keys);
  EXPECT_EQ(t.tablet_count(), 17u);
  std::vector<std::string> empty_key = {""};
  EXPECT_THROW(t.AddSplits(empty_key), StoreError);
}

TEST(SplitTest, RedistributionAfterInsertsMatchesRecount) {
  Store s;
  Table& t = s.CreateTable("T");
  std::mt19937_64 rng(3);
  std::vector<Triple> entries;
  std::vector<std::string> rows;
  for (int i = 0; i < 1000; ++i) {
    std::string row = std::to_string(rng() % 1000000);
    entries.push_back({row, "c", "1"});
  }
  s.ApplyMutation({"T", entries});
  for (const Triple& e : ScanAll(t)) rows.push_back(e.row);
  std::vector<std::string> deciles;
  for (int d = 1; d <= 9; ++d) deciles.push_back(std::to_string(d));
  t.AddSplits(deciles);
  std::vector<size_t> want = testing::RouteCounts(deciles, rows);
  std::vector<TabletStat> stats = t.TabletStats();
  ASSERT_EQ(stats.size(), 10u);
  size_t writes = 0;
  for (size_t i = 0; i < stats.size(); ++i) {
    EXPECT_EQ(stats[i].entry_count, want[i]);
    // Leading digits 1-9 of uniform ids are near-uniform; tablet 0 holds
    // only rows sorting at or below "1".
    if (i > 0) {
      EXPECT_NEAR(static_cast<double>(want[i]), rows.size() / 9.0,
                  rows.size() / 9.0 * 0.5);
    }
    writes += stats[i].write_count;
  }
  EXPECT_EQ(writes, 1000u);
}

TEST(TabletStatsTest, FreshAndSkewed) {
  Store s;
  Table& t = s.CreateTable("T");
  ASSERT_EQ(t.TabletStats().size(), 1u);
  EXPECT_EQ(t.TabletStats()[0].write_count, 0u);
  std::vector<std::string> split = {"5"};
  t.AddSplits(split);
  std::vector<Triple> low;
  for (int i = 0; i < 100; ++i)
    low.push_back({"0" + std::to_string(i), "c", "1"});
  s.ApplyMutation({"T", low});
  EXPECT_EQ(t.TabletStats()[0].write_count, 100u);
  EXPECT_EQ(t.TabletStats()[1].write_count, 0u);
  std::vector<Triple> high;
  for (int i = 0; i < 50; ++i)
    high.push_back({"6" + std::to_string(i), "c", "1"});
  s.ApplyMutation({"T", high});
  EXPECT_EQ(t.TabletStats()[1].write_count, 50u);
}

TEST(ScanTest, RangePrefixAndColumnPrefix) {
  Store s;
  Table& t = s.CreateTable("T");
  std::vector<std::string> splits = {"b", "d"};
  t.AddSplits(splits);
  std::vector<Triple> entries = {{"a", "x|1", "1"},  {"b", "x|2", "1"},
                                 {"ba", "y|1", "1"}, {"c", "x|3", "1"},
                                 {"d", "y|2", "1"},  {"e", "x|4", "1"}};
  s.ApplyMutation({"T", entries});
  std::vector<Triple> range = t.Scan(RowSelection::Between("b", "c")).Collect();
  EXPECT_EQ(range, (std::vector<Triple>{entries[1], entries[2], entries[3]}));
  std::vector<Triple> prefix = t.Scan(RowSelection::Prefix("b")).Collect();
  EXPECT_EQ(prefix, (std::vector<Triple>{entries[1], entries[2]}));
  std::vector<Triple> cols = t.Scan(RowSelection::All(), "y|").Collect();
  EXPECT_EQ(cols, (std::vector<Triple>{entries[2], entries[4]}));
  Scanner exact = t.Scan(RowSelection::Exact("d"));
  EXPECT_EQ(exact.Collect(), std::vector<Triple>{entries[4]});
  EXPECT_EQ(exact.tablets_touched(), 1u);
  EXPECT_THROW(RowSelection::Between("c", "b"), RangeError);
}

TEST(ScanTest, EmptyTable) {
  Table t("T", std::nullopt);
  Triple out;
  EXPECT_FALSE(t.Scan(RowSelection::All()).Next(out));
}

TEST(ScanTest, SeesMutationsCompletedBeforeItStarted) {
  Store s;
  Table& t = s.CreateTable("T");
  std::vector<std::string> splits = {"3", "6"};
  t.AddSplits(splits);
  std::atomic<bool> done{false};
  std::thread writer([&] {
    for (int b = 0; b < 200; ++b) {
      std::vector<Triple> batch;
      for (int i = 0; i < 10; ++i) {
        batch.push_back({std::to_string(b * 10 + i), "c", "1"});
      }
      s.ApplyMutation({"T", batch});
    }
    done = true;
  });
  size_t last = 0;
  while (!done) {
    std::vector<Triple> seen = ScanAll(t);
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_GE(seen.size(), last);
    last = seen.size();
  }
  writer.join();
  EXPECT_EQ(ScanAll(t).size(), 2000u);
}

TEST(SnapshotTest, RoundTripIsByteIdentical) {
  TempDir dir;
  Store s;
  Table& t = s.CreateTable("Tedge");
  s.CreateTable("TedgeDeg", CombinerSpec{"Degree", CombinerKind::kNumericSum});
  std::vector<std::string> splits = {"3", "a,b", "tab\there"};
  t.AddSplits(splits);
  s.ApplyMutation({"Tedge",
                   {{"1", "c", "v"},
                    {"5", "line\nbreak", "back\\slash"},
                    {"z", "tab\tcol", "ü"}}});
  s.ApplyMutation({"TedgeDeg", {{"k", "Degree", "3"}}});
  s.Snapshot(dir.path());

  Store r;
  r.Restore(dir.path());
  EXPECT_EQ(r.TableNames(), s.TableNames());
  for (const std::string& name : s.TableNames()) {
    EXPECT_EQ(ScanAll(r.GetTable(name)), ScanAll(s.GetTable(name))) << name;
    EXPECT_EQ(r.GetTable(name).splits(), s.GetTable(name).splits());
    EXPECT_EQ(r.GetTable(name).combiner(), s.GetTable(name).combiner());
  }
  std::vector<size_t> a, b;
  for (const auto& st : t.TabletStats()) a.push_back(st.write_count);
  for (const auto& st : r.GetTable("Tedge").TabletStats()) {
    b.push_back(st.write_count);
  }
  EXPECT_EQ(a, b);
  // The combiner survives the round trip.
  r.ApplyMutation({"TedgeDeg", {{"k", "Degree", "1"}}});
  EXPECT_EQ(r.GetTable("TedgeDeg").Get("k", "Degree"), "4");
}

TEST(SnapshotTest, EmptyTableWritesManifestOnly) {
  TempDir dir;
  Store s;
  s.CreateTable("T");
  s.Snapshot(dir.path());
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir.path() / "T")) {
    files.push_back(e.path().filename().string());
  }
  EXPECT_EQ(files, std::vector<std::string>{"manifest"});
}

TEST(SnapshotTest, RestoreRequiresEmptyStoreAndExistingDir) {
  TempDir dir;
  Store s;
  s.CreateTable("T");
  s.Snapshot(dir.path());
  EXPECT_THROW(s.Restore(dir.path()), StoreError);
  Store fresh;
  try {
    fresh.Restore(dir.path() / "nope");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("nope"), std::string::npos);
  }
}

}  // namespace
}  // namespace d4m
