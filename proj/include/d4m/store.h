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

#ifndef D4M_STORE_H_
#define D4M_STORE_H_

// An embedded sorted triple store modeled on Accumulo: named tables of
// (row, col, value) byte strings, partitioned into tablets at explicit split
// keys, written through batched mutations, with an optional insert-time
// combiner on one column.
//
// Concurrency: any number of writers and readers per table. Writes to one
// tablet are serialized; writes to different tablets proceed in parallel. A
// Scanner takes a consistent snapshot of each tablet when it first reaches
// that tablet, so scans started after ApplyMutation() returns observe the
// whole mutation.

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "d4m/triple.h"

namespace d4m {

enum class CombinerKind { kLastWins, kNumericSum };

struct CombinerSpec {
  std::string column;
  CombinerKind kind = CombinerKind::kLastWins;

  bool operator==(const CombinerSpec&) const = default;
};

/// Adds two decimal strings. Integer-formed operands add exactly and print
/// without a decimal point; anything else folds as doubles. Returns nullopt
/// when either operand is not a number.
std::optional<std::string> NumericSum(std::string_view stored,
                                      std::string_view incoming);

struct Mutation {
  std::string table;
  std::vector<Triple> entries;
};

struct AppliedStats {
  size_t entries_written = 0;
  size_t tablets_touched = 0;
};

struct TabletStat {
  // Tablet range is (range_lo, range_hi]; nullopt means unbounded.
  std::optional<std::string> range_lo;
  std::optional<std::string> range_hi;
  size_t entry_count = 0;
  size_t write_count = 0;
};

/// Which rows a scan visits.
class RowSelection {
 public:
  enum class Kind { kAll, kExact, kBetween, kPrefix };

  static RowSelection All() { return RowSelection(Kind::kAll, "", ""); }
  static RowSelection Exact(std::string key) {
    return RowSelection(Kind::kExact, key, key);
  }
  /// Inclusive on both ends. Raises RangeError when hi < lo.
  static RowSelection Between(std::string lo, std::string hi);
  static RowSelection Prefix(std::string prefix) {
    return RowSelection(Kind::kPrefix, std::move(prefix), "");
  }

  Kind kind() const { return kind_; }
  const std::string& lo() const { return lo_; }
  const std::string& hi() const { return hi_; }
  bool Matches(std::string_view row) const;

 private:
  RowSelection(Kind kind, std::string lo, std::string hi)
      : kind_(kind), lo_(std::move(lo)), hi_(std::move(hi)) {}

  Kind kind_;
  std::string lo_;
  std::string hi_;
};

namespace internal {

struct Tablet {
  using Cells = std::map<std::pair<std::string, std::string>, std::string>;

  mutable std::mutex mu;
  Cells cells;
  size_t writes = 0;
};

}  // namespace internal

/// Ordered cursor over one scan.
class Scanner {
 public:
  /// Fills `out` with the next triple; false once exhausted.
  bool Next(Triple& out);

  /// Drains the remaining triples.
  std::vector<Triple> Collect();

  size_t tablets_touched() const { return tablets_touched_; }
  size_t entries_scanned() const { return entries_scanned_; }

 private:
  friend class Table;
  Scanner(std::vector<std::shared_ptr<internal::Tablet>> tablets,
          RowSelection rows, std::string col_prefix)
      : tablets_(std::move(tablets)),
        rows_(std::move(rows)),
        col_prefix_(std::move(col_prefix)) {}

  void LoadNextTablet();

  std::vector<std::shared_ptr<internal::Tablet>> tablets_;
  RowSelection rows_;
  std::string col_prefix_;
  size_t next_tablet_ = 0;
  std::vector<Triple> buffer_;
  size_t pos_ = 0;
  size_t tablets_touched_ = 0;
  size_t entries_scanned_ = 0;
};

class Table {
 public:
  Table(std::string name, std::optional<CombinerSpec> combiner);
  Table(const Table&) = delete;
  Table& operator=(const Table&) = delete;

  const std::string& name() const { return name_; }
  const std::optional<CombinerSpec>& combiner() const { return combiner_; }

  std::vector<std::string> splits() const;
  size_t tablet_count() const;

  /// Adds split keys (any order; duplicates and existing splits are ignored)
  /// and moves existing entries to the tablet that now owns their row.
  void AddSplits(std::span<const std::string> keys);

  /// Entries whose row matches `rows` and whose column starts with
  /// `col_prefix`, in (row, col) order.
  Scanner Scan(const RowSelection& rows, std::string col_prefix = "") const;

  /// Point lookup of one cell.
  std::optional<std::string> Get(std::string_view row,
                                 std::string_view col) const;

  std::vector<TabletStat> TabletStats() const;
  size_t Nnz() const;

  /// Index of the tablet owning `row` given sorted split keys.
  static size_t RouteRow(std::span<const std::string> splits,
                         std::string_view row);

 private:
  friend class Store;

  // Caller has validated the entries.
  AppliedStats Apply(std::span<const Triple> entries);
  void Validate(std::span<const Triple> entries) const;
  // Restores persisted state into a freshly created table.
  void Load(std::vector<std::string> splits,
            std::vector<std::vector<Triple>> tablet_entries,
            std::vector<size_t> write_counts);

  std::string name_;
  std::optional<CombinerSpec> combiner_;
  // Guards the shape (splits_ and tablets_), not tablet contents.
  mutable std::shared_mutex shape_mu_;
  std::vector<std::string> splits_;
  std::vector<std::shared_ptr<internal::Tablet>> tablets_;
};

class Store {
 public:
  Store() = default;
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  /// Table names are identifiers: ASCII letters, digits, '_', '-' and '.'.
  Table& CreateTable(const std::string& name,
                     std::optional<CombinerSpec> combiner = std::nullopt);
  Table& GetTable(const std::string& name) const;
  Table* FindTable(const std::string& name) const;
  bool HasTable(const std::string& name) const;
  std::vector<std::string> TableNames() const;
  bool empty() const;

  /// Routes every entry to its tablet. The whole mutation is validated before
  /// anything is written, so a rejected mutation leaves no trace.
  AppliedStats ApplyMutation(const Mutation& m);

  /// Writes `<dir>/<table>/manifest` and `<dir>/<table>/tablet-<i>.tsv`
  /// (non-empty tablets only).
  void Snapshot(const std::filesystem::path& dir) const;

  /// Loads every table snapshot found under `dir` into this (empty) store.
  void Restore(const std::filesystem::path& dir);

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::unique_ptr<Table>, std::less<>> tables_;
};

}  // namespace d4m

#endif  // D4M_STORE_H_
