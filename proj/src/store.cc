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

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>

#include "d4m/assoc.h"
#include "d4m/error.h"
#include "d4m/triple_file.h"

namespace d4m {
namespace {

std::optional<int64_t> ParseInteger(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

bool IsIdentifier(std::string_view name) {
  if (name.empty() || name == "." || name == "..") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
  });
}

const char* CombinerName(const std::optional<CombinerSpec>& spec) {
  if (!spec) return "none";
  return spec->kind == CombinerKind::kNumericSum ? "numericSum" : "lastWins";
}

std::string JoinList(const std::vector<std::string>& items) {
  return JoinEscaped(items, ',');
}

std::vector<std::string> SplitList(std::string_view text) {
  if (text.empty()) return {};
  return SplitEscaped(text, ',');
}

std::map<std::string, std::string> ReadManifest(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open manifest");
  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError(path, "malformed manifest line '" + line + "'");
    }
    std::string key = line.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    std::string value = line.substr(eq + 1);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);
    fields[key] = value;
  }
  return fields;
}

}  // namespace

std::optional<std::string> NumericSum(std::string_view stored,
                                      std::string_view incoming) {
  auto a = ParseInteger(stored);
  auto b = ParseInteger(incoming);
  if (a && b) {
    int64_t sum = 0;
    if (!__builtin_add_overflow(*a, *b, &sum)) return std::to_string(sum);
  }
  auto x = ParseNumber(stored);
  auto y = ParseNumber(incoming);
  if (!x || !y) return std::nullopt;
  return FormatNumber(*x + *y);
}

RowSelection RowSelection::Between(std::string lo, std::string hi) {
  if (hi < lo) {
    throw RangeError("row range lower bound '" + lo +
                     "' exceeds upper bound '" + hi + "'");
  }
  return RowSelection(Kind::kBetween, std::move(lo), std::move(hi));
}

bool RowSelection::Matches(std::string_view row) const {
  switch (kind_) {
    case Kind::kAll:
      return true;
    case Kind::kExact:
      return row == lo_;
    case Kind::kBetween:
      return lo_ <= row && row <= hi_;
    case Kind::kPrefix:
      return row.starts_with(lo_);
  }
  return false;
}

bool Scanner::Next(Triple& out) {
  while (pos_ >= buffer_.size()) {
    if (next_tablet_ >= tablets_.size()) return false;
    LoadNextTablet();
  }
  out = std::move(buffer_[pos_++]);
  return true;
}

std::vector<Triple> Scanner::Collect() {
  std::vector<Triple> out;
  Triple t;
  while (Next(t)) out.push_back(std::move(t));
  return out;
}

void Scanner::LoadNextTablet() {
  buffer_.clear();
  pos_ = 0;
  const internal::Tablet& tablet = *tablets_[next_tablet_++];
  ++tablets_touched_;
  std::lock_guard lock(tablet.mu);
  auto it = tablet.cells.begin();
  if (rows_.kind() != RowSelection::Kind::kAll) {
    std::string seek_col =
        rows_.kind() == RowSelection::Kind::kExact ? col_prefix_ : "";
    it = tablet.cells.lower_bound({rows_.lo(), seek_col});
  }
  for (; it != tablet.cells.end(); ++it) {
    const auto& [row, col] = it->first;
    if (!rows_.Matches(row)) {
      if (rows_.kind() == RowSelection::Kind::kAll) continue;
      break;
    }
    if (!col.starts_with(col_prefix_)) {
      if (rows_.kind() == RowSelection::Kind::kExact) break;
      continue;
    }
    buffer_.push_back(Triple{row, col, it->second});
  }
  entries_scanned_ += buffer_.size();
}

Table::Table(std::string name, std::optional<CombinerSpec> combiner)
    : name_(std::move(name)), combiner_(std::move(combiner)) {
  tablets_.push_back(std::make_shared<internal::Tablet>());
}

size_t Table::RouteRow(std::span<const std::string> splits,
                       std::string_view row) {
  // Tablet i owns (splits[i - 1], splits[i]].
  auto it = std::lower_bound(
      splits.begin(), splits.end(), row,
      [](const std::string& split, std::string_view r) { return split < r; });
  return static_cast<size_t>(it - splits.begin());
}

std::vector<std::string> Table::splits() const {
  std::shared_lock lock(shape_mu_);
  return splits_;
}

size_t Table::tablet_count() const {
  std::shared_lock lock(shape_mu_);
  return tablets_.size();
}

void Table::AddSplits(std::span<const std::string> keys) {
  std::vector<std::string> added(keys.begin(), keys.end());
  for (const std::string& k : added) {
    if (k.empty()) {
      throw StoreError("empty split key for table " + name_);
    }
  }
  std::unique_lock lock(shape_mu_);
  std::vector<std::string> merged = splits_;
  merged.insert(merged.end(), added.begin(), added.end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  if (merged.size() == splits_.size()) return;

  std::vector<std::shared_ptr<internal::Tablet>> next(merged.size() + 1);
  for (auto& t : next) t = std::make_shared<internal::Tablet>();

  // Old tablets are copied, not moved, so scanners that captured them keep a
  // consistent view.
  for (size_t i = 0; i < tablets_.size(); ++i) {
    const internal::Tablet& old = *tablets_[i];
    std::lock_guard old_lock(old.mu);
    size_t first_child = i == 0 ? 0 : RouteRow(merged, splits_[i - 1]) + 1;
    for (const auto& [key, value] : old.cells) {
      internal::Tablet& child = *next[RouteRow(merged, key.first)];
      child.cells.emplace_hint(child.cells.end(), key, value);
      ++child.writes;
    }
    // Overwrites and combiner folds are charged to the lowest child so the
    // total write count is preserved.
    next[first_child]->writes += old.writes - old.cells.size();
  }
  splits_ = std::move(merged);
  tablets_ = std::move(next);
}

void Table::Validate(std::span<const Triple> entries) const {
  for (const Triple& t : entries) {
    if (t.row.empty() || t.col.empty()) {
      throw StoreError("empty row or column key in mutation for table " +
                       name_);
    }
    if (combiner_ && combiner_->kind == CombinerKind::kNumericSum &&
        t.col == combiner_->column && !ParseNumber(t.value)) {
      throw CombinerError(t.row, t.col,
                          "non-numeric value '" + t.value +
                              "' for numericSum combiner in table " + name_);
    }
  }
}

AppliedStats Table::Apply(std::span<const Triple> entries) {
  AppliedStats stats;
  if (entries.empty()) return stats;
  std::shared_lock shape(shape_mu_);
  std::vector<std::vector<const Triple*>> routed(tablets_.size());
  for (const Triple& t : entries) {
    routed[RouteRow(splits_, t.row)].push_back(&t);
  }
  for (size_t i = 0; i < routed.size(); ++i) {
    if (routed[i].empty()) continue;
    ++stats.tablets_touched;
    internal::Tablet& tablet = *tablets_[i];
    std::lock_guard lock(tablet.mu);
    for (const Triple* t : routed[i]) {
      auto [it, inserted] =
          tablet.cells.try_emplace({t->row, t->col}, t->value);
      if (!inserted) {
        if (combiner_ && combiner_->kind == CombinerKind::kNumericSum &&
            t->col == combiner_->column) {
          auto folded = NumericSum(it->second, t->value);
          if (!folded) {
            throw CombinerError(t->row, t->col,
                                "stored value '" + it->second +
                                    "' is not numeric in table " + name_);
          }
          it->second = std::move(*folded);
        } else {
          it->second = t->value;
        }
      }
    }
    tablet.writes += routed[i].size();
    stats.entries_written += routed[i].size();
  }
  return stats;
}

Scanner Table::Scan(const RowSelection& rows, std::string col_prefix) const {
  std::shared_lock lock(shape_mu_);
  size_t first = 0;
  size_t last = tablets_.size() - 1;
  switch (rows.kind()) {
    case RowSelection::Kind::kAll:
      break;
    case RowSelection::Kind::kExact:
    case RowSelection::Kind::kBetween:
      first = RouteRow(splits_, rows.lo());
      last = RouteRow(splits_, rows.hi());
      break;
    case RowSelection::Kind::kPrefix:
      first = RouteRow(splits_, rows.lo());
      last = first;
      while (last < splits_.size() && splits_[last].starts_with(rows.lo())) {
        ++last;
      }
      break;
  }
  std::vector<std::shared_ptr<internal::Tablet>> visit(
      tablets_.begin() + first, tablets_.begin() + last + 1);
  return Scanner(std::move(visit), rows, std::move(col_prefix));
}

std::optional<std::string> Table::Get(std::string_view row,
                                      std::string_view col) const {
  std::shared_ptr<internal::Tablet> tablet;
  {
    std::shared_lock lock(shape_mu_);
    tablet = tablets_[RouteRow(splits_, row)];
  }
  std::lock_guard lock(tablet->mu);
  auto it = tablet->cells.find({std::string(row), std::string(col)});
  if (it == tablet->cells.end()) return std::nullopt;
  return it->second;
}

std::vector<TabletStat> Table::TabletStats() const {
  std::shared_lock lock(shape_mu_);
  std::vector<TabletStat> stats;
  stats.reserve(tablets_.size());
  for (size_t i = 0; i < tablets_.size(); ++i) {
    TabletStat s;
    if (i > 0) s.range_lo = splits_[i - 1];
    if (i < splits_.size()) s.range_hi = splits_[i];
    std::lock_guard tablet_lock(tablets_[i]->mu);
    s.entry_count = tablets_[i]->cells.size();
    s.write_count = tablets_[i]->writes;
    stats.push_back(std::move(s));
  }
  return stats;
}

size_t Table::Nnz() const {
  size_t n = 0;
  for (const TabletStat& s : TabletStats()) n += s.entry_count;
  return n;
}

void Table::Load(std::vector<std::string> splits,
                 std::vector<std::vector<Triple>> tablet_entries,
                 std::vector<size_t> write_counts) {
  std::unique_lock lock(shape_mu_);
  splits_ = std::move(splits);
  tablets_.clear();
  for (size_t i = 0; i <= splits_.size(); ++i) {
    auto tablet = std::make_shared<internal::Tablet>();
    if (i < tablet_entries.size()) {
      for (Triple& t : tablet_entries[i]) {
        if (RouteRow(splits_, t.row) != i) {
          throw StoreError("row '" + t.row + "' of table " + name_ +
                           " is outside tablet " + std::to_string(i));
        }
        tablet->cells.insert_or_assign({std::move(t.row), std::move(t.col)},
                                       std::move(t.value));
      }
    }
    tablet->writes =
        i < write_counts.size() ? write_counts[i] : tablet->cells.size();
    tablets_.push_back(std::move(tablet));
  }
}

Table& Store::CreateTable(const std::string& name,
                          std::optional<CombinerSpec> combiner) {
  if (!IsIdentifier(name)) {
    throw StoreError("invalid table name '" + name + "'");
  }
  if (combiner && combiner->column.empty()) {
    throw StoreError("combiner column must be non-empty");
  }
  std::unique_lock lock(mu_);
  if (tables_.contains(name)) {
    throw StoreError("table " + name + " already exists");
  }
  auto table = std::make_unique<Table>(name, std::move(combiner));
  Table& ref = *table;
  tables_.emplace(name, std::move(table));
  return ref;
}

Table* Store::FindTable(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = tables_.find(name);
  return it == tables_.end() ? nullptr : it->second.get();
}

Table& Store::GetTable(const std::string& name) const {
  Table* t = FindTable(name);
  if (t == nullptr) throw StoreError("unknown table " + name);
  return *t;
}

bool Store::HasTable(const std::string& name) const {
  return FindTable(name) != nullptr;
}

std::vector<std::string> Store::TableNames() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> names;
  for (const auto& [name, table] : tables_) names.push_back(name);
  return names;
}

bool Store::empty() const {
  std::shared_lock lock(mu_);
  return tables_.empty();
}

AppliedStats Store::ApplyMutation(const Mutation& m) {
  Table& table = GetTable(m.table);
  table.Validate(m.entries);
  return table.Apply(m.entries);
}

void Store::Snapshot(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create snapshot directory");
  for (const std::string& name : TableNames()) {
    const Table& table = GetTable(name);
    fs::path table_dir = dir / name;
    fs::create_directories(table_dir, ec);
    if (ec) throw IoError(table_dir, "cannot create table directory");
    for (const auto& entry : fs::directory_iterator(table_dir)) {
      if (entry.path().filename().string().starts_with("tablet-")) {
        fs::remove(entry.path(), ec);
        if (ec) throw IoError(entry.path(), "cannot remove stale tablet file");
      }
    }

    std::shared_lock shape(table.shape_mu_);
    std::vector<std::string> write_counts;
    for (size_t i = 0; i < table.tablets_.size(); ++i) {
      const internal::Tablet& tablet = *table.tablets_[i];
      std::vector<Triple> cells;
      {
        std::lock_guard lock(tablet.mu);
        write_counts.push_back(std::to_string(tablet.writes));
        cells.reserve(tablet.cells.size());
        for (const auto& [key, value] : tablet.cells) {
          cells.push_back({key.first, key.second, value});
        }
      }
      if (!cells.empty()) {
        SaveTripleFile(table_dir / ("tablet-" + std::to_string(i) + ".tsv"),
                       cells);
      }
    }

    fs::path manifest = table_dir / "manifest";
    std::ofstream out(manifest, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(manifest, "cannot open for writing");
    out << "name = " << name << '\n'
        << "combiner = " << CombinerName(table.combiner_) << '\n'
        << "combiner_column = "
        << EscapeField(table.combiner_ ? table.combiner_->column : "") << '\n'
        << "splits = " << JoinList(table.splits_) << '\n'
        << "tablets = " << table.tablets_.size() << '\n'
        << "write_counts = " << JoinList(write_counts) << '\n';
    out.flush();
    if (!out) throw IoError(manifest, "write failed");
  }
}

void Store::Restore(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!empty()) throw StoreError("restore requires an empty store");
  if (!fs::is_directory(dir)) throw IoError(dir, "snapshot directory missing");

  std::vector<fs::path> table_dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "manifest")) {
      table_dirs.push_back(entry.path());
    }
  }
  std::sort(table_dirs.begin(), table_dirs.end());

  std::map<std::string, std::unique_ptr<Table>, std::less<>> loaded;
  for (const fs::path& table_dir : table_dirs) {
    fs::path manifest = table_dir / "manifest";
    auto fields = ReadManifest(manifest);
    const std::string& name = fields["name"];
    if (!IsIdentifier(name) || loaded.contains(name)) {
      throw IoError(manifest, "bad or duplicate table name '" + name + "'");
    }
    std::optional<CombinerSpec> combiner;
    const std::string& kind = fields["combiner"];
    if (kind == "numericSum" || kind == "lastWins") {
      combiner = CombinerSpec{UnescapeField(fields["combiner_column"]),
                              kind == "numericSum" ? CombinerKind::kNumericSum
                                                   : CombinerKind::kLastWins};
    } else if (kind != "none") {
      throw IoError(manifest, "unknown combiner '" + kind + "'");
    }
    std::vector<std::string> splits = SplitList(fields["splits"]);
    std::vector<size_t> write_counts;
    for (const std::string& w : SplitList(fields["write_counts"])) {
      auto n = ParseInteger(w);
      if (!n || *n < 0) throw IoError(manifest, "bad write count '" + w + "'");
      write_counts.push_back(static_cast<size_t>(*n));
    }
    std::vector<std::vector<Triple>> tablet_entries(splits.size() + 1);
    for (size_t i = 0; i < tablet_entries.size(); ++i) {
      fs::path file = table_dir / ("tablet-" + std::to_string(i) + ".tsv");
      if (fs::exists(file)) tablet_entries[i] = LoadTripleFile(file);
    }
    auto table = std::make_unique<Table>(name, std::move(combiner));
    table->Load(std::move(splits), std::move(tablet_entries),
                std::move(write_counts));
    loaded.emplace(name, std::move(table));
  }

  std::unique_lock lock(mu_);
  if (!tables_.empty()) throw StoreError("restore requires an empty store");
  tables_ = std::move(loaded);
}

}  // namespace d4m
