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

#include "d4m/query.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "d4m/store.h"

namespace d4m {
namespace {

void NoteTable(Provenance& p, const Table& t) {
  if (std::find(p.tables_read.begin(), p.tables_read.end(), t.name()) ==
      p.tables_read.end()) {
    p.tables_read.push_back(t.name());
  }
}

std::vector<Triple> ScanInto(Provenance& p, const Table& t,
                             const RowSelection& rows,
                             std::string col_prefix = "") {
  NoteTable(p, t);
  Scanner scanner = t.Scan(rows, std::move(col_prefix));
  std::vector<Triple> out = scanner.Collect();
  p.entries_scanned += scanner.entries_scanned();
  p.tablets_touched += scanner.tablets_touched();
  if (rows.kind() == RowSelection::Kind::kExact) {
    ++p.exact_row_scans;
  } else {
    ++p.range_scans;
  }
  return out;
}

double ReadDegree(Provenance& p, const QuadSchema& q, const std::string& key) {
  NoteTable(p, *q.degree);
  ++p.exact_row_scans;
  ++p.tablets_touched;
  auto stored = q.degree->Get(key, kDegreeColumn);
  if (!stored) return 0.0;
  ++p.entries_scanned;
  // The degree table's combiner guarantees numeric content.
  return ParseNumber(*stored).value_or(0.0);
}

}  // namespace

AssocArray ToAssoc(const std::vector<Triple>& triples) {
  std::vector<AssocEntry> entries;
  entries.reserve(triples.size());
  for (const Triple& t : triples) entries.push_back({t.row, t.col, t.value});
  return AssocArray::FromTriples(std::move(entries), ops::KeepLast);
}

QueryResult GetRow(const QuadSchema& q, std::string_view row_key) {
  QueryResult r;
  r.array = ToAssoc(ScanInto(r.provenance, *q.edge,
                             RowSelection::Exact(std::string(row_key))));
  return r;
}

QueryResult GetByColumn(const QuadSchema& q, std::string_view col_key) {
  QueryResult r;
  std::vector<Triple> column = ScanInto(
      r.provenance, *q.edge_t, RowSelection::Exact(std::string(col_key)));
  r.provenance.column_fetches.emplace_back(col_key);
  r.array = Transpose(ToAssoc(column));
  return r;
}

AssocArray DegreeOf(const QuadSchema& q,
                    std::span<const std::string> col_keys) {
  Provenance ignored;
  std::vector<AssocEntry> entries;
  for (const std::string& key : col_keys) {
    entries.push_back(
        {key, std::string(kDegreeColumn), ReadDegree(ignored, q, key)});
  }
  return AssocArray::FromTriples(std::move(entries), ops::KeepLast);
}

QueryResult AndQuery(const QuadSchema& q,
                     std::span<const std::string> col_keys) {
  if (col_keys.empty()) {
    throw std::invalid_argument("and-query needs at least one column key");
  }
  QueryResult result;
  Provenance& prov = result.provenance;

  std::vector<std::string> keys(col_keys.begin(), col_keys.end());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<std::pair<double, std::string>> plan;
  for (std::string& key : keys) {
    double degree = ReadDegree(prov, q, key);
    if (degree == 0.0) return result;
    plan.emplace_back(degree, std::move(key));
  }
  std::sort(plan.begin(), plan.end());

  // Candidate record id -> entries gathered so far for it.
  std::map<std::string, std::vector<AssocEntry>> candidates;
  const std::string& rarest = plan.front().second;
  prov.column_fetches.push_back(rarest);
  for (Triple& t : ScanInto(prov, *q.edge_t, RowSelection::Exact(rarest))) {
    candidates[t.col].push_back({t.col, rarest, std::move(t.value)});
  }

  for (size_t k = 1; k < plan.size() && !candidates.empty(); ++k) {
    const auto& [degree, key] = plan[k];
    if (static_cast<double>(candidates.size()) < degree) {
      NoteTable(prov, *q.edge_t);
      for (auto it = candidates.begin(); it != candidates.end();) {
        ++prov.cell_probes;
        auto hit = q.edge_t->Get(key, it->first);
        if (hit) {
          ++prov.entries_scanned;
          it->second.push_back({it->first, key, std::move(*hit)});
          ++it;
        } else {
          it = candidates.erase(it);
        }
      }
    } else {
      prov.column_fetches.push_back(key);
      std::map<std::string, std::string> members;
      for (Triple& t : ScanInto(prov, *q.edge_t, RowSelection::Exact(key))) {
        members.emplace(std::move(t.col), std::move(t.value));
      }
      for (auto it = candidates.begin(); it != candidates.end();) {
        auto m = members.find(it->first);
        if (m == members.end()) {
          it = candidates.erase(it);
        } else {
          it->second.push_back({it->first, key, m->second});
          ++it;
        }
      }
    }
  }

  std::vector<AssocEntry> entries;
  for (auto& [row, row_entries] : candidates) {
    for (AssocEntry& e : row_entries) entries.push_back(std::move(e));
  }
  result.array = AssocArray::FromTriples(std::move(entries), ops::KeepLast);
  return result;
}

QueryResult RowRange(const QuadSchema& q, std::string_view lo,
                     std::string_view hi) {
  QueryResult r;
  r.array = ToAssoc(
      ScanInto(r.provenance, *q.edge,
               RowSelection::Between(std::string(lo), std::string(hi))));
  return r;
}

QueryResult RowPrefix(const QuadSchema& q, std::string_view prefix) {
  QueryResult r;
  r.array = ToAssoc(ScanInto(r.provenance, *q.edge,
                             RowSelection::Prefix(std::string(prefix))));
  return r;
}

std::optional<std::string> GetRawText(const QuadSchema& q,
                                      std::string_view row_key,
                                      std::string_view column) {
  return q.raw_text->Get(row_key, column);
}

}  // namespace d4m
