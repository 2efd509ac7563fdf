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

#include "d4m/schema.h"

#include <algorithm>
#include <map>

#include "d4m/assoc.h"
#include "d4m/error.h"

namespace d4m {
namespace {

std::vector<Triple> ScanAll(const Table& t) {
  return t.Scan(RowSelection::All()).Collect();
}

void ValidateRecord(const ExplodedRecord& r) {
  if (r.row_key.empty()) throw SchemaError("record with empty row key");
  std::vector<std::string> sorted = r.pairs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw SchemaError("record " + r.row_key + " repeats a column key");
  }
  for (const std::string& p : r.pairs) {
    try {
      SplitPair(p);
    } catch (const SchemaError& e) {
      throw SchemaError("record " + r.row_key + ": " + e.what());
    }
  }
  for (const auto& [col, text] : r.raw) {
    if (col.empty()) {
      throw SchemaError("record " + r.row_key + " has an unnamed raw column");
    }
  }
}

}  // namespace

SchemaTableNames TableNamesFor(std::string_view base) {
  std::string b(base);
  return {b + "edge", b + "edgeT", b + "edgeDeg", b + "edgeTxt"};
}

QuadSchema InitSchema(Store& store, std::string_view base, bool flip,
                      const SchemaSplits& presplits) {
  SchemaTableNames names = TableNamesFor(base);
  for (const std::string* n :
       {&names.edge, &names.edge_t, &names.degree, &names.raw_text}) {
    if (store.HasTable(*n))
      throw SchemaError("table " + *n + " already exists");
  }
  QuadSchema q;
  q.store = &store;
  q.flip_row_keys = flip;
  q.edge = &store.CreateTable(names.edge);
  q.edge_t = &store.CreateTable(names.edge_t);
  q.degree = &store.CreateTable(
      names.degree,
      CombinerSpec{std::string(kDegreeColumn), CombinerKind::kNumericSum});
  q.raw_text = &store.CreateTable(names.raw_text);
  q.edge->AddSplits(presplits.edge);
  q.edge_t->AddSplits(presplits.edge_t);
  q.degree->AddSplits(presplits.degree);
  q.raw_text->AddSplits(presplits.raw_text);
  return q;
}

QuadSchema AttachSchema(Store& store, std::string_view base, bool flip) {
  SchemaTableNames names = TableNamesFor(base);
  QuadSchema q;
  q.store = &store;
  q.flip_row_keys = flip;
  auto find = [&](const std::string& name) {
    Table* t = store.FindTable(name);
    if (t == nullptr) throw SchemaError("schema table " + name + " is missing");
    return t;
  };
  q.edge = find(names.edge);
  q.edge_t = find(names.edge_t);
  q.degree = find(names.degree);
  q.raw_text = find(names.raw_text);
  const auto& combiner = q.degree->combiner();
  if (!combiner || combiner->column != kDegreeColumn ||
      combiner->kind != CombinerKind::kNumericSum) {
    throw SchemaError("table " + names.degree +
                      " lacks the numericSum Degree combiner");
  }
  return q;
}

std::string FlipKey(std::string_view key) {
  return std::string(key.rbegin(), key.rend());
}

std::string MakePair(std::string_view field, std::string_view value) {
  std::string out;
  out.reserve(field.size() + value.size() + 1);
  for (char c : field) {
    if (c == '|' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('|');
  out.append(value);
  return out;
}

std::pair<std::string, std::string> SplitPair(std::string_view pair) {
  std::string field;
  for (size_t i = 0; i < pair.size(); ++i) {
    char c = pair[i];
    if (c == '\\' && i + 1 < pair.size()) {
      field.push_back(pair[++i]);
    } else if (c == '|') {
      if (field.empty()) {
        throw SchemaError("column key '" + std::string(pair) +
                          "' has an empty field name");
      }
      return {std::move(field), std::string(pair.substr(i + 1))};
    } else {
      field.push_back(c);
    }
  }
  throw SchemaError("column key '" + std::string(pair) +
                    "' has no field|value separator");
}

std::vector<Triple> PresumBatch(const std::vector<Triple>& edge_triples) {
  std::vector<AssocEntry> entries;
  entries.reserve(edge_triples.size());
  for (const Triple& t : edge_triples) {
    entries.push_back({t.row, t.col, 1.0});
  }
  // Existence tallies: repeated (row, col) is one entry, as in the store.
  AssocArray batch = AssocArray::FromTriples(std::move(entries), ops::KeepLast);
  AssocArray degrees = Transpose(Sum(batch, 1, std::string(kDegreeColumn)));
  std::vector<Triple> out;
  out.reserve(degrees.nnz());
  degrees.ForEach([&](const std::string& col, const std::string& label,
                      const AssocValue& count) {
    out.push_back({col, label, count.ToString()});
  });
  return out;
}

IngestStats IngestBatch(const QuadSchema& q,
                        const std::vector<ExplodedRecord>& records) {
  for (const ExplodedRecord& r : records) ValidateRecord(r);

  Mutation edge{q.edge->name(), {}};
  Mutation edge_t{q.edge_t->name(), {}};
  Mutation raw{q.raw_text->name(), {}};
  for (const ExplodedRecord& r : records) {
    for (const std::string& p : r.pairs) {
      edge.entries.push_back({r.row_key, p, std::string(kExistsValue)});
      edge_t.entries.push_back({p, r.row_key, std::string(kExistsValue)});
    }
    for (const auto& [col, text] : r.raw) {
      raw.entries.push_back({r.row_key, col, text});
    }
  }
  Mutation degree{q.degree->name(), PresumBatch(edge.entries)};

  q.store->ApplyMutation(edge);
  q.store->ApplyMutation(edge_t);
  q.store->ApplyMutation(raw);
  q.store->ApplyMutation(degree);

  IngestStats stats;
  stats.edge_entries = edge.entries.size();
  stats.degree_mutations = degree.entries.size();
  stats.reduction_factor =
      stats.degree_mutations == 0
          ? 0.0
          : static_cast<double>(stats.edge_entries) / stats.degree_mutations;
  return stats;
}

SchemaReport VerifySchema(const QuadSchema& q) {
  SchemaReport report;
  std::vector<Triple> edge = ScanAll(*q.edge);
  std::vector<Triple> edge_t = ScanAll(*q.edge_t);
  report.edge_entries = edge.size();

  std::vector<Triple> mirrored;
  mirrored.reserve(edge.size());
  for (const Triple& t : edge) mirrored.push_back({t.col, t.row, t.value});
  std::sort(mirrored.begin(), mirrored.end());

  size_t i = 0;
  size_t j = 0;
  while (i < mirrored.size() || j < edge_t.size()) {
    if (j == edge_t.size() ||
        (i < mirrored.size() && mirrored[i] < edge_t[j])) {
      const Triple& m = mirrored[i++];
      report.violations.push_back(
          {SchemaViolation::Kind::kMissingTranspose, m.col,
           "edge entry (" + m.col + ", " + m.row + ", " + m.value +
               ") has no transpose mirror"});
    } else if (i == mirrored.size() || edge_t[j] < mirrored[i]) {
      const Triple& t = edge_t[j++];
      report.violations.push_back(
          {SchemaViolation::Kind::kExtraTranspose, t.col,
           "transpose entry (" + t.row + ", " + t.col + ", " + t.value +
               ") has no edge mirror"});
    } else {
      ++i;
      ++j;
    }
  }

  std::map<std::string, size_t> counts;
  for (const Triple& t : edge) ++counts[t.col];
  std::map<std::string, std::string> stored;
  for (Triple& t : ScanAll(*q.degree)) {
    if (t.col == kDegreeColumn) stored[t.row] = std::move(t.value);
  }
  report.columns_checked = counts.size();
  for (const auto& [col, n] : counts) {
    auto it = stored.find(col);
    if (it == stored.end()) {
      report.violations.push_back(
          {SchemaViolation::Kind::kMissingDegree, col,
           "no degree entry; expected " + std::to_string(n)});
    } else if (it->second != std::to_string(n)) {
      report.violations.push_back({SchemaViolation::Kind::kDegreeMismatch, col,
                                   "stored degree " + it->second +
                                       ", edge count " + std::to_string(n)});
    }
  }
  for (const auto& [col, value] : stored) {
    if (!counts.contains(col)) {
      report.violations.push_back(
          {SchemaViolation::Kind::kOrphanDegree, col,
           "degree " + value + " for a column absent from edge"});
    }
  }
  return report;
}

}  // namespace d4m
