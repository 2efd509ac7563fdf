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

#ifndef D4M_SCHEMA_H_
#define D4M_SCHEMA_H_

// The four-table exploded schema. Every record becomes one row of the edge
// table with a `field|value` column per attribute and value "1"; the
// transpose table mirrors it with rows and columns swapped; the degree table
// tallies each column key under an accumulating "Degree" column; the raw text
// table keeps the unparsed text fields.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "d4m/store.h"
#include "d4m/triple.h"

namespace d4m {

inline constexpr std::string_view kDegreeColumn = "Degree";
inline constexpr std::string_view kExistsValue = "1";

struct SchemaTableNames {
  std::string edge;
  std::string edge_t;
  std::string degree;
  std::string raw_text;
};

/// `<base>edge`, `<base>edgeT`, `<base>edgeDeg`, `<base>edgeTxt`; base "T"
/// yields Tedge, TedgeT, TedgeDeg, TedgeTxt.
SchemaTableNames TableNamesFor(std::string_view base);

struct SchemaSplits {
  std::vector<std::string> edge;
  std::vector<std::string> edge_t;
  std::vector<std::string> degree;
  std::vector<std::string> raw_text;
};

struct QuadSchema {
  Store* store = nullptr;
  Table* edge = nullptr;
  Table* edge_t = nullptr;
  Table* degree = nullptr;
  Table* raw_text = nullptr;
  bool flip_row_keys = false;
};

/// One parsed record, ready for ingest. `pairs` are column keys of the form
/// `field|value`; `raw` holds (column name, original text) for the raw text
/// table.
struct ExplodedRecord {
  std::string row_key;
  std::vector<std::string> pairs;
  std::vector<std::pair<std::string, std::string>> raw;

  bool operator==(const ExplodedRecord&) const = default;
};

struct IngestStats {
  size_t edge_entries = 0;
  size_t degree_mutations = 0;
  double reduction_factor = 0.0;  // edge_entries / degree_mutations
};

struct SchemaViolation {
  enum class Kind {
    kMissingTranspose,  // edge entry without a mirror in the transpose table
    kExtraTranspose,    // transpose entry without a mirror in the edge table
    kDegreeMismatch,    // stored degree differs from the edge column count
    kMissingDegree,     // edge column with no degree entry
    kOrphanDegree,      // degree entry for a column absent from the edge table
  };
  Kind kind;
  std::string key;  // offending column key (or edge row for transpose issues)
  std::string detail;
};

struct SchemaReport {
  std::vector<SchemaViolation> violations;
  size_t edge_entries = 0;
  size_t columns_checked = 0;

  bool ok() const { return violations.empty(); }
};

/// Creates the four tables (degree with a numericSum combiner on "Degree")
/// and applies `presplits`. Raises SchemaError if any name is taken.
QuadSchema InitSchema(Store& store, std::string_view base, bool flip,
                      const SchemaSplits& presplits = {});

/// Binds to four tables that already exist in `store`.
QuadSchema AttachSchema(Store& store, std::string_view base, bool flip);

/// Byte reversal of the whole key.
std::string FlipKey(std::string_view key);

/// Builds a `field|value` column key. '|' and '\' in the field name are
/// escaped so the first unescaped '|' is always the separator.
std::string MakePair(std::string_view field, std::string_view value);

/// Splits a column key at its first unescaped '|' and unescapes the field
/// name. Raises SchemaError when there is no separator or the field is empty.
std::pair<std::string, std::string> SplitPair(std::string_view pair);

/// One (column, "Degree", count) triple per distinct column of the batch.
/// Duplicate (row, column) entries count once, as they would in the store.
std::vector<Triple> PresumBatch(const std::vector<Triple>& edge_triples);

/// Validates every record, then writes edge, transpose, raw text and pre-summed
/// degree mutations. A malformed record aborts the batch before any write.
IngestStats IngestBatch(const QuadSchema& q,
                        const std::vector<ExplodedRecord>& records);

/// Audits the transpose mirror and degree exactness from full scans.
SchemaReport VerifySchema(const QuadSchema& q);

}  // namespace d4m

#endif  // D4M_SCHEMA_H_
