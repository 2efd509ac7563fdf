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

#ifndef D4M_QUERY_H_
#define D4M_QUERY_H_

// Queries over a QuadSchema. Rows come from the edge table, columns from the
// transpose table, and tallies from the degree table, so no query ever needs
// a full table scan.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d4m/assoc.h"
#include "d4m/schema.h"

namespace d4m {

struct Provenance {
  std::vector<std::string> tables_read;  // distinct, in first-read order
  size_t entries_scanned = 0;
  size_t tablets_touched = 0;
  size_t exact_row_scans = 0;
  size_t range_scans = 0;
  size_t cell_probes = 0;
  // Column keys fetched wholesale from the transpose table, in order.
  std::vector<std::string> column_fetches;
};

struct QueryResult {
  AssocArray array;
  Provenance provenance;
};

/// The edge row `row_key` (one exact-row scan).
QueryResult GetRow(const QuadSchema& q, std::string_view row_key);

/// Records containing `col_key`: an exact-row scan of the transpose table,
/// transposed back so rows are record ids.
QueryResult GetByColumn(const QuadSchema& q, std::string_view col_key);

/// colKey x "Degree" array of counts, one exact degree read per key. Absent
/// keys report 0.
AssocArray DegreeOf(const QuadSchema& q, std::span<const std::string> col_keys);

/// Records containing every key. The rarest key (ties broken bytewise) is
/// fetched first; each later key is probed cell by cell in the transpose
/// table while the candidate set is smaller than its degree, and fetched
/// wholesale otherwise. A zero-degree key ends the query immediately. The
/// result holds one entry per (record, key).
QueryResult AndQuery(const QuadSchema& q,
                     std::span<const std::string> col_keys);

/// Edge rows in [lo, hi]. Raises RangeError when hi < lo.
QueryResult RowRange(const QuadSchema& q, std::string_view lo,
                     std::string_view hi);
QueryResult RowPrefix(const QuadSchema& q, std::string_view prefix);

/// The raw text stored for `row_key` under `column`.
std::optional<std::string> GetRawText(const QuadSchema& q,
                                      std::string_view row_key,
                                      std::string_view column = "text");

/// Store triples as a text-valued array.
AssocArray ToAssoc(const std::vector<Triple>& triples);

}  // namespace d4m

#endif  // D4M_QUERY_H_
