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

#ifndef D4M_PARSE_H_
#define D4M_PARSE_H_

// Raw delimited or JSON-lines records to ExplodedRecords.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "d4m/schema.h"

namespace d4m {

/// Column prefix for tokens of text fields.
inline constexpr std::string_view kWordField = "word";

struct RecordSpec {
  std::string row_key_field;
  std::vector<std::string> explode_fields;
  std::vector<std::string> text_fields;
  std::string null_literal = "null";
  char delimiter = '\t';
  // Unset when the config does not say.
  std::optional<bool> flip;

  /// Raises ParseError when the row key field is also exploded or tokenized,
  /// or a field name repeats.
  void Validate() const;
};

/// Reads the line-oriented `key = value` config:
///   rowkey = TweetID
///   explode = stat,time,user
///   text = text
///   null = null
///   delimiter = tab        (tab, comma, or a single character)
///   flip = true
/// Blank lines and lines starting with '#' are ignored.
RecordSpec ParseRecordSpec(std::string_view config);
RecordSpec LoadRecordSpec(const std::filesystem::path& path);

/// Field name to value, in input order.
class RawRecord {
 public:
  RawRecord() = default;
  RawRecord(std::initializer_list<std::pair<std::string, std::string>> fields)
      : fields_(fields) {}

  /// Replaces an existing field's value or appends a new field.
  void Set(std::string field, std::string value);
  const std::string* Find(std::string_view field) const;
  const std::vector<std::pair<std::string, std::string>>& fields() const {
    return fields_;
  }
  size_t size() const { return fields_.size(); }

  bool operator==(const RawRecord&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

/// A rejected input line; parsing continues past it.
struct LineError {
  size_t line = 0;  // 1-based
  std::string message;
};

struct ParseOutput {
  std::vector<RawRecord> records;
  std::vector<LineError> errors;
};

/// The first line is a header of field names. Fields split on
/// `spec.delimiter` with backslash escapes (\t, \n, \r, \\, \<delimiter>).
/// Blank lines are skipped. Empty cells are present with an empty value.
ParseOutput ParseDelimited(std::span<const std::string> lines,
                           const RecordSpec& spec);

/// Inverse of the delimited reader for one record under `header`; fields
/// missing from the record are written empty.
std::string FormatDelimitedLine(const RawRecord& record,
                                std::span<const std::string> header,
                                char delimiter);

/// One JSON object per line. Scalars are stringified; null becomes
/// `spec.null_literal`; nested objects flatten one level into dotted names,
/// and anything deeper is kept as compact JSON text.
ParseOutput ParseJsonLines(std::span<const std::string> lines,
                           const RecordSpec& spec);

/// Splits on runs of ASCII whitespace; everything else is kept byte for byte.
std::vector<std::string> Tokenize(std::string_view text);

/// Explodes a record: `field|value` for every explode field, `word|token` for
/// each distinct token of every text field, and (field, original text) raw
/// entries for the text fields. Absent or empty explode fields and absent
/// text fields take the null literal. Pairs come out sorted and distinct.
ExplodedRecord Explode(const RawRecord& record, const RecordSpec& spec,
                       bool flip);

}  // namespace d4m

#endif  // D4M_PARSE_H_
