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

#include "d4m/parse.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "d4m/assoc.h"
#include "d4m/error.h"
#include "d4m/triple_file.h"
#include "json.hpp"

namespace d4m {
namespace {

using Json = nlohmann::ordered_json;

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r";
  size_t first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  size_t last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitNames(std::string_view list) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= list.size()) {
    size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view item = Trim(list.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

char ParseDelimiter(std::string_view v) {
  if (v == "tab" || v == "\\t") return '\t';
  if (v == "comma") return ',';
  if (v == "space") return ' ';
  if (v.size() == 1 && v[0] != '\\') return v[0];
  throw ParseError("unsupported delimiter '" + std::string(v) + "'");
}

bool IsBlank(std::string_view line) { return Trim(line).empty(); }

std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::string Stringify(const Json& v, const RecordSpec& spec) {
  switch (v.type()) {
    case Json::value_t::null:
      return spec.null_literal;
    case Json::value_t::string:
      return v.get<std::string>();
    case Json::value_t::boolean:
      return v.get<bool>() ? "true" : "false";
    case Json::value_t::number_integer:
      return std::to_string(v.get<int64_t>());
    case Json::value_t::number_unsigned:
      return std::to_string(v.get<uint64_t>());
    case Json::value_t::number_float:
      return FormatNumber(v.get<double>());
    default:
      return v.dump();
  }
}

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' ||
         c == '\r';
}

}  // namespace

void RecordSpec::Validate() const {
  if (row_key_field.empty()) throw ParseError("record spec needs a rowkey");
  std::set<std::string> seen{row_key_field};
  for (const auto* list : {&explode_fields, &text_fields}) {
    for (const std::string& f : *list) {
      if (f == row_key_field) {
        throw ParseError("row key field '" + f +
                         "' cannot also be exploded or tokenized");
      }
      if (!seen.insert(f).second) {
        throw ParseError("field '" + f + "' listed twice in record spec");
      }
    }
  }
}

RecordSpec ParseRecordSpec(std::string_view config) {
  RecordSpec spec;
  std::istringstream in{std::string(config)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("spec line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    std::string_view key = Trim(body.substr(0, eq));
    std::string_view value = Trim(body.substr(eq + 1));
    if (key == "rowkey") {
      spec.row_key_field = value;
    } else if (key == "explode") {
      spec.explode_fields = SplitNames(value);
    } else if (key == "text") {
      spec.text_fields = SplitNames(value);
    } else if (key == "null") {
      spec.null_literal = value;
    } else if (key == "delimiter") {
      spec.delimiter = ParseDelimiter(value);
    } else if (key == "flip") {
      if (value != "true" && value != "false") {
        throw ParseError("flip must be true or false");
      }
      spec.flip = value == "true";
    } else {
      throw ParseError("spec line " + std::to_string(line_no) +
                       ": unknown key '" + std::string(key) + "'");
    }
  }
  spec.Validate();
  return spec;
}

RecordSpec LoadRecordSpec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open record spec");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseRecordSpec(buf.str());
}

void RawRecord::Set(std::string field, std::string value) {
  for (auto& [name, v] : fields_) {
    if (name == field) {
      v = std::move(value);
      return;
    }
  }
  fields_.emplace_back(std::move(field), std::move(value));
}

const std::string* RawRecord::Find(std::string_view field) const {
  for (const auto& [name, v] : fields_) {
    if (name == field) return &v;
  }
  return nullptr;
}

ParseOutput ParseDelimited(std::span<const std::string> lines,
                           const RecordSpec& spec) {
  size_t i = 0;
  while (i < lines.size() && IsBlank(lines[i])) ++i;
  if (i == lines.size()) throw ParseError("delimited input has no header");
  std::vector<std::string> header =
      SplitEscaped(StripCr(lines[i]), spec.delimiter);
  for (std::string& h : header) h = std::string(Trim(h));
  if (std::find(header.begin(), header.end(), spec.row_key_field) ==
      header.end()) {
    throw ParseError("header lacks row key field '" + spec.row_key_field + "'");
  }
  std::vector<std::string> sorted = header;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParseError("header repeats a field name");
  }

  ParseOutput out;
  for (++i; i < lines.size(); ++i) {
    std::string_view line = StripCr(lines[i]);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    try {
      cells = SplitEscaped(line, spec.delimiter);
    } catch (const ParseError& e) {
      out.errors.push_back({i + 1, e.what()});
      continue;
    }
    if (cells.size() != header.size()) {
      out.errors.push_back({i + 1, "expected " + std::to_string(header.size()) +
                                       " fields, found " +
                                       std::to_string(cells.size())});
      continue;
    }
    RawRecord r;
    for (size_t f = 0; f < header.size(); ++f) {
      r.Set(header[f], std::move(cells[f]));
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

std::string FormatDelimitedLine(const RawRecord& record,
                                std::span<const std::string> header,
                                char delimiter) {
  std::vector<std::string> cells;
  cells.reserve(header.size());
  for (const std::string& h : header) {
    const std::string* v = record.Find(h);
    cells.push_back(v ? *v : std::string());
  }
  return JoinEscaped(cells, delimiter);
}

ParseOutput ParseJsonLines(std::span<const std::string> lines,
                           const RecordSpec& spec) {
  ParseOutput out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i])) continue;
    Json doc = Json::parse(lines[i], nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      out.errors.push_back({i + 1, "malformed JSON"});
      continue;
    }
    if (!doc.is_object()) {
      out.errors.push_back({i + 1, "JSON line is not an object"});
      continue;
    }
    RawRecord r;
    for (const auto& [key, value] : doc.items()) {
      if (value.is_object()) {
        for (const auto& [inner, leaf] : value.items()) {
          r.Set(key + "." + inner, Stringify(leaf, spec));
        }
      } else {
        r.Set(key, Stringify(value, spec));
      }
    }
    if (r.Find(spec.row_key_field) == nullptr) {
      out.errors.push_back(
          {i + 1, "missing row key field '" + spec.row_key_field + "'"});
      continue;
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsAsciiSpace(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

ExplodedRecord Explode(const RawRecord& record, const RecordSpec& spec,
                       bool flip) {
  const std::string* id = record.Find(spec.row_key_field);
  if (id == nullptr || id->empty()) {
    throw ParseError("record has an empty row key field '" +
                     spec.row_key_field + "'");
  }
  ExplodedRecord out;
  out.row_key = flip ? FlipKey(*id) : *id;
  for (const std::string& f : spec.explode_fields) {
    const std::string* v = record.Find(f);
    out.pairs.push_back(
        MakePair(f, v != nullptr && !v->empty() ? *v : spec.null_literal));
  }
  for (const std::string& f : spec.text_fields) {
    const std::string* v = record.Find(f);
    std::string text = v != nullptr ? *v : spec.null_literal;
    for (const std::string& token : Tokenize(text)) {
      out.pairs.push_back(MakePair(kWordField, token));
    }
    out.raw.emplace_back(f, std::move(text));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()),
                  out.pairs.end());
  return out;
}

}  // namespace d4m
