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

#include "d4m/triple_file.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "d4m/error.h"

namespace d4m {
namespace {

// Appends the unescaped form of the escape sequence starting at `s[i]`
// (which is a backslash) and returns the index just past it.
size_t DecodeEscape(std::string_view s, size_t i, char delimiter,
                    std::string& out) {
  if (i + 1 >= s.size()) {
    throw ParseError("dangling backslash at end of field");
  }
  char c = s[i + 1];
  switch (c) {
    case 't':
      out.push_back('\t');
      break;
    case 'n':
      out.push_back('\n');
      break;
    case 'r':
      out.push_back('\r');
      break;
    case '\\':
      out.push_back('\\');
      break;
    default:
      if (delimiter != '\0' && c == delimiter) {
        out.push_back(c);
        break;
      }
      throw ParseError(std::string("unknown escape \\") + c);
  }
  return i + 2;
}

}  // namespace

std::string EscapeField(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\\':
        out += "\\\\";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::string UnescapeField(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (size_t i = 0; i < escaped.size();) {
    if (escaped[i] == '\\') {
      i = DecodeEscape(escaped, i, '\0', out);
    } else {
      out.push_back(escaped[i++]);
    }
  }
  return out;
}

std::vector<std::string> SplitEscaped(std::string_view line, char delimiter) {
  std::vector<std::string> fields(1);
  for (size_t i = 0; i < line.size();) {
    char c = line[i];
    if (c == '\\') {
      i = DecodeEscape(line, i, delimiter, fields.back());
    } else if (c == delimiter) {
      fields.emplace_back();
      ++i;
    } else {
      fields.back().push_back(c);
      ++i;
    }
  }
  return fields;
}

std::string JoinEscaped(std::span<const std::string> fields, char delimiter) {
  std::string out;
  for (size_t f = 0; f < fields.size(); ++f) {
    if (f > 0) out.push_back(delimiter);
    for (char c : fields[f]) {
      if (c == '\t') {
        out += "\\t";
      } else if (c == '\n') {
        out += "\\n";
      } else if (c == '\r') {
        out += "\\r";
      } else if (c == '\\') {
        out += "\\\\";
      } else if (c == delimiter) {
        out.push_back('\\');
        out.push_back(c);
      } else {
        out.push_back(c);
      }
    }
  }
  return out;
}

std::string FormatTripleLine(const Triple& t) {
  return EscapeField(t.row) + '\t' + EscapeField(t.col) + '\t' +
         EscapeField(t.value);
}

Triple ParseTripleLine(std::string_view line) {
  size_t first = line.find('\t');
  size_t second =
      first == std::string_view::npos ? first : line.find('\t', first + 1);
  if (second == std::string_view::npos ||
      line.find('\t', second + 1) != std::string_view::npos) {
    throw ParseError(
        "triple line must have exactly three tab-separated fields");
  }
  return Triple{UnescapeField(line.substr(0, first)),
                UnescapeField(line.substr(first + 1, second - first - 1)),
                UnescapeField(line.substr(second + 1))};
}

void WriteTriples(std::ostream& out, std::span<const Triple> triples) {
  for (const Triple& t : triples) {
    out << FormatTripleLine(t) << '\n';
  }
}

std::vector<Triple> ReadTriples(std::istream& in) {
  std::vector<Triple> triples;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      triples.push_back(ParseTripleLine(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return triples;
}

void SaveTripleFile(const std::filesystem::path& path,
                    std::span<const Triple> triples) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  WriteTriples(out, triples);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

std::vector<Triple> LoadTripleFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  try {
    return ReadTriples(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace d4m
