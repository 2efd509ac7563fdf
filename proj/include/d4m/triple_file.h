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

#ifndef D4M_TRIPLE_FILE_H_
#define D4M_TRIPLE_FILE_H_

// Triple file format: UTF-8, one triple per line, three tab separated fields
// row, col, value. Tab, newline and backslash inside a field are written as
// \t, \n and \\.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d4m/triple.h"

namespace d4m {

std::string EscapeField(std::string_view raw);

/// Inverse of EscapeField. Throws ParseError on a dangling or unknown escape.
std::string UnescapeField(std::string_view escaped);

/// Splits `line` on unescaped `delimiter` and unescapes every piece. Besides
/// \t, \n, \r and \\, a backslash followed by the delimiter yields the
/// delimiter itself.
std::vector<std::string> SplitEscaped(std::string_view line, char delimiter);

/// Inverse of SplitEscaped.
std::string JoinEscaped(std::span<const std::string> fields, char delimiter);

std::string FormatTripleLine(const Triple& t);
Triple ParseTripleLine(std::string_view line);

void WriteTriples(std::ostream& out, std::span<const Triple> triples);

/// Reads triples until end of stream. Blank lines are skipped; any other
/// malformed line raises ParseError carrying the 1-based line number.
std::vector<Triple> ReadTriples(std::istream& in);

void SaveTripleFile(const std::filesystem::path& path,
                    std::span<const Triple> triples);
std::vector<Triple> LoadTripleFile(const std::filesystem::path& path);

}  // namespace d4m

#endif  // D4M_TRIPLE_FILE_H_
