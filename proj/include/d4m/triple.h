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

#ifndef D4M_TRIPLE_H_
#define D4M_TRIPLE_H_

#include <compare>
#include <ostream>
#include <string>

namespace d4m {

/// One (row, col, value) entry. All three fields are raw byte strings and
/// order is plain byte order on (row, col, value).
struct Triple {
  std::string row;
  std::string col;
  std::string value;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Triple& t) {
  return os << "(" << t.row << "," << t.col << "," << t.value << ")";
}

}  // namespace d4m

#endif  // D4M_TRIPLE_H_
