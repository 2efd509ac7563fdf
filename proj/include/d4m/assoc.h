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

#ifndef D4M_ASSOC_H_
#define D4M_ASSOC_H_

// Associative arrays: immutable sparse 2-D arrays keyed by sorted byte
// strings, closed under selection, element-wise operations, semiring
// multiplication, transpose and reduction.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace d4m {

/// A cell value: either a byte string or a 64-bit float. Text is never
/// reinterpreted as a number implicitly.
class AssocValue {
 public:
  AssocValue() : value_(std::string()) {}
  AssocValue(std::string text) : value_(std::move(text)) {}        // NOLINT
  AssocValue(const char* text) : value_(std::string(text)) {}      // NOLINT
  AssocValue(double number) : value_(number) {}                    // NOLINT
  AssocValue(int number) : value_(static_cast<double>(number)) {}  // NOLINT

  bool is_text() const { return std::holds_alternative<std::string>(value_); }
  bool is_number() const { return std::holds_alternative<double>(value_); }

  const std::string& text() const { return std::get<std::string>(value_); }
  double number() const { return std::get<double>(value_); }

  /// Text as-is; numbers in shortest round-trip decimal form.
  std::string ToString() const;

  bool operator==(const AssocValue&) const = default;

 private:
  std::variant<double, std::string> value_;
};

/// Total order used by max/min: numbers compare numerically, text bytewise,
/// and every number sorts before every text value.
int Compare(const AssocValue& a, const AssocValue& b);

std::ostream& operator<<(std::ostream& os, const AssocValue& v);

/// Shortest decimal string that parses back to exactly `d`. Integral values
/// carry no decimal point.
std::string FormatNumber(double d);

/// Parses the whole of `s` as a decimal number, or returns nullopt.
std::optional<double> ParseNumber(std::string_view s);

struct AssocEntry {
  std::string row;
  std::string col;
  AssocValue value;

  bool operator==(const AssocEntry&) const = default;
};

using BinaryOp =
    std::function<AssocValue(const AssocValue&, const AssocValue&)>;

namespace ops {
// Numeric only; text operands raise std::invalid_argument.
AssocValue Plus(const AssocValue& a, const AssocValue& b);
AssocValue Minus(const AssocValue& a, const AssocValue& b);
AssocValue Times(const AssocValue& a, const AssocValue& b);
// Under the Compare() order.
AssocValue Max(const AssocValue& a, const AssocValue& b);
AssocValue Min(const AssocValue& a, const AssocValue& b);
AssocValue KeepFirst(const AssocValue& a, const AssocValue& b);
AssocValue KeepLast(const AssocValue& a, const AssocValue& b);
// Numeric addition when both operands are numbers, otherwise keep-last.
AssocValue AddOrKeepLast(const AssocValue& a, const AssocValue& b);
}  // namespace ops

struct Semiring {
  std::string name;
  BinaryOp add;
  BinaryOp mul;
  // Absent entries are the additive identity, so they never reach `add`.
  bool add_identity_is_absent = true;
};

Semiring PlusTimes();
Semiring MaxMin();

class AssocArray {
 public:
  AssocArray() = default;

  /// Builds an array from unordered entries. Duplicate (row, col) entries are
  /// folded left to right with `collision`; a throwing collision surfaces as
  /// CollisionError naming the cell.
  static AssocArray FromTriples(std::vector<AssocEntry> entries,
                                const BinaryOp& collision = ops::AddOrKeepLast);

  /// Entries in (row, col) order.
  std::vector<AssocEntry> ToTriples() const;

  const std::vector<std::string>& row_keys() const { return rows_; }
  const std::vector<std::string>& col_keys() const { return cols_; }
  size_t nnz() const { return values_.size(); }
  size_t row_count() const { return rows_.size(); }
  size_t col_count() const { return cols_.size(); }
  bool empty() const { return values_.empty(); }

  /// nullptr when the cell is absent.
  const AssocValue* Find(std::string_view row, std::string_view col) const;

  /// Calls f(row, col, value) for every entry in (row, col) order.
  template <typename F>
  void ForEach(F&& f) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      for (size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
        f(rows_[r], cols_[col_index_[e]], values_[e]);
      }
    }
  }

  /// True when the type invariants hold: strictly ascending keys, in-range
  /// indices, sorted columns within each row, and no unused key.
  bool CheckInvariants() const;

  bool operator==(const AssocArray& other) const;

 private:
  friend AssocArray MatMul(const AssocArray&, const AssocArray&,
                           const Semiring&);

  // Builds from entries already strictly ascending in (row, col).
  static AssocArray FromSorted(std::vector<AssocEntry> sorted);

  // Compressed sparse rows: row r owns [row_start_[r], row_start_[r + 1]).
  std::vector<std::string> rows_;
  std::vector<std::string> cols_;
  std::vector<size_t> row_start_{0};
  std::vector<uint32_t> col_index_;
  std::vector<AssocValue> values_;
};

std::ostream& operator<<(std::ostream& os, const AssocArray& a);

// Selectors for Select(). PositionRange is 1-based and inclusive; KeyRange is
// inclusive on both ends.
struct SelectAll {};
struct ExactKeys {
  std::vector<std::string> keys;
};
struct KeyPrefix {
  std::string prefix;
};
struct KeyRange {
  std::string lo;
  std::string hi;
};
struct PositionRange {
  size_t first;
  size_t last;
};
using Selector =
    std::variant<SelectAll, ExactKeys, KeyPrefix, KeyRange, PositionRange>;

/// Sub-array of entries whose row satisfies `rows` and column satisfies
/// `cols`. Positions past the end clip; lo > hi raises RangeError.
AssocArray Select(const AssocArray& a, const Selector& rows,
                  const Selector& cols);

enum class Relation { kEq, kLt, kLe, kGt, kGe };

/// Keeps entries with `value <relation> operand`. Values of a different
/// variant than the operand never match.
AssocArray ValueFilter(const AssocArray& a, Relation relation,
                       const AssocValue& operand);

enum class ElementwiseOp { kAdd, kSubtract, kAnd, kOr };

/// A + B, A - B, A & B, A | B. Add and Or take the key union, And the key
/// intersection. Defaults when `combine` is empty:
///   add: numeric sum, max when either side is text
///   or:  max
///   and: numeric product, min when either side is text
///   subtract: numeric difference; where text is involved the cell drops out
///     (set difference), and B-only numbers appear negated.
AssocArray Elementwise(const AssocArray& a, const AssocArray& b,
                       ElementwiseOp op,
                       const std::optional<BinaryOp>& combine = std::nullopt);

AssocArray operator+(const AssocArray& a, const AssocArray& b);
AssocArray operator-(const AssocArray& a, const AssocArray& b);
AssocArray operator&(const AssocArray& a, const AssocArray& b);
AssocArray operator|(const AssocArray& a, const AssocArray& b);

/// result(r, c) = add over k of mul(A(r, k), B(k, c)), over inner keys
/// present on both sides, folded in ascending key order.
AssocArray MatMul(const AssocArray& a, const AssocArray& b, const Semiring& s);

AssocArray Transpose(const AssocArray& a);

/// dim 1 collapses rows into a single row keyed `label`; dim 2 collapses
/// columns into a single column keyed `label`. Without `fold`, values are
/// summed and a text entry raises CollisionError.
AssocArray Sum(const AssocArray& a, int dim, std::string label = "",
               const std::optional<BinaryOp>& fold = std::nullopt);

}  // namespace d4m

#endif  // D4M_ASSOC_H_
