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

#include "d4m/assoc.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "d4m/error.h"

namespace d4m {
namespace {

AssocValue ApplyAt(const BinaryOp& op, const AssocValue& a, const AssocValue& b,
                   const std::string& row, const std::string& col) {
  try {
    return op(a, b);
  } catch (const CellError&) {
    throw;
  } catch (const std::exception& e) {
    throw CollisionError(row, col, e.what());
  }
}

bool CellLess(const AssocEntry& x, const AssocEntry& y) {
  if (x.row != y.row) return x.row < y.row;
  return x.col < y.col;
}

int CompareCell(const AssocEntry& x, const AssocEntry& y) {
  if (int c = x.row.compare(y.row); c != 0) return c;
  return x.col.compare(y.col);
}

void RequireNumbers(const AssocValue& a, const AssocValue& b, const char* op) {
  if (!a.is_number() || !b.is_number()) {
    throw std::invalid_argument(std::string(op) + " requires numeric operands");
  }
}

// Marks the keys in `keys` (sorted, distinct) accepted by `sel`.
std::vector<bool> SelectorMask(const std::vector<std::string>& keys,
                               const Selector& sel) {
  std::vector<bool> mask(keys.size(), false);
  auto mark = [&](auto first, auto last) {
    for (auto it = first; it != last; ++it) mask[it - keys.begin()] = true;
  };
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SelectAll>) {
          mask.assign(keys.size(), true);
        } else if constexpr (std::is_same_v<S, ExactKeys>) {
          for (const std::string& k : s.keys) {
            auto it = std::lower_bound(keys.begin(), keys.end(), k);
            if (it != keys.end() && *it == k) mask[it - keys.begin()] = true;
          }
        } else if constexpr (std::is_same_v<S, KeyPrefix>) {
          auto first = std::lower_bound(keys.begin(), keys.end(), s.prefix);
          auto last = first;
          while (last != keys.end() && last->starts_with(s.prefix)) ++last;
          mark(first, last);
        } else if constexpr (std::is_same_v<S, KeyRange>) {
          if (s.hi < s.lo) {
            throw RangeError("key range lower bound '" + s.lo +
                             "' exceeds upper bound '" + s.hi + "'");
          }
          mark(std::lower_bound(keys.begin(), keys.end(), s.lo),
               std::upper_bound(keys.begin(), keys.end(), s.hi));
        } else {
          if (s.first < 1 || s.last < s.first) {
            throw RangeError("position range " + std::to_string(s.first) + ":" +
                             std::to_string(s.last) + " is malformed");
          }
          size_t end = std::min(s.last, keys.size());
          for (size_t i = s.first - 1; i < end; ++i) mask[i] = true;
        }
      },
      sel);
  return mask;
}

}  // namespace

std::string FormatNumber(double d) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, end);
}

std::optional<double> ParseNumber(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double d = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(d)) {
    return std::nullopt;
  }
  return d;
}

std::string AssocValue::ToString() const {
  return is_text() ? text() : FormatNumber(number());
}

int Compare(const AssocValue& a, const AssocValue& b) {
  if (a.is_number() && b.is_number()) {
    if (a.number() < b.number()) return -1;
    if (b.number() < a.number()) return 1;
    return 0;
  }
  if (a.is_number()) return -1;
  if (b.is_number()) return 1;
  int c = a.text().compare(b.text());
  return (c > 0) - (c < 0);
}

std::ostream& operator<<(std::ostream& os, const AssocValue& v) {
  if (v.is_text()) return os << "'" << v.text() << "'";
  return os << FormatNumber(v.number());
}

namespace ops {

AssocValue Plus(const AssocValue& a, const AssocValue& b) {
  RequireNumbers(a, b, "plus");
  return a.number() + b.number();
}

AssocValue Minus(const AssocValue& a, const AssocValue& b) {
  RequireNumbers(a, b, "minus");
  return a.number() - b.number();
}

AssocValue Times(const AssocValue& a, const AssocValue& b) {
  RequireNumbers(a, b, "times");
  return a.number() * b.number();
}

AssocValue Max(const AssocValue& a, const AssocValue& b) {
  return Compare(a, b) >= 0 ? a : b;
}

AssocValue Min(const AssocValue& a, const AssocValue& b) {
  return Compare(a, b) <= 0 ? a : b;
}

AssocValue KeepFirst(const AssocValue& a, const AssocValue&) { return a; }

AssocValue KeepLast(const AssocValue&, const AssocValue& b) { return b; }

AssocValue AddOrKeepLast(const AssocValue& a, const AssocValue& b) {
  if (a.is_number() && b.is_number()) return a.number() + b.number();
  return b;
}

}  // namespace ops

Semiring PlusTimes() { return {"plus.times", ops::Plus, ops::Times, true}; }

Semiring MaxMin() { return {"max.min", ops::Max, ops::Min, true}; }

AssocArray AssocArray::FromTriples(std::vector<AssocEntry> entries,
                                   const BinaryOp& collision) {
  std::stable_sort(entries.begin(), entries.end(), CellLess);
  std::vector<AssocEntry> folded;
  folded.reserve(entries.size());
  for (AssocEntry& e : entries) {
    if (!folded.empty() && CompareCell(folded.back(), e) == 0) {
      AssocEntry& last = folded.back();
      last.value = ApplyAt(collision, last.value, e.value, last.row, last.col);
    } else {
      folded.push_back(std::move(e));
    }
  }
  return FromSorted(std::move(folded));
}

AssocArray AssocArray::FromSorted(std::vector<AssocEntry> sorted) {
  AssocArray a;
  a.cols_.reserve(sorted.size());
  for (const AssocEntry& e : sorted) a.cols_.push_back(e.col);
  std::sort(a.cols_.begin(), a.cols_.end());
  a.cols_.erase(std::unique(a.cols_.begin(), a.cols_.end()), a.cols_.end());

  a.col_index_.reserve(sorted.size());
  a.values_.reserve(sorted.size());
  for (AssocEntry& e : sorted) {
    if (a.rows_.empty() || a.rows_.back() != e.row) {
      if (!a.rows_.empty()) a.row_start_.push_back(a.values_.size());
      a.rows_.push_back(std::move(e.row));
    }
    auto it = std::lower_bound(a.cols_.begin(), a.cols_.end(), e.col);
    a.col_index_.push_back(static_cast<uint32_t>(it - a.cols_.begin()));
    a.values_.push_back(std::move(e.value));
  }
  if (!a.rows_.empty()) a.row_start_.push_back(a.values_.size());
  return a;
}

std::vector<AssocEntry> AssocArray::ToTriples() const {
  std::vector<AssocEntry> out;
  out.reserve(nnz());
  ForEach([&](const std::string& r, const std::string& c, const AssocValue& v) {
    out.push_back({r, c, v});
  });
  return out;
}

const AssocValue* AssocArray::Find(std::string_view row,
                                   std::string_view col) const {
  auto rit = std::lower_bound(rows_.begin(), rows_.end(), row);
  if (rit == rows_.end() || *rit != row) return nullptr;
  auto cit = std::lower_bound(cols_.begin(), cols_.end(), col);
  if (cit == cols_.end() || *cit != col) return nullptr;
  size_t r = rit - rows_.begin();
  auto c = static_cast<uint32_t>(cit - cols_.begin());
  auto first = col_index_.begin() + row_start_[r];
  auto last = col_index_.begin() + row_start_[r + 1];
  auto hit = std::lower_bound(first, last, c);
  if (hit == last || *hit != c) return nullptr;
  return &values_[hit - col_index_.begin()];
}

bool AssocArray::CheckInvariants() const {
  if (!std::is_sorted(rows_.begin(), rows_.end()) ||
      std::adjacent_find(rows_.begin(), rows_.end()) != rows_.end()) {
    return false;
  }
  if (!std::is_sorted(cols_.begin(), cols_.end()) ||
      std::adjacent_find(cols_.begin(), cols_.end()) != cols_.end()) {
    return false;
  }
  if (row_start_.size() != rows_.size() + 1 || row_start_.front() != 0 ||
      row_start_.back() != values_.size() ||
      col_index_.size() != values_.size()) {
    return false;
  }
  std::vector<bool> col_used(cols_.size(), false);
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (row_start_[r] >= row_start_[r + 1]) return false;
    for (size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
      if (col_index_[e] >= cols_.size()) return false;
      if (e > row_start_[r] && col_index_[e - 1] >= col_index_[e]) {
        return false;
      }
      col_used[col_index_[e]] = true;
    }
  }
  return std::all_of(col_used.begin(), col_used.end(),
                     [](bool b) { return b; });
}

bool AssocArray::operator==(const AssocArray& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         row_start_ == other.row_start_ && col_index_ == other.col_index_ &&
         values_ == other.values_;
}

std::ostream& operator<<(std::ostream& os, const AssocArray& a) {
  os << "AssocArray(" << a.row_count() << "x" << a.col_count()
     << ", nnz=" << a.nnz() << ")";
  a.ForEach(
      [&](const std::string& r, const std::string& c, const AssocValue& v) {
        os << "\n  (" << r << ", " << c << ") -> " << v;
      });
  return os;
}

AssocArray Select(const AssocArray& a, const Selector& rows,
                  const Selector& cols) {
  std::vector<bool> row_mask = SelectorMask(a.row_keys(), rows);
  std::vector<bool> col_mask = SelectorMask(a.col_keys(), cols);
  std::vector<AssocEntry> kept;
  size_t r = 0;
  const auto& row_keys = a.row_keys();
  const auto& col_keys = a.col_keys();
  a.ForEach(
      [&](const std::string& row, const std::string& col, const AssocValue& v) {
        while (row_keys[r] != row) ++r;
        if (!row_mask[r]) return;
        size_t c = std::lower_bound(col_keys.begin(), col_keys.end(), col) -
                   col_keys.begin();
        if (col_mask[c]) kept.push_back({row, col, v});
      });
  return AssocArray::FromTriples(std::move(kept), ops::KeepLast);
}

AssocArray ValueFilter(const AssocArray& a, Relation relation,
                       const AssocValue& operand) {
  std::vector<AssocEntry> kept;
  a.ForEach(
      [&](const std::string& row, const std::string& col, const AssocValue& v) {
        if (v.is_number() != operand.is_number()) return;
        int c = Compare(v, operand);
        bool match = false;
        switch (relation) {
          case Relation::kEq:
            match = c == 0;
            break;
          case Relation::kLt:
            match = c < 0;
            break;
          case Relation::kLe:
            match = c <= 0;
            break;
          case Relation::kGt:
            match = c > 0;
            break;
          case Relation::kGe:
            match = c >= 0;
            break;
        }
        if (match) kept.push_back({row, col, v});
      });
  return AssocArray::FromTriples(std::move(kept), ops::KeepLast);
}

AssocArray Elementwise(const AssocArray& a, const AssocArray& b,
                       ElementwiseOp op,
                       const std::optional<BinaryOp>& combine) {
  BinaryOp both;
  if (combine) {
    both = *combine;
  } else {
    switch (op) {
      case ElementwiseOp::kAdd:
        both = [](const AssocValue& x, const AssocValue& y) {
          return x.is_number() && y.is_number() ? ops::Plus(x, y)
                                                : ops::Max(x, y);
        };
        break;
      case ElementwiseOp::kOr:
        both = ops::Max;
        break;
      case ElementwiseOp::kAnd:
        both = [](const AssocValue& x, const AssocValue& y) {
          return x.is_number() && y.is_number() ? ops::Times(x, y)
                                                : ops::Min(x, y);
        };
        break;
      case ElementwiseOp::kSubtract:
        break;
    }
  }

  std::vector<AssocEntry> lhs = a.ToTriples();
  std::vector<AssocEntry> rhs = b.ToTriples();
  std::vector<AssocEntry> out;
  out.reserve(lhs.size() + rhs.size());
  bool is_and = op == ElementwiseOp::kAnd;
  bool is_sub = op == ElementwiseOp::kSubtract;

  auto take_a_only = [&](AssocEntry& e) {
    if (!is_and) out.push_back(std::move(e));
  };
  auto take_b_only = [&](AssocEntry& e) {
    if (is_and) return;
    if (is_sub) {
      if (!e.value.is_number()) return;
      e.value = -e.value.number();
    }
    out.push_back(std::move(e));
  };
  auto take_both = [&](AssocEntry& x, const AssocEntry& y) {
    if (is_sub && !combine) {
      if (!x.value.is_number() || !y.value.is_number()) return;
      x.value = x.value.number() - y.value.number();
    } else {
      x.value = ApplyAt(both, x.value, y.value, x.row, x.col);
    }
    out.push_back(std::move(x));
  };

  size_t i = 0;
  size_t j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    int c = CompareCell(lhs[i], rhs[j]);
    if (c < 0) {
      take_a_only(lhs[i++]);
    } else if (c > 0) {
      take_b_only(rhs[j++]);
    } else {
      take_both(lhs[i++], rhs[j++]);
    }
  }
  while (i < lhs.size()) take_a_only(lhs[i++]);
  while (j < rhs.size()) take_b_only(rhs[j++]);
  return AssocArray::FromTriples(std::move(out), ops::KeepLast);
}

AssocArray operator+(const AssocArray& a, const AssocArray& b) {
  return Elementwise(a, b, ElementwiseOp::kAdd);
}
AssocArray operator-(const AssocArray& a, const AssocArray& b) {
  return Elementwise(a, b, ElementwiseOp::kSubtract);
}
AssocArray operator&(const AssocArray& a, const AssocArray& b) {
  return Elementwise(a, b, ElementwiseOp::kAnd);
}
AssocArray operator|(const AssocArray& a, const AssocArray& b) {
  return Elementwise(a, b, ElementwiseOp::kOr);
}

AssocArray MatMul(const AssocArray& a, const AssocArray& b, const Semiring& s) {
  // Map each column of A onto the matching row of B, if any.
  constexpr size_t kNone = static_cast<size_t>(-1);
  std::vector<size_t> inner(a.cols_.size(), kNone);
  for (size_t c = 0, r = 0; c < a.cols_.size() && r < b.rows_.size();) {
    int cmp = a.cols_[c].compare(b.rows_[r]);
    if (cmp < 0) {
      ++c;
    } else if (cmp > 0) {
      ++r;
    } else {
      inner[c++] = r++;
    }
  }

  std::vector<AssocEntry> out;
  std::vector<std::optional<AssocValue>> acc(b.cols_.size());
  std::vector<uint32_t> touched;
  for (size_t r = 0; r < a.rows_.size(); ++r) {
    for (size_t e = a.row_start_[r]; e < a.row_start_[r + 1]; ++e) {
      size_t k = inner[a.col_index_[e]];
      if (k == kNone) continue;
      for (size_t f = b.row_start_[k]; f < b.row_start_[k + 1]; ++f) {
        uint32_t c = b.col_index_[f];
        AssocValue prod =
            ApplyAt(s.mul, a.values_[e], b.values_[f], a.rows_[r], b.cols_[c]);
        if (acc[c]) {
          acc[c] = ApplyAt(s.add, *acc[c], prod, a.rows_[r], b.cols_[c]);
        } else {
          acc[c] = std::move(prod);
          touched.push_back(c);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (uint32_t c : touched) {
      out.push_back({a.rows_[r], b.cols_[c], std::move(*acc[c])});
      acc[c].reset();
    }
    touched.clear();
  }
  return AssocArray::FromSorted(std::move(out));
}

AssocArray Transpose(const AssocArray& a) {
  std::vector<AssocEntry> swapped;
  swapped.reserve(a.nnz());
  a.ForEach([&](const std::string& r, const std::string& c,
                const AssocValue& v) { swapped.push_back({c, r, v}); });
  std::sort(swapped.begin(), swapped.end(), CellLess);
  return AssocArray::FromTriples(std::move(swapped), ops::KeepLast);
}

AssocArray Sum(const AssocArray& a, int dim, std::string label,
               const std::optional<BinaryOp>& fold) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("sum dimension must be 1 or 2");
  }
  const std::vector<std::string>& keep = dim == 1 ? a.col_keys() : a.row_keys();
  std::vector<std::optional<AssocValue>> acc(keep.size());
  size_t r = 0;
  a.ForEach([&](const std::string& row, const std::string& col,
                const AssocValue& v) {
    if (!fold && !v.is_number()) {
      throw CollisionError(row, col, "sum of non-numeric value without a fold");
    }
    while (a.row_keys()[r] != row) ++r;
    size_t slot = dim == 2 ? r
                           : std::lower_bound(keep.begin(), keep.end(), col) -
                                 keep.begin();
    if (!acc[slot]) {
      acc[slot] = v;
    } else if (fold) {
      acc[slot] = ApplyAt(*fold, *acc[slot], v, row, col);
    } else {
      acc[slot] = acc[slot]->number() + v.number();
    }
  });
  std::vector<AssocEntry> out;
  out.reserve(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    if (!acc[i]) continue;
    if (dim == 1) {
      out.push_back({label, keep[i], std::move(*acc[i])});
    } else {
      out.push_back({keep[i], label, std::move(*acc[i])});
    }
  }
  return AssocArray::FromTriples(std::move(out), ops::KeepLast);
}

}  // namespace d4m
