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

#ifndef D4M_ERROR_H_
#define D4M_ERROR_H_

#include <filesystem>
#include <stdexcept>
#include <string>

namespace d4m {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An error attributable to one (row, col) cell.
class CellError : public Error {
 public:
  CellError(std::string row, std::string col, const std::string& what)
      : Error(what + " at (" + row + ", " + col + ")"),
        row_(std::move(row)),
        col_(std::move(col)) {}

  const std::string& row() const { return row_; }
  const std::string& col() const { return col_; }

 private:
  std::string row_;
  std::string col_;
};

/// A collision, combine or fold function failed while building an array.
class CollisionError : public CellError {
 public:
  using CellError::CellError;
};

/// A store-side combiner could not fold an incoming value.
class CombinerError : public CellError {
 public:
  using CellError::CellError;
};

/// Malformed key range or position range.
class RangeError : public Error {
 public:
  using Error::Error;
};

class StoreError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : Error(what + ": " + path.string()), path_(path) {}

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace d4m

#endif  // D4M_ERROR_H_
