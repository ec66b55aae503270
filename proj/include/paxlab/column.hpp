// Copyright 2026 The paxlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace paxlab {

enum class LogicalType : uint8_t { Int64 = 0, Float64 = 1, Utf8String = 2, Bool = 3 };

const char* logical_type_name(LogicalType type);
std::optional<LogicalType> parse_logical_type(std::string_view name);

// A single typed value. Used for zone-map bounds, dictionary entries and
// predicate literals.
using Scalar = std::variant<int64_t, double, std::string, bool>;

LogicalType scalar_type(const Scalar& value);
std::string scalar_to_string(const Scalar& value);

// Total order within one logical type. Floats compare numerically; two floats
// with identical bit patterns are equal even when NaN.
int compare_scalars(const Scalar& a, const Scalar& b);
bool scalars_identical(const Scalar& a, const Scalar& b);

// Packed bitset, LSB-first within 64-bit words. Doubles as the validity
// bitmap (1 = present) and the selection bitvector (1 = selected).
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(size_t size, bool value = false);

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(size_t i, bool value) {
    const uint64_t mask = uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void push_back(bool value);
  void resize(size_t size, bool value = false);

  size_t count() const;
  size_t count_range(size_t begin, size_t end) const;
  bool all() const { return count() == size_; }

  Bitmap slice(size_t begin, size_t end) const;
  void append(const Bitmap& other);

  // Little-endian packed bytes, ceil(size/8) long, trailing bits zero.
  std::vector<uint8_t> to_bytes() const;
  static Bitmap from_bytes(std::span<const uint8_t> bytes, size_t size);

  std::span<const uint64_t> words() const { return words_; }

  friend bool operator==(const Bitmap& a, const Bitmap& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  void clear_tail();

  size_t size_ = 0;
  std::vector<uint64_t> words_;
};

// Typed value array plus validity bitmap. Null slots hold a placeholder
// (0 / 0.0 / "" / false) that statistics and encoders never read.
class ColumnVector {
 public:
  using Values = std::variant<std::vector<int64_t>, std::vector<double>, std::vector<std::string>,
                              std::vector<uint8_t>>;

  ColumnVector() : ColumnVector(LogicalType::Int64) {}
  explicit ColumnVector(LogicalType type);

  static ColumnVector from_int64(std::vector<int64_t> values, std::optional<Bitmap> validity = {});
  static ColumnVector from_double(std::vector<double> values, std::optional<Bitmap> validity = {});
  static ColumnVector from_strings(std::vector<std::string> values,
                                   std::optional<Bitmap> validity = {});
  static ColumnVector from_bools(std::vector<uint8_t> values, std::optional<Bitmap> validity = {});
  // Builds a column from optional values; nullopt becomes a null slot.
  static ColumnVector from_scalars(LogicalType type, const std::vector<std::optional<Scalar>>& values);

  LogicalType type() const { return type_; }
  size_t size() const { return validity_.size(); }
  bool empty() const { return size() == 0; }

  const Bitmap& validity() const { return validity_; }
  bool is_valid(size_t i) const { return validity_.get(i); }
  size_t null_count() const { return size() - validity_.count(); }
  size_t present_count() const { return validity_.count(); }

  const std::vector<int64_t>& ints() const { return std::get<std::vector<int64_t>>(values_); }
  const std::vector<double>& doubles() const { return std::get<std::vector<double>>(values_); }
  const std::vector<std::string>& strings() const {
    return std::get<std::vector<std::string>>(values_);
  }
  const std::vector<uint8_t>& bools() const { return std::get<std::vector<uint8_t>>(values_); }
  const Values& values() const { return values_; }

  Scalar scalar_at(size_t i) const;

  void append_null();
  void append(const Scalar& value);
  void append_from(const ColumnVector& other, size_t row);
  void append_all(const ColumnVector& other);
  void reserve(size_t n);

  ColumnVector slice(size_t begin, size_t end) const;
  // Keeps rows whose bit is set in `selection`, which covers rows
  // [offset, offset + selection-range) of this column.
  ColumnVector filter(const Bitmap& selection, size_t offset = 0) const;

  // The present values only, in row order.
  ColumnVector compact() const;

  // Equality treats null slots as equal regardless of placeholder and floats
  // by bit pattern.
  friend bool operator==(const ColumnVector& a, const ColumnVector& b);

 private:
  LogicalType type_;
  Bitmap validity_;
  Values values_;
};

struct NamedColumn {
  std::string name;
  ColumnVector column;

  friend bool operator==(const NamedColumn& a, const NamedColumn& b) {
    return a.name == b.name && a.column == b.column;
  }
};

class Table {
 public:
  Table() = default;
  explicit Table(size_t row_count) : row_count_(row_count) {}

  void add_column(std::string name, ColumnVector column);

  size_t row_count() const { return row_count_; }
  size_t column_count() const { return columns_.size(); }
  const std::vector<NamedColumn>& columns() const { return columns_; }
  const ColumnVector& column(size_t i) const { return columns_.at(i).column; }
  const std::string& name(size_t i) const { return columns_.at(i).name; }
  std::optional<size_t> find(std::string_view name) const;

  Table select_columns(const std::vector<std::string>& names) const;

  friend bool operator==(const Table& a, const Table& b) {
    return a.row_count_ == b.row_count_ && a.columns_ == b.columns_;
  }

 private:
  size_t row_count_ = 0;
  std::vector<NamedColumn> columns_;
};

}  // namespace paxlab
