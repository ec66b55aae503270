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

#include "paxlab/column.hpp"

#include <bit>
#include <cstring>
#include <unordered_set>

#include "paxlab/status.hpp"

namespace paxlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyColumn: return "EmptyColumn";
    case ErrorCode::kNotEnoughValues: return "NotEnoughValues";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kEncodingOverflow: return "EncodingOverflow";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidProjection: return "InvalidProjection";
    case ErrorCode::kDecodeError: return "DecodeError";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kInvalidLevels: return "InvalidLevels";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

const char* logical_type_name(LogicalType type) {
  switch (type) {
    case LogicalType::Int64: return "int64";
    case LogicalType::Float64: return "float64";
    case LogicalType::Utf8String: return "string";
    case LogicalType::Bool: return "bool";
  }
  return "unknown";
}

std::optional<LogicalType> parse_logical_type(std::string_view name) {
  if (name == "int64" || name == "int") return LogicalType::Int64;
  if (name == "float64" || name == "float") return LogicalType::Float64;
  if (name == "string" || name == "utf8") return LogicalType::Utf8String;
  if (name == "bool") return LogicalType::Bool;
  return std::nullopt;
}

LogicalType scalar_type(const Scalar& value) {
  return static_cast<LogicalType>(value.index());
}

std::string scalar_to_string(const Scalar& value) {
  switch (value.index()) {
    case 0: return std::to_string(std::get<int64_t>(value));
    case 1: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(value));
      return buf;
    }
    case 2: return std::get<std::string>(value);
    default: return std::get<bool>(value) ? "true" : "false";
  }
}

int compare_scalars(const Scalar& a, const Scalar& b) {
  if (a.index() != b.index()) {
    fail(ErrorCode::kTypeMismatch, "comparing scalars of different types");
  }
  switch (a.index()) {
    case 0: {
      const auto x = std::get<int64_t>(a), y = std::get<int64_t>(b);
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case 1: {
      const double x = std::get<double>(a), y = std::get<double>(b);
      if (x < y) return -1;
      if (x > y) return 1;
      if (x == y) return 0;
      // At least one NaN: order by bit pattern so the relation stays total.
      const auto bx = std::bit_cast<uint64_t>(x), by = std::bit_cast<uint64_t>(y);
      return bx < by ? -1 : (bx > by ? 1 : 0);
    }
    case 2: {
      const int c = std::get<std::string>(a).compare(std::get<std::string>(b));
      return (c > 0) - (c < 0);
    }
    default: return static_cast<int>(std::get<bool>(a)) - static_cast<int>(std::get<bool>(b));
  }
}

bool scalars_identical(const Scalar& a, const Scalar& b) {
  if (a.index() != b.index()) return false;
  if (a.index() == 1) {
    return std::bit_cast<uint64_t>(std::get<double>(a)) == std::bit_cast<uint64_t>(std::get<double>(b));
  }
  return a == b;
}

// ---------------------------------------------------------------------------
// Bitmap

Bitmap::Bitmap(size_t size, bool value) : size_(size), words_((size + 63) / 64, value ? ~uint64_t{0} : 0) {
  clear_tail();
}

void Bitmap::clear_tail() {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (uint64_t{1} << (size_ % 64)) - 1;
  }
}

void Bitmap::push_back(bool value) {
  if (size_ % 64 == 0) words_.push_back(0);
  ++size_;
  set(size_ - 1, value);
}

void Bitmap::resize(size_t size, bool value) {
  if (size <= size_) {
    size_ = size;
    words_.resize((size + 63) / 64);
    clear_tail();
    return;
  }
  const size_t old = size_;
  size_ = size;
  words_.resize((size + 63) / 64, value ? ~uint64_t{0} : 0);
  if (value) {
    for (size_t i = old; i < size && (i % 64) != 0; ++i) set(i, true);
  }
  clear_tail();
}

size_t Bitmap::count() const {
  size_t n = 0;
  for (uint64_t w : words_) n += static_cast<size_t>(std::popcount(w));
  return n;
}

size_t Bitmap::count_range(size_t begin, size_t end) const {
  if (begin >= end) return 0;
  size_t n = 0;
  size_t first_word = begin >> 6, last_word = (end - 1) >> 6;
  for (size_t w = first_word; w <= last_word; ++w) {
    uint64_t bits = words_[w];
    if (w == first_word) bits &= ~uint64_t{0} << (begin & 63);
    if (w == last_word && (end & 63) != 0) bits &= (uint64_t{1} << (end & 63)) - 1;
    n += static_cast<size_t>(std::popcount(bits));
  }
  return n;
}

Bitmap Bitmap::slice(size_t begin, size_t end) const {
  Bitmap out(end - begin);
  if ((begin & 63) == 0) {
    std::memcpy(out.words_.data(), words_.data() + (begin >> 6), out.words_.size() * 8);
    out.clear_tail();
    return out;
  }
  for (size_t i = begin; i < end; ++i) {
    if (get(i)) out.set(i - begin, true);
  }
  return out;
}

void Bitmap::append(const Bitmap& other) {
  if (size_ % 64 == 0) {
    words_.insert(words_.end(), other.words_.begin(), other.words_.end());
    size_ += other.size_;
    return;
  }
  const size_t old = size_;
  resize(size_ + other.size_);
  for (size_t i = 0; i < other.size_; ++i) {
    if (other.get(i)) set(old + i, true);
  }
}

std::vector<uint8_t> Bitmap::to_bytes() const {
  std::vector<uint8_t> out((size_ + 7) / 8);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>(words_[i / 8] >> ((i % 8) * 8));
  }
  return out;
}

Bitmap Bitmap::from_bytes(std::span<const uint8_t> bytes, size_t size) {
  Bitmap out(size);
  for (size_t i = 0; i < (size + 7) / 8 && i < bytes.size(); ++i) {
    out.words_[i / 8] |= static_cast<uint64_t>(bytes[i]) << ((i % 8) * 8);
  }
  out.clear_tail();
  return out;
}

// ---------------------------------------------------------------------------
// ColumnVector

namespace {

ColumnVector::Values empty_values(LogicalType type) {
  switch (type) {
    case LogicalType::Int64: return std::vector<int64_t>{};
    case LogicalType::Float64: return std::vector<double>{};
    case LogicalType::Utf8String: return std::vector<std::string>{};
    case LogicalType::Bool: return std::vector<uint8_t>{};
  }
  return std::vector<int64_t>{};
}

template <typename T>
void blank_nulls(std::vector<T>& values, const Bitmap& validity) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (!validity.get(i)) values[i] = T{};
  }
}

}  // namespace

ColumnVector::ColumnVector(LogicalType type) : type_(type), values_(empty_values(type)) {}

#define PAXLAB_FROM_VECTOR(NAME, TYPE, LOGICAL)                                         \
  ColumnVector ColumnVector::NAME(std::vector<TYPE> values, std::optional<Bitmap> validity) { \
    ColumnVector out(LOGICAL);                                                          \
    Bitmap bits = validity ? std::move(*validity) : Bitmap(values.size(), true);        \
    if (bits.size() != values.size()) {                                                 \
      fail(ErrorCode::kInvalidConfig, "validity length differs from value count");      \
    }                                                                                   \
    blank_nulls(values, bits);                                                          \
    out.validity_ = std::move(bits);                                                    \
    out.values_ = std::move(values);                                                    \
    return out;                                                                         \
  }

PAXLAB_FROM_VECTOR(from_int64, int64_t, LogicalType::Int64)
PAXLAB_FROM_VECTOR(from_double, double, LogicalType::Float64)
PAXLAB_FROM_VECTOR(from_strings, std::string, LogicalType::Utf8String)
PAXLAB_FROM_VECTOR(from_bools, uint8_t, LogicalType::Bool)

#undef PAXLAB_FROM_VECTOR

ColumnVector ColumnVector::from_scalars(LogicalType type,
                                        const std::vector<std::optional<Scalar>>& values) {
  ColumnVector out(type);
  out.reserve(values.size());
  for (const auto& v : values) {
    if (v) {
      out.append(*v);
    } else {
      out.append_null();
    }
  }
  return out;
}

Scalar ColumnVector::scalar_at(size_t i) const {
  switch (type_) {
    case LogicalType::Int64: return ints()[i];
    case LogicalType::Float64: return doubles()[i];
    case LogicalType::Utf8String: return strings()[i];
    case LogicalType::Bool: return bools()[i] != 0;
  }
  return int64_t{0};
}

void ColumnVector::append_null() {
  validity_.push_back(false);
  std::visit([](auto& v) { v.emplace_back(); }, values_);
}

void ColumnVector::append(const Scalar& value) {
  if (scalar_type(value) != type_) {
    fail(ErrorCode::kTypeMismatch, "appending value of wrong type");
  }
  validity_.push_back(true);
  switch (type_) {
    case LogicalType::Int64: std::get<0>(values_).push_back(std::get<int64_t>(value)); break;
    case LogicalType::Float64: std::get<1>(values_).push_back(std::get<double>(value)); break;
    case LogicalType::Utf8String: std::get<2>(values_).push_back(std::get<std::string>(value)); break;
    case LogicalType::Bool: std::get<3>(values_).push_back(std::get<bool>(value) ? 1 : 0); break;
  }
}

void ColumnVector::append_from(const ColumnVector& other, size_t row) {
  validity_.push_back(other.validity_.get(row));
  std::visit(
      [&](auto& dst) {
        using V = std::decay_t<decltype(dst)>;
        dst.push_back(std::get<V>(other.values_)[row]);
      },
      values_);
}

void ColumnVector::append_all(const ColumnVector& other) {
  if (other.type_ != type_) fail(ErrorCode::kTypeMismatch, "appending column of wrong type");
  validity_.append(other.validity_);
  std::visit(
      [&](auto& dst) {
        using V = std::decay_t<decltype(dst)>;
        const auto& src = std::get<V>(other.values_);
        dst.insert(dst.end(), src.begin(), src.end());
      },
      values_);
}

void ColumnVector::reserve(size_t n) {
  std::visit([n](auto& v) { v.reserve(n); }, values_);
}

ColumnVector ColumnVector::slice(size_t begin, size_t end) const {
  ColumnVector out(type_);
  out.validity_ = validity_.slice(begin, end);
  std::visit(
      [&](const auto& src) {
        using V = std::decay_t<decltype(src)>;
        out.values_ = V(src.begin() + static_cast<ptrdiff_t>(begin),
                        src.begin() + static_cast<ptrdiff_t>(end));
      },
      values_);
  return out;
}

ColumnVector ColumnVector::filter(const Bitmap& selection, size_t offset) const {
  ColumnVector out(type_);
  out.reserve(selection.count());
  for (size_t i = 0; i < selection.size(); ++i) {
    if (selection.get(i)) out.append_from(*this, offset + i);
  }
  return out;
}

ColumnVector ColumnVector::compact() const {
  ColumnVector out(type_);
  out.reserve(present_count());
  for (size_t i = 0; i < size(); ++i) {
    if (validity_.get(i)) out.append_from(*this, i);
  }
  return out;
}

bool operator==(const ColumnVector& a, const ColumnVector& b) {
  if (a.type_ != b.type_ || !(a.validity_ == b.validity_)) return false;
  const size_t n = a.size();
  switch (a.type_) {
    case LogicalType::Int64:
      for (size_t i = 0; i < n; ++i) {
        if (a.validity_.get(i) && a.ints()[i] != b.ints()[i]) return false;
      }
      return true;
    case LogicalType::Float64:
      for (size_t i = 0; i < n; ++i) {
        if (a.validity_.get(i) &&
            std::bit_cast<uint64_t>(a.doubles()[i]) != std::bit_cast<uint64_t>(b.doubles()[i])) {
          return false;
        }
      }
      return true;
    case LogicalType::Utf8String:
      for (size_t i = 0; i < n; ++i) {
        if (a.validity_.get(i) && a.strings()[i] != b.strings()[i]) return false;
      }
      return true;
    case LogicalType::Bool:
      for (size_t i = 0; i < n; ++i) {
        if (a.validity_.get(i) && (a.bools()[i] != 0) != (b.bools()[i] != 0)) return false;
      }
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Table

void Table::add_column(std::string name, ColumnVector column) {
  if (columns_.empty() && row_count_ == 0) row_count_ = column.size();
  if (column.size() != row_count_) {
    fail(ErrorCode::kInvalidConfig, "column '" + name + "' length differs from table row count");
  }
  if (find(name)) fail(ErrorCode::kInvalidConfig, "duplicate column name '" + name + "'");
  columns_.push_back({std::move(name), std::move(column)});
}

std::optional<size_t> Table::find(std::string_view name) const {
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

Table Table::select_columns(const std::vector<std::string>& names) const {
  Table out(row_count_);
  for (const auto& n : names) {
    auto idx = find(n);
    if (!idx) fail(ErrorCode::kInvalidProjection, "no column named '" + n + "'");
    out.add_column(n, columns_[*idx].column);
  }
  return out;
}

}  // namespace paxlab
