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

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paxlab/status.hpp"

namespace paxlab {

inline uint64_t zigzag_encode(int64_t v) {
  return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}
inline int64_t zigzag_decode(uint64_t v) {
  return static_cast<int64_t>((v >> 1) ^ (~(v & 1) + 1));
}

// Little-endian append-only writer.
class ByteWriter {
 public:
  ByteWriter() = default;

  void put_u8(uint8_t v) { buf_.push_back(v); }
  void put_u16(uint16_t v) { put_le(v, 2); }
  void put_u32(uint32_t v) { put_le(v, 4); }
  void put_u64(uint64_t v) { put_le(v, 8); }
  void put_le(uint64_t v, size_t bytes) {
    for (size_t i = 0; i < bytes; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void put_f64(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(bits);
  }
  void put_varint(uint64_t v) {
    while (v >= 0x80) {
      buf_.push_back(static_cast<uint8_t>(v | 0x80));
      v >>= 7;
    }
    buf_.push_back(static_cast<uint8_t>(v));
  }
  void put_svarint(int64_t v) { put_varint(zigzag_encode(v)); }
  void put_bytes(std::span<const uint8_t> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }
  void put_bytes(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
  // Varint length prefix followed by the bytes.
  void put_blob(std::span<const uint8_t> bytes) {
    put_varint(bytes.size());
    put_bytes(bytes);
  }
  void put_string(std::string_view s) {
    put_varint(s.size());
    put_bytes(s);
  }

  size_t size() const { return buf_.size(); }
  std::vector<uint8_t>& buffer() { return buf_; }
  std::vector<uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<uint8_t> buf_;
};

// Bounds-checked reader; overruns raise `overrun_code`.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data, ErrorCode overrun_code = ErrorCode::kDecodeError)
      : data_(data), code_(overrun_code) {}

  uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  uint16_t u16() { return static_cast<uint16_t>(le(2)); }
  uint32_t u32() { return static_cast<uint32_t>(le(4)); }
  uint64_t u64() { return le(8); }
  uint64_t le(size_t bytes) {
    need(bytes);
    uint64_t v = 0;
    for (size_t i = 0; i < bytes; ++i) v |= uint64_t{data_[pos_ + i]} << (8 * i);
    pos_ += bytes;
    return v;
  }
  double f64() {
    const uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  uint64_t varint() {
    uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const uint8_t b = u8();
      v |= uint64_t{b & 0x7fU} << shift;
      if ((b & 0x80) == 0) return v;
    }
    fail(code_, "varint longer than 10 bytes");
  }
  int64_t svarint() { return zigzag_decode(varint()); }
  std::span<const uint8_t> bytes(size_t n) {
    need(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::span<const uint8_t> blob() { return bytes(checked_len(varint())); }
  std::string string() {
    auto b = blob();
    return std::string(b.begin(), b.end());
  }
  // Guards length fields before they size an allocation.
  size_t checked_len(uint64_t n) const {
    if (n > remaining()) fail(code_, "length field exceeds remaining bytes");
    return static_cast<size_t>(n);
  }

  size_t position() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  void seek(size_t pos) {
    if (pos > data_.size()) fail(code_, "seek past end");
    pos_ = pos;
  }

 private:
  void need(size_t n) const {
    if (n > data_.size() - pos_) fail(code_, "unexpected end of data");
  }

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
  ErrorCode code_;
};

}  // namespace paxlab
