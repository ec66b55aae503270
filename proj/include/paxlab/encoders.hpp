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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "paxlab/column.hpp"

namespace paxlab {

enum class EncodingScheme : uint8_t { Plain = 0, RleBitpackHybrid = 1, OrcHybrid = 2, Dict = 3 };

const char* encoding_scheme_name(EncodingScheme scheme);

struct EncodedBlock {
  EncodingScheme scheme = EncodingScheme::Plain;
  uint64_t value_count = 0;
  std::vector<uint8_t> payload;

  friend bool operator==(const EncodedBlock&, const EncodedBlock&) = default;
};

enum class PolicyStyle : uint8_t { ParquetLike, OrcLike, PlainOnly };

const char* policy_style_name(PolicyStyle style);
std::optional<PolicyStyle> parse_policy_style(std::string_view name);

struct EncodingPolicy {
  PolicyStyle style = PolicyStyle::ParquetLike;
  uint64_t dict_size_limit_bytes = uint64_t{1} << 20;
  double ndv_ratio_threshold = 0.8;
  uint32_t rle_min_run = 8;

  static EncodingPolicy parquet_like() { return {}; }
  static EncodingPolicy orc_like() {
    EncodingPolicy p;
    p.style = PolicyStyle::OrcLike;
    return p;
  }
  static EncodingPolicy plain_only() {
    EncodingPolicy p;
    p.style = PolicyStyle::PlainOnly;
    return p;
  }
  friend bool operator==(const EncodingPolicy&, const EncodingPolicy&) = default;
};

void validate(const EncodingPolicy& policy);

// ---- bitpacking ----

// Bits needed to represent v (0 for v == 0).
int bit_width(uint64_t v);
int max_bit_width(std::span<const uint64_t> values);
size_t bitpacked_size(size_t count, int width);

// Groups of 8 values, LSB-first, last group zero-padded.
std::vector<uint8_t> bitpack(std::span<const uint64_t> values, int width);
void bitpack_into(std::span<const uint64_t> values, int width, std::vector<uint8_t>& out);
std::vector<uint64_t> bitunpack(std::span<const uint8_t> payload, size_t count, int width);

// ---- RLE / bitpack hybrid ----
//
// payload = width:u8, then runs until value_count values are produced:
//   RLE run       varint(len << 1), value in ceil(width/8) bytes LE
//   bitpack run   varint(groups << 1 | 1), groups * width bytes

EncodedBlock rle_bp_encode(std::span<const uint64_t> values, uint32_t min_run = 8);
// Packs at an explicit width (must cover every value).
EncodedBlock rle_bp_encode(std::span<const uint64_t> values, int width, uint32_t min_run);
std::vector<uint64_t> rle_bp_decode(const EncodedBlock& block);

struct RleBpRun {
  bool rle = false;
  // Values carried by the run; bitpacked runs count whole groups.
  uint64_t length = 0;
};
std::vector<RleBpRun> rle_bp_runs(const EncodedBlock& block);

// ---- ORC-style four-scheme integer encoder ----
//
// Each subsequence starts with a tag in the top two bits of its first byte.
//   SHORT_REPEAT 00 | (W-1):3 | (len-3):3, then zigzag value in W bytes LE
//   DIRECT       01 | width:6, len-1:u16, zigzag values bitpacked
//   PATCHED_BASE 10 | width:6, len-1:u16, svarint base, (v-base) low bits
//                bitpacked, varint patches, per patch u16 pos + varint high bits
//   DELTA        11 | width:6, len-1:u16, svarint first value, zigzag deltas
//                bitpacked
// Bits are packed back to back (no group padding). A width code of 63
// stands for 64 bits.

enum class OrcTag : uint8_t { ShortRepeat = 0, Direct = 1, PatchedBase = 2, Delta = 3 };

const char* orc_tag_name(OrcTag tag);

inline constexpr size_t kOrcMaxRun = 512;

EncodedBlock orc_encode(std::span<const int64_t> values);
std::vector<int64_t> orc_decode(const EncodedBlock& block);

struct OrcRun {
  OrcTag tag = OrcTag::Direct;
  size_t length = 0;
  int width = 0;
  size_t patches = 0;
};
std::vector<OrcRun> orc_runs(const EncodedBlock& block);

// ---- presence (validity) ----
//
// Byte RLE over the packed bitmap: varint(n << 1) + one byte repeated n
// times, or varint(n << 1 | 1) + n literal bytes.
std::vector<uint8_t> presence_encode(const Bitmap& validity);
Bitmap presence_decode(std::span<const uint8_t> payload, size_t bits);

// ---- plain values ----
//
// Int64 / Float64 as 8 bytes LE, strings as u32 length + bytes, bools one
// byte each. Only the present values are written.
void plain_encode_into(const ColumnVector& col, std::vector<uint8_t>& out);
std::vector<uint8_t> plain_encode(const ColumnVector& col);
// Decodes `count` values; `consumed` receives the byte length read.
ColumnVector plain_decode(LogicalType type, std::span<const uint8_t> payload, size_t count,
                          size_t* consumed = nullptr);

// ---- dictionaries ----

struct Dictionary {
  ColumnVector entries;
  uint64_t byte_size = 0;
  bool overflowed = false;
};

struct DictEncoding {
  bool plain_fallback = false;
  Dictionary dictionary;
  // Codes of the leading present values, in row order.
  EncodedBlock codes;
  // Present values after a ParquetLike overflow, stored plain.
  ColumnVector spill;
};

// Byte size an entry contributes to the dictionary limit.
uint64_t dictionary_entry_bytes(const ColumnVector& entries, size_t i);

DictEncoding dict_encode(const ColumnVector& col, const EncodingPolicy& policy);
// Rebuilds the present values from a non-fallback DictEncoding.
ColumnVector dict_decode(const DictEncoding& enc, LogicalType type);

// ---- column chunks ----

enum class ChunkEncoding : uint8_t { Plain = 0, Dict = 1, OrcHybrid = 2, ByteRle = 3 };

const char* chunk_encoding_name(ChunkEncoding encoding);

struct EncodedChunk {
  ChunkEncoding encoding = ChunkEncoding::Plain;
  // Empty unless encoding == Dict.
  std::vector<uint8_t> dictionary;
  std::vector<std::vector<uint8_t>> pages;
  std::vector<uint64_t> page_rows;
};

// Splits `col` into pages of `page_rows` rows (last may be shorter).
EncodedChunk encode_column_chunk(const ColumnVector& col, const EncodingPolicy& policy,
                                 size_t page_rows);

class ChunkDecoder {
 public:
  ChunkDecoder(LogicalType type, ChunkEncoding encoding, std::span<const uint8_t> dictionary);

  ColumnVector decode_page(std::span<const uint8_t> page, size_t rows) const;
  const ColumnVector& dictionary() const { return dict_; }

 private:
  LogicalType type_;
  ChunkEncoding encoding_;
  ColumnVector dict_;
  bool orc_dict_ = false;
};

ColumnVector decode_column_chunk(const EncodedChunk& chunk, LogicalType type);

}  // namespace paxlab
