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

#include <bit>

#include "paxlab/bytes.hpp"
#include "paxlab/encoders.hpp"
#include "paxlab/status.hpp"

namespace paxlab {

int bit_width(uint64_t v) { return 64 - std::countl_zero(v); }

int max_bit_width(std::span<const uint64_t> values) {
  uint64_t acc = 0;
  for (uint64_t v : values) acc |= v;
  return bit_width(acc);
}

size_t bitpacked_size(size_t count, int width) {
  return (count + 7) / 8 * static_cast<size_t>(width);
}

void bitpack_into(std::span<const uint64_t> values, int width, std::vector<uint8_t>& out) {
  if (width < 0 || width > 64) fail(ErrorCode::kInvalidConfig, "bit width must be in [0, 64]");
  if (width < 64) {
    const uint64_t limit = width == 0 ? 0 : ~uint64_t{0} >> (64 - width);
    for (uint64_t v : values) {
      if (v > limit) {
        fail(ErrorCode::kEncodingOverflow,
             "value " + std::to_string(v) + " needs more than " + std::to_string(width) + " bits");
      }
    }
  }
  if (width == 0 || values.empty()) return;
  const size_t padded = (values.size() + 7) / 8 * 8;
  const size_t start = out.size();
  out.resize(start + bitpacked_size(values.size(), width));
  uint8_t* dst = out.data() + start;
  unsigned __int128 acc = 0;
  int bits = 0;
  for (size_t i = 0; i < padded; ++i) {
    const uint64_t v = i < values.size() ? values[i] : 0;
    acc |= static_cast<unsigned __int128>(v) << bits;
    bits += width;
    while (bits >= 8) {
      *dst++ = static_cast<uint8_t>(acc);
      acc >>= 8;
      bits -= 8;
    }
  }
}

std::vector<uint8_t> bitpack(std::span<const uint64_t> values, int width) {
  std::vector<uint8_t> out;
  bitpack_into(values, width, out);
  return out;
}

std::vector<uint64_t> bitunpack(std::span<const uint8_t> payload, size_t count, int width) {
  if (width < 0 || width > 64) fail(ErrorCode::kDecodeError, "bit width must be in [0, 64]");
  std::vector<uint64_t> out(count, 0);
  if (width == 0 || count == 0) return out;
  if (payload.size() < bitpacked_size(count, width)) {
    fail(ErrorCode::kDecodeError, "bitpacked payload too short");
  }
  const uint64_t mask = width == 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
  unsigned __int128 acc = 0;
  int bits = 0;
  const uint8_t* src = payload.data();
  for (size_t i = 0; i < count; ++i) {
    while (bits < width) {
      acc |= static_cast<unsigned __int128>(*src++) << bits;
      bits += 8;
    }
    out[i] = static_cast<uint64_t>(acc) & mask;
    acc >>= width;
    bits -= width;
  }
  return out;
}

namespace {

size_t rle_value_bytes(int width) { return static_cast<size_t>(width + 7) / 8; }

}  // namespace

EncodedBlock rle_bp_encode(std::span<const uint64_t> values, uint32_t min_run) {
  return rle_bp_encode(values, max_bit_width(values), min_run);
}

EncodedBlock rle_bp_encode(std::span<const uint64_t> values, int width, uint32_t min_run) {
  if (min_run < 1) fail(ErrorCode::kInvalidConfig, "rle_min_run must be >= 1");
  EncodedBlock block;
  block.scheme = EncodingScheme::RleBitpackHybrid;
  block.value_count = values.size();
  if (values.empty()) return block;

  ByteWriter w;
  w.put_u8(static_cast<uint8_t>(width));
  std::vector<uint64_t> literals;
  auto flush_literals = [&] {
    if (literals.empty()) return;
    w.put_varint(((literals.size() + 7) / 8) << 1 | 1);
    bitpack_into(literals, width, w.buffer());
    literals.clear();
  };

  const size_t n = values.size();
  size_t i = 0;
  while (i < n) {
    size_t j = i + 1;
    while (j < n && values[j] == values[i]) ++j;
    size_t run = j - i;
    if (run >= min_run) {
      // An RLE run may only start on a literal group boundary.
      const size_t partial = literals.size() % 8;
      if (partial != 0) {
        const size_t fill = 8 - partial;
        if (run < fill + min_run) {
          literals.insert(literals.end(), values.begin() + i, values.begin() + j);
          i = j;
          continue;
        }
        literals.insert(literals.end(), fill, values[i]);
        run -= fill;
      }
      flush_literals();
      w.put_varint(uint64_t{run} << 1);
      w.put_le(values[i], rle_value_bytes(width));
    } else {
      literals.insert(literals.end(), values.begin() + i, values.begin() + j);
    }
    i = j;
  }
  flush_literals();
  block.payload = w.take();
  return block;
}

namespace {

template <typename OnRun>
void walk_rle_bp(const EncodedBlock& block, OnRun on_run) {
  if (block.value_count == 0) return;
  ByteReader r(block.payload);
  const int width = r.u8();
  if (width > 64) fail(ErrorCode::kDecodeError, "rle/bitpack width above 64");
  uint64_t produced = 0;
  while (produced < block.value_count) {
    const uint64_t header = r.varint();
    if ((header & 1) == 0) {
      const uint64_t len = header >> 1;
      if (len == 0) fail(ErrorCode::kDecodeError, "empty RLE run");
      const uint64_t value = r.le(rle_value_bytes(width));
      const uint64_t take = std::min(len, block.value_count - produced);
      on_run(true, len, take, value, std::span<const uint8_t>{}, width);
      produced += take;
    } else {
      const uint64_t groups = header >> 1;
      if (groups == 0) fail(ErrorCode::kDecodeError, "empty bitpacked run");
      const size_t bytes = r.checked_len(groups * static_cast<uint64_t>(width));
      auto packed = r.bytes(bytes);
      const uint64_t take = std::min(groups * 8, block.value_count - produced);
      on_run(false, groups * 8, take, 0, packed, width);
      produced += take;
    }
  }
}

}  // namespace

std::vector<uint64_t> rle_bp_decode(const EncodedBlock& block) {
  std::vector<uint64_t> out;
  out.reserve(block.value_count);
  walk_rle_bp(block, [&](bool rle, uint64_t, uint64_t take, uint64_t value,
                         std::span<const uint8_t> packed, int width) {
    if (rle) {
      out.insert(out.end(), take, value);
    } else {
      auto vals = bitunpack(packed, take, width);
      out.insert(out.end(), vals.begin(), vals.end());
    }
  });
  return out;
}

std::vector<RleBpRun> rle_bp_runs(const EncodedBlock& block) {
  std::vector<RleBpRun> runs;
  walk_rle_bp(block, [&](bool rle, uint64_t len, uint64_t, uint64_t, std::span<const uint8_t>,
                         int) { runs.push_back({rle, len}); });
  return runs;
}

}  // namespace paxlab
