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

#include <algorithm>

#include "paxlab/bytes.hpp"
#include "paxlab/encoders.hpp"
#include "paxlab/status.hpp"

namespace paxlab {

const char* orc_tag_name(OrcTag tag) {
  switch (tag) {
    case OrcTag::ShortRepeat: return "SHORT_REPEAT";
    case OrcTag::Direct: return "DIRECT";
    case OrcTag::PatchedBase: return "PATCHED_BASE";
    case OrcTag::Delta: return "DELTA";
  }
  return "UNKNOWN";
}

namespace {

constexpr size_t kMinShortRepeat = 3;
constexpr size_t kMaxShortRepeat = 10;
constexpr size_t kMinDelta = 4;

uint8_t width_code(int width) { return static_cast<uint8_t>(width >= 63 ? 63 : width); }
int code_width(uint8_t code) { return code == 63 ? 64 : code; }

uint64_t wrap_sub(int64_t a, int64_t b) {
  return static_cast<uint64_t>(a) - static_cast<uint64_t>(b);
}

// ORC runs pack bits back to back with no 8-value group padding.
size_t tight_size(size_t count, int width) { return (count * static_cast<size_t>(width) + 7) / 8; }

void pack_tight(std::span<const uint64_t> values, int width, std::vector<uint8_t>& out) {
  if (width == 0 || values.empty()) return;
  unsigned __int128 acc = 0;
  int bits = 0;
  for (uint64_t v : values) {
    acc |= static_cast<unsigned __int128>(v) << bits;
    bits += width;
    while (bits >= 8) {
      out.push_back(static_cast<uint8_t>(acc));
      acc >>= 8;
      bits -= 8;
    }
  }
  if (bits > 0) out.push_back(static_cast<uint8_t>(acc));
}

std::vector<uint64_t> unpack_tight(std::span<const uint8_t> payload, size_t count, int width) {
  std::vector<uint64_t> out(count, 0);
  if (width == 0) return out;
  const uint64_t mask = width == 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
  unsigned __int128 acc = 0;
  int bits = 0;
  size_t pos = 0;
  for (size_t i = 0; i < count; ++i) {
    while (bits < width) {
      acc |= static_cast<unsigned __int128>(payload[pos++]) << bits;
      bits += 8;
    }
    out[i] = static_cast<uint64_t>(acc) & mask;
    acc >>= width;
    bits -= width;
  }
  return out;
}

size_t varint_size(uint64_t v) {
  size_t n = 1;
  while (v >= 0x80) {
    v >>= 7;
    ++n;
  }
  return n;
}

class OrcWriter {
 public:
  explicit OrcWriter(std::span<const int64_t> v) : v_(v) {}

  std::vector<uint8_t> run() {
    const size_t n = v_.size();
    size_t i = 0;
    while (i < n) {
      const size_t same = identical_run(i);
      if (same >= kMinShortRepeat && same <= kMaxShortRepeat) {
        short_repeat(i, same);
        i += same;
        continue;
      }
      if (same > kMaxShortRepeat) {
        delta(i, same);
        i += same;
        continue;
      }
      const size_t mono = monotonic_run(i);
      if (mono >= kMinDelta && delta_pays(i, mono)) {
        delta(i, mono);
        i += mono;
        continue;
      }
      size_t j = i + 1;
      while (j < n && j - i < kOrcMaxRun) {
        if (identical_run(j) >= kMinShortRepeat) break;
        const size_t m = monotonic_run(j);
        if (m >= kMinDelta && delta_pays(j, m)) break;
        ++j;
      }
      literal(i, j - i);
      i = j;
    }
    return w_.take();
  }

 private:
  size_t identical_run(size_t i) const {
    size_t j = i + 1;
    while (j < v_.size() && j - i < kOrcMaxRun && v_[j] == v_[i]) ++j;
    return j - i;
  }

  // Longest run from i whose adjacent differences share one sign.
  size_t monotonic_run(size_t i) const {
    int dir = 0;
    size_t j = i + 1;
    while (j < v_.size() && j - i < kOrcMaxRun) {
      const int d = (v_[j] > v_[j - 1]) - (v_[j] < v_[j - 1]);
      if (d != 0) {
        if (dir == 0) {
          dir = d;
        } else if (d != dir) {
          break;
        }
      }
      ++j;
    }
    return j - i;
  }

  int delta_width(size_t i, size_t len) const {
    uint64_t acc = 0;
    for (size_t k = i + 1; k < i + len; ++k) {
      acc |= zigzag_encode(static_cast<int64_t>(wrap_sub(v_[k], v_[k - 1])));
    }
    return bit_width(acc);
  }

  int zigzag_width(size_t i, size_t len) const {
    uint64_t acc = 0;
    for (size_t k = i; k < i + len; ++k) acc |= zigzag_encode(v_[k]);
    return bit_width(acc);
  }

  bool delta_pays(size_t i, size_t len) const {
    // Splitting a literal window costs one more header.
    const size_t delta_bytes = 6 + varint_size(zigzag_encode(v_[i])) +
                               tight_size(len - 1, code_width(width_code(delta_width(i, len))));
    const size_t literal_bytes = tight_size(len, code_width(width_code(zigzag_width(i, len))));
    return delta_bytes < literal_bytes;
  }

  void header(OrcTag tag, int width, size_t len) {
    w_.put_u8(static_cast<uint8_t>(static_cast<uint8_t>(tag) << 6 | width_code(width)));
    w_.put_u16(static_cast<uint16_t>(len - 1));
  }

  void short_repeat(size_t i, size_t len) {
    const uint64_t zz = zigzag_encode(v_[i]);
    const int bytes = std::max(1, (bit_width(zz) + 7) / 8);
    w_.put_u8(static_cast<uint8_t>((bytes - 1) << 3 | (len - kMinShortRepeat)));
    w_.put_le(zz, static_cast<size_t>(bytes));
  }

  void delta(size_t i, size_t len) {
    std::vector<uint64_t> deltas(len - 1);
    for (size_t k = 1; k < len; ++k) {
      deltas[k - 1] = zigzag_encode(static_cast<int64_t>(wrap_sub(v_[i + k], v_[i + k - 1])));
    }
    const int width = code_width(width_code(max_bit_width(deltas)));
    header(OrcTag::Delta, width, len);
    w_.put_svarint(v_[i]);
    pack_tight(deltas, width, w_.buffer());
  }

  void literal(size_t i, size_t len) {
    int64_t base = v_[i];
    for (size_t k = i; k < i + len; ++k) base = std::min(base, v_[k]);
    std::vector<uint64_t> adjusted(len);
    for (size_t k = 0; k < len; ++k) adjusted[k] = wrap_sub(v_[i + k], base);
    std::vector<uint64_t> sorted = adjusted;
    const size_t p90 = (len * 9 + 9) / 10 - 1;
    std::nth_element(sorted.begin(), sorted.begin() + p90, sorted.end());
    const int w90 = bit_width(sorted[p90]);
    const int w100 = bit_width(*std::max_element(adjusted.begin(), adjusted.end()));
    if (w100 - w90 >= 2) {
      patched_base(base, adjusted, w90);
      return;
    }
    std::vector<uint64_t> zz(len);
    for (size_t k = 0; k < len; ++k) zz[k] = zigzag_encode(v_[i + k]);
    const int width = code_width(width_code(max_bit_width(zz)));
    header(OrcTag::Direct, width, len);
    pack_tight(zz, width, w_.buffer());
  }

  void patched_base(int64_t base, const std::vector<uint64_t>& adjusted, int width) {
    const uint64_t mask = (uint64_t{1} << width) - 1;
    std::vector<uint64_t> low(adjusted.size());
    std::vector<std::pair<uint16_t, uint64_t>> patches;
    for (size_t k = 0; k < adjusted.size(); ++k) {
      low[k] = adjusted[k] & mask;
      if ((adjusted[k] >> width) != 0) patches.emplace_back(k, adjusted[k] >> width);
    }
    header(OrcTag::PatchedBase, width, adjusted.size());
    w_.put_svarint(base);
    pack_tight(low, width, w_.buffer());
    w_.put_varint(patches.size());
    for (const auto& [pos, high] : patches) {
      w_.put_u16(pos);
      w_.put_varint(high);
    }
  }

  std::span<const int64_t> v_;
  ByteWriter w_;
};

// Calls on_run(run, decoded values) for each subsequence.
template <typename OnRun>
void walk_orc(const EncodedBlock& block, OnRun on_run) {
  ByteReader r(block.payload);
  uint64_t produced = 0;
  std::vector<int64_t> vals;
  while (produced < block.value_count) {
    const uint8_t first = r.u8();
    const auto tag = static_cast<OrcTag>(first >> 6);
    OrcRun run;
    run.tag = tag;
    vals.clear();
    if (tag == OrcTag::ShortRepeat) {
      const size_t bytes = ((first >> 3) & 7) + 1;
      run.length = (first & 7) + kMinShortRepeat;
      run.width = static_cast<int>(bytes * 8);
      vals.assign(run.length, zigzag_decode(r.le(bytes)));
    } else {
      run.width = code_width(first & 63);
      run.length = size_t{r.u16()} + 1;
      if (run.length > kOrcMaxRun) fail(ErrorCode::kDecodeError, "ORC run longer than 512");
      if (tag == OrcTag::Direct) {
        auto packed = r.bytes(r.checked_len(tight_size(run.length, run.width)));
        for (uint64_t z : unpack_tight(packed, run.length, run.width)) vals.push_back(zigzag_decode(z));
      } else if (tag == OrcTag::Delta) {
        int64_t cur = r.svarint();
        auto packed = r.bytes(r.checked_len(tight_size(run.length - 1, run.width)));
        vals.push_back(cur);
        for (uint64_t z : unpack_tight(packed, run.length - 1, run.width)) {
          cur = static_cast<int64_t>(static_cast<uint64_t>(cur) +
                                     static_cast<uint64_t>(zigzag_decode(z)));
          vals.push_back(cur);
        }
      } else {
        const int64_t base = r.svarint();
        auto packed = r.bytes(r.checked_len(tight_size(run.length, run.width)));
        std::vector<uint64_t> adjusted = unpack_tight(packed, run.length, run.width);
        run.patches = r.checked_len(r.varint());
        for (size_t p = 0; p < run.patches; ++p) {
          const uint16_t pos = r.u16();
          const uint64_t high = r.varint();
          if (pos >= run.length || run.width >= 64) fail(ErrorCode::kDecodeError, "bad patch");
          adjusted[pos] |= high << run.width;
        }
        for (uint64_t a : adjusted) vals.push_back(static_cast<int64_t>(static_cast<uint64_t>(base) + a));
      }
    }
    if (produced + vals.size() > block.value_count) {
      fail(ErrorCode::kDecodeError, "ORC runs overrun value count");
    }
    produced += vals.size();
    on_run(run, vals);
  }
}

}  // namespace

EncodedBlock orc_encode(std::span<const int64_t> values) {
  EncodedBlock block;
  block.scheme = EncodingScheme::OrcHybrid;
  block.value_count = values.size();
  block.payload = OrcWriter(values).run();
  return block;
}

std::vector<int64_t> orc_decode(const EncodedBlock& block) {
  std::vector<int64_t> out;
  out.reserve(block.value_count);
  walk_orc(block, [&](const OrcRun&, const std::vector<int64_t>& vals) {
    out.insert(out.end(), vals.begin(), vals.end());
  });
  return out;
}

std::vector<OrcRun> orc_runs(const EncodedBlock& block) {
  std::vector<OrcRun> runs;
  walk_orc(block, [&](const OrcRun& run, const std::vector<int64_t>&) { runs.push_back(run); });
  return runs;
}

}  // namespace paxlab
