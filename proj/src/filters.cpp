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

#include "paxlab/filters.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "paxlab/bytes.hpp"
#include "paxlab/status.hpp"

namespace paxlab {

ZoneMap ZoneMap::of(const ColumnVector& col, size_t begin, size_t end) {
  ZoneMap z;
  z.row_count = end - begin;
  z.null_count = z.row_count - col.validity().count_range(begin, end);
  auto scan = [&](const auto& values) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    std::optional<T> lo, hi;
    for (size_t i = begin; i < end; ++i) {
      if (!col.is_valid(i)) continue;
      const T& v = values[i];
      if constexpr (std::is_same_v<T, double>) {
        if (std::isnan(v)) continue;
      }
      if (!lo || v < *lo) lo = v;
      if (!hi || *hi < v) hi = v;
    }
    if (!lo) return;
    if constexpr (std::is_same_v<T, uint8_t>) {
      z.min = Scalar{*lo != 0};
      z.max = Scalar{*hi != 0};
    } else {
      z.min = Scalar{*lo};
      z.max = Scalar{*hi};
    }
  };
  std::visit(scan, col.values());
  return z;
}

void ZoneMap::merge(const ZoneMap& other) {
  row_count += other.row_count;
  null_count += other.null_count;
  if (!other.min) return;
  if (!min || compare_scalars(*other.min, *min) < 0) min = other.min;
  if (!max || compare_scalars(*other.max, *max) > 0) max = other.max;
}

bool operator==(const ZoneMap& a, const ZoneMap& b) {
  auto same = [](const std::optional<Scalar>& x, const std::optional<Scalar>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || scalars_identical(*x, *y);
  };
  return a.row_count == b.row_count && a.null_count == b.null_count && same(a.min, b.min) &&
         same(a.max, b.max);
}

PruneDecision zone_prune(const ZoneMap& zone, const PredicateSpec& pred) {
  if (zone.min && scalar_type(*zone.min) != pred.literal_type()) {
    fail(ErrorCode::kTypeMismatch, "zone map and predicate types differ");
  }
  // No comparable value: predicates never match NULL or NaN.
  if (!zone.min) return PruneDecision::Skip;
  const Scalar& hi = pred.op == PredicateOp::Eq ? pred.lo : pred.hi;
  if (pred.lo.index() == 1) {
    // Numeric comparison so that -0.0 and +0.0 meet.
    const double lo_v = std::get<double>(pred.lo), hi_v = std::get<double>(hi);
    if (std::isnan(lo_v) || std::isnan(hi_v)) return PruneDecision::Skip;
    if (hi_v < std::get<double>(*zone.min) || lo_v > std::get<double>(*zone.max)) {
      return PruneDecision::Skip;
    }
    return PruneDecision::Inspect;
  }
  if (compare_scalars(hi, *zone.min) < 0 || compare_scalars(pred.lo, *zone.max) > 0) {
    return PruneDecision::Skip;
  }
  return PruneDecision::Inspect;
}

double bloom_bits_for(uint64_t n, double fpp) {
  if (n == 0 || !(fpp > 0.0 && fpp <= 0.5)) {
    fail(ErrorCode::kInvalidConfig, "bloom sizing needs n >= 1 and fpp in (0, 0.5]");
  }
  return -static_cast<double>(n) * std::log(fpp) / (std::numbers::ln2 * std::numbers::ln2);
}

double sbbf_expected_fpp(uint64_t n, uint64_t num_blocks) {
  if (num_blocks == 0) fail(ErrorCode::kInvalidConfig, "num_blocks must be >= 1");
  const double lambda = static_cast<double>(n) / static_cast<double>(num_blocks);
  const double log_keep = std::log(31.0 / 32.0);
  // Sum the Poisson mass around its mode.
  const double spread = 12.0 * std::sqrt(lambda) + 30.0;
  const auto lo = static_cast<uint64_t>(std::max(0.0, lambda - spread));
  const auto hi = static_cast<uint64_t>(lambda + spread);
  double total = 0.0;
  for (uint64_t k = lo; k <= hi; ++k) {
    const double kd = static_cast<double>(k);
    const double log_p = kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0);
    const double bit_set = 1.0 - std::exp(kd * log_keep);
    total += std::exp(log_p) * std::pow(bit_set, 8);
  }
  return total;
}

uint64_t sbbf_size_for(uint64_t n, double fpp) {
  const double bits = bloom_bits_for(n, fpp);
  uint64_t lo = 1;
  uint64_t hi = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(bits / 256.0)));
  while (sbbf_expected_fpp(n, hi) > fpp) hi *= 2;
  if (sbbf_expected_fpp(n, lo) <= fpp) return lo;
  // Invariant: fpp(lo) > target >= fpp(hi).
  while (hi - lo > 1) {
    const uint64_t mid = lo + (hi - lo) / 2;
    if (sbbf_expected_fpp(n, mid) <= fpp) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

SplitBlockBloomFilter::SplitBlockBloomFilter(uint64_t num_blocks) {
  if (num_blocks == 0 || num_blocks > UINT32_MAX) {
    fail(ErrorCode::kInvalidConfig, "SBBF block count must be in [1, 2^32 - 1]");
  }
  words_.assign(num_blocks * 8, 0);
}

uint32_t* SplitBlockBloomFilter::block(uint64_t hash) {
  const uint64_t idx = ((hash >> 32) * num_blocks()) >> 32;
  return words_.data() + idx * 8;
}

const uint32_t* SplitBlockBloomFilter::block(uint64_t hash) const {
  const uint64_t idx = ((hash >> 32) * num_blocks()) >> 32;
  return words_.data() + idx * 8;
}

void SplitBlockBloomFilter::insert(uint64_t hash) {
  uint32_t* b = block(hash);
  const auto key = static_cast<uint32_t>(hash);
  for (size_t i = 0; i < 8; ++i) b[i] |= uint32_t{1} << ((key * kSbbfSalt[i]) >> 27);
}

bool SplitBlockBloomFilter::query(uint64_t hash) const {
  const uint32_t* b = block(hash);
  const auto key = static_cast<uint32_t>(hash);
  for (size_t i = 0; i < 8; ++i) {
    if ((b[i] & (uint32_t{1} << ((key * kSbbfSalt[i]) >> 27))) == 0) return false;
  }
  return true;
}

std::vector<uint8_t> SplitBlockBloomFilter::serialize() const {
  ByteWriter w;
  w.put_u32(static_cast<uint32_t>(num_blocks()));
  for (uint32_t word : words_) w.put_u32(word);
  return w.take();
}

SplitBlockBloomFilter SplitBlockBloomFilter::deserialize(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  const uint64_t blocks = r.u32();
  if (blocks == 0) fail(ErrorCode::kDecodeError, "bloom filter with zero blocks");
  r.checked_len(blocks * kSbbfBlockBytes);
  SplitBlockBloomFilter f(blocks);
  for (auto& word : f.words_) word = r.u32();
  return f;
}

uint64_t mix64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t digest_bytes(std::span<const uint8_t> bytes) {
  uint64_t h = mix64(0x9e3779b97f4a7c15ULL ^ bytes.size());
  size_t i = 0;
  for (; i + 8 <= bytes.size(); i += 8) {
    uint64_t chunk = 0;
    for (size_t b = 0; b < 8; ++b) chunk |= uint64_t{bytes[i + b]} << (8 * b);
    h = mix64(h ^ chunk);
  }
  if (i < bytes.size()) {
    uint64_t chunk = 0;
    for (size_t b = 0; i + b < bytes.size(); ++b) chunk |= uint64_t{bytes[i + b]} << (8 * b);
    h = mix64(h ^ chunk);
  }
  return h;
}

uint64_t key_digest(int64_t v) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(static_cast<uint64_t>(v) >> (8 * i));
  return digest_bytes(b);
}

uint64_t key_digest(double v) {
  if (v == 0.0) v = 0.0;
  return key_digest(std::bit_cast<int64_t>(v));
}

uint64_t key_digest(std::string_view v) {
  return digest_bytes({reinterpret_cast<const uint8_t*>(v.data()), v.size()});
}

uint64_t key_digest(bool v) {
  const uint8_t b = v ? 1 : 0;
  return digest_bytes({&b, 1});
}

uint64_t key_digest(const Scalar& v) {
  return std::visit(
      [](const auto& x) -> uint64_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return key_digest(std::string_view(x));
        } else {
          return key_digest(x);
        }
      },
      v);
}

void insert_column(SplitBlockBloomFilter& filter, const ColumnVector& col, size_t begin,
                   size_t end) {
  for (size_t i = begin; i < end; ++i) {
    if (!col.is_valid(i)) continue;
    switch (col.type()) {
      case LogicalType::Int64: filter.insert(key_digest(col.ints()[i])); break;
      case LogicalType::Float64: filter.insert(key_digest(col.doubles()[i])); break;
      case LogicalType::Utf8String: filter.insert(key_digest(std::string_view(col.strings()[i]))); break;
      case LogicalType::Bool: filter.insert(key_digest(col.bools()[i] != 0)); break;
    }
  }
}

}  // namespace paxlab
