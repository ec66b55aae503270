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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "paxlab/column.hpp"
#include "paxlab/predicate.hpp"

namespace paxlab {

// ---- zone maps ----

struct ZoneMap {
  // Absent when the zone holds no comparable value (all null or all NaN).
  std::optional<Scalar> min;
  std::optional<Scalar> max;
  uint64_t row_count = 0;
  uint64_t null_count = 0;

  static ZoneMap of(const ColumnVector& col, size_t begin, size_t end);
  static ZoneMap of(const ColumnVector& col) { return of(col, 0, col.size()); }
  void merge(const ZoneMap& other);

  friend bool operator==(const ZoneMap& a, const ZoneMap& b);
};

enum class PruneDecision : uint8_t { Skip, Inspect };

// Skip only when no row of the zone can satisfy `pred`.
PruneDecision zone_prune(const ZoneMap& zone, const PredicateSpec& pred);

// ---- split-block Bloom filter ----

inline constexpr std::array<uint32_t, 8> kSbbfSalt = {0x47b6137bU, 0x44974d91U, 0x8824ad5bU,
                                                       0xa2b7289dU, 0x705495c7U, 0x2df1424bU,
                                                       0x9efc4947U, 0x5c6bfb31U};
inline constexpr size_t kSbbfBlockBytes = 32;

// Bits from the classic Bloom formula -n ln(fpp) / (ln 2)^2.
double bloom_bits_for(uint64_t n, double fpp);

// Expected false-positive rate of an SBBF with `num_blocks` blocks after n
// distinct inserts: keys per block are Poisson(n / num_blocks) and a block
// with k keys answers a fresh query true with probability
// (1 - (31/32)^k)^8.
double sbbf_expected_fpp(uint64_t n, uint64_t num_blocks);

// Smallest block count whose expected FPP is at most `fpp`.
uint64_t sbbf_size_for(uint64_t n, double fpp);

class SplitBlockBloomFilter {
 public:
  explicit SplitBlockBloomFilter(uint64_t num_blocks = 1);

  static SplitBlockBloomFilter for_keys(uint64_t n, double fpp) {
    return SplitBlockBloomFilter(sbbf_size_for(n, fpp));
  }

  void insert(uint64_t hash);
  bool query(uint64_t hash) const;

  uint64_t num_blocks() const { return words_.size() / 8; }
  size_t byte_size() const { return words_.size() * 4; }

  // u32 num_blocks, then the blocks as little-endian 32-bit words.
  std::vector<uint8_t> serialize() const;
  static SplitBlockBloomFilter deserialize(std::span<const uint8_t> bytes);

  friend bool operator==(const SplitBlockBloomFilter&, const SplitBlockBloomFilter&) = default;

 private:
  uint32_t* block(uint64_t hash);
  const uint32_t* block(uint64_t hash) const;

  std::vector<uint32_t> words_;
};

// 64-bit avalanche finalizer used for key digests.
uint64_t mix64(uint64_t x);

// Digest over canonical little-endian bytes.
uint64_t digest_bytes(std::span<const uint8_t> bytes);
uint64_t key_digest(int64_t v);
uint64_t key_digest(double v);
uint64_t key_digest(std::string_view v);
uint64_t key_digest(bool v);
uint64_t key_digest(const Scalar& v);

// Inserts every present value of col[begin, end).
void insert_column(SplitBlockBloomFilter& filter, const ColumnVector& col, size_t begin,
                   size_t end);

}  // namespace paxlab
