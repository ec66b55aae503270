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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "paxlab/column.hpp"
#include "paxlab/pax_file.hpp"
#include "paxlab/predicate.hpp"
#include "paxlab/workload.hpp"

namespace paxlab::testing {

// Runs `body` for `cases` independent RNG streams. A failing case reports
// its index so it can be replayed with the same base seed.
inline void for_all(uint64_t seed, int cases, const std::function<void(Rng&, int)>& body) {
  for (int i = 0; i < cases; ++i) {
    Rng rng(splitmix64(seed + static_cast<uint64_t>(i)));
    SCOPED_TRACE("property case " + std::to_string(i) + " seed " + std::to_string(seed));
    body(rng, i);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

inline int64_t edgy_int(Rng& rng) {
  switch (rng.below(8)) {
    case 0: return std::numeric_limits<int64_t>::min();
    case 1: return std::numeric_limits<int64_t>::max();
    case 2: return 0;
    case 3: return -1;
    case 4: return static_cast<int64_t>(rng.next());
    default: return static_cast<int64_t>(rng.below(64)) - 32;
  }
}

inline double edgy_double(Rng& rng) {
  switch (rng.below(10)) {
    case 0: return std::numeric_limits<double>::quiet_NaN();
    case 1: return -0.0;
    case 2: return std::numeric_limits<double>::infinity();
    case 3: return -std::numeric_limits<double>::infinity();
    case 4: return std::numeric_limits<double>::denorm_min();
    case 5: return std::bit_cast<double>(rng.next() & 0x7fefffffffffffffULL);
    default: return static_cast<double>(rng.below(200)) / 4.0 - 25.0;
  }
}

inline std::string edgy_string(Rng& rng) {
  const size_t len = rng.below(4) == 0 ? rng.below(300) : rng.below(6);
  std::string s(len, 'a');
  for (auto& c : s) c = static_cast<char>(rng.below(4) == 0 ? rng.below(256) : 'a' + rng.below(3));
  return s;
}

inline LogicalType any_type(Rng& rng) { return static_cast<LogicalType>(rng.below(4)); }

// Random column with nulls and low-cardinality stretches so every encoder
// path (runs, dictionaries, fallbacks) is reachable.
inline ColumnVector random_column(Rng& rng, LogicalType type, size_t rows) {
  const double null_p = rng.below(3) == 0 ? 0.0 : rng.uniform() * 0.5;
  const bool low_card = rng.below(2) == 0;
  std::vector<std::optional<Scalar>> pool;
  for (int i = 0; i < 5; ++i) {
    switch (type) {
      case LogicalType::Int64: pool.emplace_back(edgy_int(rng)); break;
      case LogicalType::Float64: pool.emplace_back(edgy_double(rng)); break;
      case LogicalType::Utf8String: pool.emplace_back(edgy_string(rng)); break;
      case LogicalType::Bool: pool.emplace_back(rng.below(2) == 0); break;
    }
  }
  std::vector<std::optional<Scalar>> values;
  values.reserve(rows);
  size_t run = 0;
  std::optional<Scalar> current;
  for (size_t i = 0; i < rows; ++i) {
    if (run == 0) {
      run = 1 + (rng.below(3) == 0 ? rng.below(40) : 0);
      if (rng.uniform() < null_p) {
        current.reset();
      } else if (low_card) {
        current = pool[rng.below(pool.size())];
      } else {
        switch (type) {
          case LogicalType::Int64: current = edgy_int(rng); break;
          case LogicalType::Float64: current = edgy_double(rng); break;
          case LogicalType::Utf8String: current = edgy_string(rng); break;
          case LogicalType::Bool: current = rng.below(2) == 0; break;
        }
      }
    }
    values.push_back(current);
    --run;
  }
  return ColumnVector::from_scalars(type, values);
}

inline Table random_table(Rng& rng, size_t rows, size_t cols) {
  Table t(rows);
  for (size_t c = 0; c < cols; ++c) {
    t.add_column("col" + std::to_string(c), random_column(rng, any_type(rng), rows));
  }
  return t;
}

// Literal drawn from the column half the time so predicates both hit and miss.
inline Scalar random_literal(Rng& rng, const ColumnVector& col) {
  if (col.present_count() > 0 && rng.below(2) == 0) {
    for (;;) {
      const size_t i = rng.below(col.size());
      if (col.is_valid(i)) return col.scalar_at(i);
    }
  }
  switch (col.type()) {
    case LogicalType::Int64: return edgy_int(rng);
    case LogicalType::Float64: return edgy_double(rng);
    case LogicalType::Utf8String: return edgy_string(rng);
    case LogicalType::Bool: return rng.below(2) == 0;
  }
  return int64_t{0};
}

inline PredicateSpec random_predicate(Rng& rng, const ColumnVector& col, const std::string& name = "x") {
  if (rng.below(2) == 0) return PredicateSpec::eq(name, random_literal(rng, col));
  Scalar lo = random_literal(rng, col), hi = random_literal(rng, col);
  if (compare_scalars(hi, lo) < 0) std::swap(lo, hi);
  return PredicateSpec::range(name, lo, hi);
}

inline FileLayoutConfig random_layout(Rng& rng) {
  FileLayoutConfig cfg;
  switch (rng.below(3)) {
    case 0: cfg = FileLayoutConfig::parquet_like(); break;
    case 1: cfg = FileLayoutConfig::orc_like(); break;
    default: cfg = FileLayoutConfig::plain(); break;
  }
  if (rng.below(3) == 0) {
    cfg.row_group_mode = RowGroupMode::FixedBytes;
    cfg.row_group_bytes = 512 + rng.below(20000);
  } else {
    cfg.row_group_rows = 1 + rng.below(800);
  }
  cfg.page_rows = 1 + rng.below(300);
  if (cfg.row_group_mode == RowGroupMode::FixedRows) cfg.page_rows = std::min(cfg.page_rows, cfg.row_group_rows);
  cfg.zone_maps = {rng.below(2) == 0, rng.below(2) == 0, rng.below(2) == 0};
  cfg.zone_placement = rng.below(2) == 0 ? ZonePlacement::CentralizedFooter : ZonePlacement::PerRowGroup;
  cfg.bloom.enabled = rng.below(2) == 0;
  cfg.bloom.granularity = rng.below(2) == 0 ? BloomGranularity::ColumnChunk : BloomGranularity::Page;
  cfg.codec = rng.below(2) == 0 ? CodecId::None : CodecId::Lz;
  cfg.align_compression_to_page = rng.below(2) == 0;
  cfg.compression_unit_bytes = 64 + rng.below(4096);
  return cfg;
}

}  // namespace paxlab::testing
