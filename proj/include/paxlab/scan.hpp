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
#include <string>
#include <vector>

#include "paxlab/column.hpp"
#include "paxlab/pax_file.hpp"
#include "paxlab/predicate.hpp"

namespace paxlab {

struct QueryCounters {
  uint64_t zones_skipped = 0;
  uint64_t bloom_skipped = 0;
  uint64_t pages_decoded = 0;
  uint64_t rows_decoded = 0;
  uint64_t bytes_read = 0;
  uint64_t read_ops = 0;

  QueryCounters& operator+=(const QueryCounters& o);
  friend bool operator==(const QueryCounters&, const QueryCounters&) = default;
};

struct SelectionResult {
  Bitmap bits;
  uint64_t popcount = 0;
  QueryCounters counters;
};

// Pruning cascade: file zone, chunk zone, chunk Bloom (Eq only), then per
// page zone and page Bloom. Surviving pages are decoded and evaluated.
// Each call starts from a cold reader cache.
SelectionResult select(PaxReader& reader, const PredicateSpec& pred);

struct ProjectionResult {
  Table table;
  QueryCounters counters;
};

// Decodes only pages holding at least one selected row.
ProjectionResult project_with_bitvector(PaxReader& reader, const Bitmap& bv,
                                        const std::vector<std::string>& projection);

enum class MaterializationStrategy : uint8_t { LateMaterialize, FullScanThenFilter };

const char* strategy_name(MaterializationStrategy s);

struct ScanConfig {
  double late_materialize_threshold = 0.02;
};

MaterializationStrategy choose_strategy(double selectivity_estimate, const ScanConfig& cfg = {});

// Rows in zones the predicate cannot rule out, over total rows. Reads
// metadata only (footer zones and page indexes).
double estimate_selectivity(PaxReader& reader, const PredicateSpec& pred);

struct QueryResult {
  Table table;
  MaterializationStrategy strategy = MaterializationStrategy::LateMaterialize;
  uint64_t matches = 0;
  QueryCounters counters;
};

// select + project under the given strategy. FullScanThenFilter decodes
// every page of the predicate and projected columns.
QueryResult run_query(PaxReader& reader, const PredicateSpec& pred,
                      const std::vector<std::string>& projection, MaterializationStrategy strategy);

}  // namespace paxlab
