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
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "paxlab/pax_file.hpp"
#include "paxlab/scan.hpp"
#include "paxlab/workload.hpp"

namespace paxlab {

// One CSV row. Counters are deterministic for a seed; times are medians.
struct BenchRecord {
  std::string workload;
  std::string sweep_param;
  std::string param_value;
  std::string preset;
  std::string codec = "none";
  uint64_t file_bytes = 0;
  uint64_t write_ns = 0;
  uint64_t scan_ns = 0;
  uint64_t select_ns = 0;
  double selectivity = 0.0;
  uint64_t zones_skipped = 0;
  uint64_t pages_decoded = 0;
  uint64_t bytes_read = 0;
  uint64_t read_ops = 0;
  uint64_t seed = 0;
  uint64_t rows_decoded = 0;
};

const std::vector<std::string>& bench_suite_names();

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);

struct BenchOptions {
  std::string suite;
  // Empty: parquet-like and orc-like.
  std::vector<std::string> presets;
  // Empty: {none}, or {none, lz} for the scan suite.
  std::vector<CodecId> codecs;
  uint64_t seed = 42;
  // Timed runs per configuration; at least 3.
  unsigned runs = 3;
  // Suite defaults: 1M (encode-sweep, scan), 10M (select, bloom), 1000
  // (projection), 100000 records (nested).
  std::optional<uint64_t> rows;
  // scan suite only.
  std::optional<uint64_t> cols;
  std::optional<WorkloadSpec> workload;
  // encode-sweep filters; empty means all.
  std::vector<std::string> axes;
  std::vector<LogicalType> types;
  // JSON layout overrides applied on top of every preset.
  std::optional<std::string> layout_json;
  // Concurrent row-group decode is not implemented; only 1 is accepted.
  unsigned threads = 1;
};

using RecordSink = std::function<void(const BenchRecord&)>;

// Runs the suite's sweep grid and hands each record to `sink` as it is
// produced. Raises InvalidConfig on an unknown suite, preset or option.
void run_bench(const BenchOptions& opts, const RecordSink& sink);
std::vector<BenchRecord> run_bench(const BenchOptions& opts);

// Layout for a preset name with optional overrides and codec applied.
FileLayoutConfig bench_layout(std::string_view preset, CodecId codec,
                              const std::optional<std::string>& layout_json);

// ---- building blocks shared with the acceptance checks ----

// Sweep grids; value_range points are "small", "medium", "large".
const std::vector<std::string>& encode_sweep_axes();
std::vector<std::string> encode_sweep_grid(std::string_view axis);

// Core-workload levels for one column of `type`, with one axis set.
ColumnConfig encode_sweep_column(LogicalType type, std::string_view axis,
                                 std::string_view value, uint64_t rows, uint64_t seed);

struct SizeMeasurement {
  uint64_t file_bytes = 0;
  uint64_t write_ns = 0;
  uint64_t scan_ns = 0;
  // Counters of one cold full scan.
  QueryCounters scan;
};

// Writes `table` `runs` times and decodes every page `runs` times into a
// reused buffer; times are medians.
SizeMeasurement measure_write_scan(const Table& table, const FileLayoutConfig& cfg, unsigned runs);

// Median wall time over `runs` calls of `fn`.
uint64_t median_ns(unsigned runs, const std::function<void()>& fn);

// Decodes every page of every column and folds the values into a fixed
// buffer. Returns page and value counts.
QueryCounters decode_all_pages(PaxReader& reader);

// A key for the bloom suite: present in every row group, at most
// `max_matches` occurrences, near the middle of the value domain so zone
// maps cannot rule it out.
std::optional<int64_t> pick_bloom_key(const ColumnVector& col, uint64_t row_group_rows,
                                      uint64_t max_matches);

ColumnConfig select_suite_column(uint64_t rows, uint64_t seed);
ColumnConfig bloom_suite_column(uint64_t rows, uint64_t seed);

}  // namespace paxlab
