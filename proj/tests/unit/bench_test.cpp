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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "paxlab/analyze.hpp"
#include "paxlab/bench.hpp"
#include "paxlab/stats.hpp"
#include "paxlab/status.hpp"

namespace paxlab {
namespace {

// Everything except the timing columns.
std::string counters_of(const BenchRecord& r) {
  BenchRecord c = r;
  c.write_ns = c.scan_ns = c.select_ns = 0;
  return bench_csv_row(c);
}

std::vector<std::string> counters_of(const std::vector<BenchRecord>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(counters_of(r));
  return out;
}

TEST(Bench, CsvHeaderAndRowShape) {
  const std::string header = bench_csv_header();
  EXPECT_EQ(header,
            "workload,sweep_param,param_value,preset,codec,file_bytes,write_ns,scan_ns,select_ns,selectivity,"
            "zones_skipped,pages_decoded,bytes_read,read_ops,seed,rows_decoded");
  BenchRecord r;
  r.workload = "a,b";
  const std::string row = bench_csv_row(r);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ',') + 1);
  EXPECT_EQ(row.substr(0, 6), "\"a,b\",");
}

TEST(Bench, ScanSuiteCountersDeterministic) {
  BenchOptions o;
  o.suite = "scan";
  o.rows = 3000;
  o.cols = 4;
  const auto a = run_bench(o);
  const auto b = run_bench(o);
  ASSERT_EQ(a.size(), 4u);  // 2 presets x {none, lz}
  EXPECT_EQ(counters_of(a), counters_of(b));
  for (const auto& r : a) {
    EXPECT_EQ(r.sweep_param, "codec");
    EXPECT_GT(r.file_bytes, 0u);
    EXPECT_EQ(r.rows_decoded, 3000u * 4u);
    EXPECT_GT(r.pages_decoded, 0u);
    EXPECT_GT(r.read_ops, 0u);
    EXPECT_LE(r.bytes_read, r.file_bytes);
    EXPECT_EQ(r.seed, 42u);
  }
}

TEST(Bench, EncodeSweepFiltersAxisAndType) {
  BenchOptions o;
  o.suite = "encode-sweep";
  o.rows = 4000;
  o.axes = {"sortedness"};
  o.types = {LogicalType::Int64};
  o.presets = {"orc-like"};
  const auto recs = run_bench(o);
  const auto grid = encode_sweep_grid("sortedness");
  ASSERT_EQ(recs.size(), grid.size());
  for (size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].workload, "int64");
    EXPECT_EQ(recs[i].param_value, grid[i]);
    EXPECT_EQ(recs[i].preset, "orc-like");
  }
}

TEST(Bench, SweepColumnsHitTheirAxisValue) {
  for (const std::string axis : {"ndv_ratio", "sortedness"}) {
    for (const auto& value : encode_sweep_grid(axis)) {
      const ColumnConfig cfg = encode_sweep_column(LogicalType::Float64, axis, value, 20000, 3);
      const ColumnVector col = generate_column(cfg);
      if (axis == "ndv_ratio") {
        EXPECT_NEAR(compute_ndv_ratio(col), cfg.ndv_ratio, 0.1 * cfg.ndv_ratio) << value;
      } else {
        EXPECT_NEAR(compute_sortedness(col), std::max(cfg.sortedness_target, sortedness_floor(cfg)), 0.05)
            << value;
      }
    }
  }
}

TEST(Bench, SelectSuiteSelectivityTracksTargets) {
  BenchOptions o;
  o.suite = "select";
  o.rows = 200000;
  o.presets = {"parquet-like"};
  const auto recs = run_bench(o);
  ASSERT_EQ(recs.size(), 8u);
  for (const auto& r : recs) {
    const double target = std::stod(r.param_value);
    if (target * 200000 >= 10) {
      EXPECT_NEAR(r.selectivity, target, 0.2 * target) << r.param_value;
    }
    EXPECT_EQ(r.write_ns, 0u);
  }
}

TEST(Bench, BloomSuiteGrid) {
  BenchOptions o;
  o.suite = "bloom";
  o.rows = 100000;
  o.layout_json = R"({"page_rows": 10000})";
  const auto recs = run_bench(o);
  ASSERT_EQ(recs.size(), 2u * 2u * 3u);
  std::set<std::string> params;
  for (const auto& r : recs) params.insert(r.sweep_param + "=" + r.param_value);
  EXPECT_EQ(params.size(), 6u);
  EXPECT_TRUE(params.count("fpp@page=0.01"));
}

TEST(Bench, PickBloomKeyLimitsMatches) {
  std::vector<int64_t> v;
  for (int i = 0; i < 10000; ++i) v.push_back(i % 500);
  const auto col = ColumnVector::from_int64(v);
  const auto key = pick_bloom_key(col, 2500, 30);
  ASSERT_TRUE(key.has_value());
  EXPECT_EQ(std::count(v.begin(), v.end(), *key), 20);
  EXPECT_FALSE(pick_bloom_key(col, 2500, 10).has_value());
}

TEST(Bench, NestedSuiteBothModels) {
  BenchOptions o;
  o.suite = "nested";
  o.rows = 500;
  const auto recs = run_bench(o);
  ASSERT_EQ(recs.size(), 16u);
  std::map<std::string, int> models;
  for (const auto& r : recs) ++models[r.preset];
  EXPECT_EQ(models["dremel"], 8);
  EXPECT_EQ(models["length-presence"], 8);
}

TEST(Bench, RejectsBadOptions) {
  BenchOptions o;
  o.suite = "tpch";
  EXPECT_THROW(run_bench(o), PaxError);
  o.suite = "scan";
  o.runs = 2;
  EXPECT_THROW(run_bench(o), PaxError);
  o.runs = 3;
  o.threads = 4;
  EXPECT_THROW(run_bench(o), PaxError);
  o.threads = 1;
  o.rows = 0;
  EXPECT_THROW(run_bench(o), PaxError);
  o.rows = 100;
  o.presets = {"arrow"};
  EXPECT_THROW(run_bench(o), PaxError);
}

TEST(Bench, MedianOfRuns) {
  int calls = 0;
  median_ns(5, [&] { ++calls; });
  EXPECT_EQ(calls, 5);
}

}  // namespace
}  // namespace paxlab
