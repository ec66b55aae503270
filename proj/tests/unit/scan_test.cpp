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

#include "paxlab/scan.hpp"
#include "paxlab/status.hpp"
#include "test_support.hpp"

namespace paxlab {
namespace {

struct Fixture {
  Table table;
  std::shared_ptr<PaxReader> reader;
};

Fixture random_fixture(Rng& rng) {
  Fixture f{testing::random_table(rng, 1 + rng.below(2500), 1 + rng.below(4)), nullptr};
  const auto bytes = write_table_to_bytes(f.table, testing::random_layout(rng));
  f.reader = std::make_shared<PaxReader>(std::make_shared<MemorySource>(bytes));
  return f;
}

std::vector<std::string> random_projection(Rng& rng, const Table& t) {
  std::vector<std::string> names;
  for (size_t c = 0; c < t.column_count(); ++c) {
    if (rng.below(2) == 0) names.push_back(t.name(c));
  }
  if (names.empty()) names.push_back(t.name(rng.below(t.column_count())));
  rng.shuffle(names);
  return names;
}

TEST(Select, MatchesBruteForceProperty) {
  testing::for_all(71, 80, [](Rng& rng, int) {
    Fixture f = random_fixture(rng);
    const size_t c = rng.below(f.table.column_count());
    const auto pred = testing::random_predicate(rng, f.table.column(c), f.table.name(c));
    const Bitmap expected = evaluate_predicate(f.table.column(c), pred);
    const SelectionResult got = select(*f.reader, pred);
    EXPECT_EQ(got.bits, expected);
    EXPECT_EQ(got.popcount, expected.count());
  });
}

TEST(Select, EstimateBoundsTrueSelectivityProperty) {
  testing::for_all(72, 60, [](Rng& rng, int) {
    Fixture f = random_fixture(rng);
    const size_t c = rng.below(f.table.column_count());
    const auto pred = testing::random_predicate(rng, f.table.column(c), f.table.name(c));
    const double truth = double(evaluate_predicate(f.table.column(c), pred).count()) / f.table.row_count();
    const double est = estimate_selectivity(*f.reader, pred);
    EXPECT_GE(est, truth - 1e-12);
    EXPECT_LE(est, 1.0);
  });
}

TEST(Project, MatchesFilteredTableProperty) {
  testing::for_all(73, 60, [](Rng& rng, int) {
    Fixture f = random_fixture(rng);
    Bitmap bv(f.table.row_count());
    const double p = rng.below(3) == 0 ? 0.001 : rng.uniform();
    for (size_t i = 0; i < bv.size(); ++i) bv.set(i, rng.uniform() < p);
    const auto names = random_projection(rng, f.table);
    const ProjectionResult got = project_with_bitvector(*f.reader, bv, names);
    ASSERT_EQ(got.table.column_count(), names.size());
    EXPECT_EQ(got.table.row_count(), bv.count());
    for (size_t k = 0; k < names.size(); ++k) {
      EXPECT_EQ(got.table.name(k), names[k]);
      EXPECT_EQ(got.table.column(k), f.table.column(*f.table.find(names[k])).filter(bv));
    }
  });
}

TEST(Query, StrategiesAgreeProperty) {
  testing::for_all(74, 40, [](Rng& rng, int) {
    Fixture f = random_fixture(rng);
    const size_t c = rng.below(f.table.column_count());
    const auto pred = testing::random_predicate(rng, f.table.column(c), f.table.name(c));
    const auto names = random_projection(rng, f.table);
    const auto late = run_query(*f.reader, pred, names, MaterializationStrategy::LateMaterialize);
    const auto full = run_query(*f.reader, pred, names, MaterializationStrategy::FullScanThenFilter);
    EXPECT_EQ(late.matches, full.matches);
    EXPECT_EQ(late.strategy, MaterializationStrategy::LateMaterialize);
    EXPECT_EQ(full.strategy, MaterializationStrategy::FullScanThenFilter);
    const Bitmap bits = evaluate_predicate(f.table.column(c), pred);
    for (size_t k = 0; k < names.size(); ++k) {
      const auto expected = f.table.column(*f.table.find(names[k])).filter(bits);
      EXPECT_EQ(late.table.column(k), expected);
      EXPECT_EQ(full.table.column(k), expected);
    }
  });
}

TEST(Strategy, ThresholdIsInclusive) {
  EXPECT_EQ(choose_strategy(0.0), MaterializationStrategy::LateMaterialize);
  EXPECT_EQ(choose_strategy(0.02), MaterializationStrategy::LateMaterialize);
  EXPECT_EQ(choose_strategy(0.021), MaterializationStrategy::FullScanThenFilter);
  EXPECT_EQ(choose_strategy(0.3, ScanConfig{0.5}), MaterializationStrategy::LateMaterialize);
  EXPECT_THROW(choose_strategy(1.5), PaxError);
}

Table sorted_ints(size_t rows) {
  std::vector<int64_t> v(rows);
  for (size_t i = 0; i < rows; ++i) v[i] = static_cast<int64_t>(i);
  Table t(rows);
  t.add_column("k", ColumnVector::from_int64(v));
  return t;
}

TEST(Select, PageZonesSkipOnSortedData) {
  const Table t = sorted_ints(100000);
  FileLayoutConfig cfg = FileLayoutConfig::parquet_like();
  cfg.page_rows = 1000;
  PaxReader reader(std::make_shared<MemorySource>(write_table_to_bytes(t, cfg)));
  const auto res = select(reader, PredicateSpec::range("k", int64_t{5000}, int64_t{5999}));
  EXPECT_EQ(res.popcount, 1000u);
  EXPECT_EQ(res.counters.pages_decoded, 1u);
  EXPECT_EQ(res.counters.zones_skipped, 99u);
  EXPECT_NEAR(estimate_selectivity(reader, PredicateSpec::range("k", int64_t{5000}, int64_t{5999})), 0.01,
              1e-12);
}

TEST(Select, RowGroupZonesOnlyDecodeWholeGroup) {
  const Table t = sorted_ints(100000);
  FileLayoutConfig cfg = FileLayoutConfig::parquet_like();
  cfg.page_rows = 1000;
  cfg.zone_maps.page = false;
  PaxReader reader(std::make_shared<MemorySource>(write_table_to_bytes(t, cfg)));
  const auto res = select(reader, PredicateSpec::range("k", int64_t{5000}, int64_t{5999}));
  EXPECT_EQ(res.popcount, 1000u);
  EXPECT_EQ(res.counters.pages_decoded, 100u);
}

TEST(Select, BloomSkipsAbsentKey) {
  std::vector<int64_t> v(50000);
  for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int64_t>((i * 7919) % 100003) * 2;
  Table t(v.size());
  t.add_column("k", ColumnVector::from_int64(v));
  FileLayoutConfig cfg = FileLayoutConfig::parquet_like();
  cfg.page_rows = 5000;
  cfg.bloom.enabled = true;
  cfg.bloom.fpp = 0.01;
  cfg.bloom.granularity = BloomGranularity::Page;
  PaxReader reader(std::make_shared<MemorySource>(write_table_to_bytes(t, cfg)));
  const auto res = select(reader, PredicateSpec::eq("k", int64_t{1001}));
  EXPECT_EQ(res.popcount, 0u);
  EXPECT_GE(res.counters.bloom_skipped, 8u);
  EXPECT_LE(res.counters.pages_decoded, 2u);
}

TEST(Select, UnknownColumnAndWrongLiteral) {
  const Table t = sorted_ints(10);
  PaxReader reader(std::make_shared<MemorySource>(write_table_to_bytes(t, FileLayoutConfig::plain())));
  try {
    select(reader, PredicateSpec::eq("nope", int64_t{1}));
    FAIL();
  } catch (const PaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidProjection);
  }
  try {
    select(reader, PredicateSpec::eq("k", std::string("1")));
    FAIL();
  } catch (const PaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTypeMismatch);
  }
  EXPECT_THROW(project_with_bitvector(reader, Bitmap(3), {"k"}), PaxError);
}

}  // namespace
}  // namespace paxlab
