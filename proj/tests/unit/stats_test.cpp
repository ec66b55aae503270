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

#include <algorithm>
#include <cmath>
#include <set>

#include "paxlab/stats.hpp"
#include "paxlab/status.hpp"
#include "test_support.hpp"

namespace paxlab {
namespace {

// Straight transcription of the block score over present values.
double sortedness_oracle(const std::vector<int64_t>& present, size_t block) {
  double sum = 0.0;
  size_t blocks = 0;
  for (size_t start = 0; start < present.size(); start += block) {
    const size_t end = std::min(present.size(), start + block);
    const size_t n = end - start;
    if (n < 2) continue;
    size_t asc = 0, desc = 0, eq = 0;
    for (size_t i = start + 1; i < end; ++i) {
      if (present[i - 1] < present[i]) ++asc;
      else if (present[i - 1] > present[i]) ++desc;
      else ++eq;
    }
    const double lo = std::floor(n / 2.0);
    const double den = std::ceil(n / 2.0) - 1.0;
    double s = den <= 0 ? 1.0 : (double(std::max(asc, desc) + eq) - lo) / den;
    sum += std::clamp(s, 0.0, 1.0);
    ++blocks;
  }
  return sum / blocks;
}

TEST(Stats, SortedAndReversedScoreOne) {
  std::vector<int64_t> up(2000), down(2000);
  for (int i = 0; i < 2000; ++i) {
    up[i] = i;
    down[i] = 2000 - i;
  }
  EXPECT_DOUBLE_EQ(compute_sortedness(ColumnVector::from_int64(up)), 1.0);
  EXPECT_DOUBLE_EQ(compute_sortedness(ColumnVector::from_int64(down)), 1.0);
}

TEST(Stats, AlternatingScoresZero) {
  std::vector<int64_t> v(1024);
  for (size_t i = 0; i < v.size(); ++i) v[i] = i % 2;
  EXPECT_DOUBLE_EQ(compute_sortedness(ColumnVector::from_int64(v)), 0.0);
}

TEST(Stats, TwoValueBlockScoresOne) { EXPECT_DOUBLE_EQ(block_sortedness(0, 1, 0, 2), 1.0); }

TEST(Stats, SortednessMatchesOracleProperty) {
  testing::for_all(21, 30, [](Rng& rng, int) {
    const size_t n = 2 + rng.below(3000);
    std::vector<int64_t> v(n);
    for (auto& x : v) x = static_cast<int64_t>(rng.below(50));
    if (rng.below(2) == 0) std::sort(v.begin(), v.begin() + rng.below(n));
    const size_t block = 2 + rng.below(600);
    EXPECT_NEAR(compute_sortedness(ColumnVector::from_int64(v), block), sortedness_oracle(v, block),
                1e-12);
  });
}

TEST(Stats, SortednessSkipsNulls) {
  Bitmap valid(6, true);
  valid.set(1, false);
  valid.set(4, false);
  const auto col = ColumnVector::from_int64({1, 100, 2, 3, -50, 4}, valid);
  EXPECT_DOUBLE_EQ(compute_sortedness(col), 1.0);
}

TEST(Stats, SortednessNeedsTwoValues) {
  EXPECT_THROW(compute_sortedness(ColumnVector::from_int64({1})), PaxError);
}

TEST(Stats, NdvAndNullRatioMatchSetOracle) {
  testing::for_all(22, 30, [](Rng& rng, int) {
    const auto type = testing::any_type(rng);
    const auto col = testing::random_column(rng, type, 1 + rng.below(500));
    std::set<std::string> distinct;
    for (size_t i = 0; i < col.size(); ++i) {
      if (!col.is_valid(i)) continue;
      const Scalar s = col.scalar_at(i);
      if (const double* d = std::get_if<double>(&s)) {
        distinct.insert(std::to_string(std::bit_cast<uint64_t>(*d)));
      } else {
        distinct.insert(scalar_to_string(s));
      }
    }
    EXPECT_EQ(count_distinct(col), distinct.size());
    EXPECT_DOUBLE_EQ(compute_null_ratio(col), double(col.null_count()) / col.size());
  });
}

TEST(Stats, EmptyColumnRejected) {
  EXPECT_THROW(compute_ndv_ratio(ColumnVector(LogicalType::Int64)), PaxError);
  EXPECT_THROW(compute_stats(ColumnVector(LogicalType::Int64)), PaxError);
}

TEST(Stats, FitRecoversExactZipfExponent) {
  for (double s : {0.0, 0.5, 1.0, 1.5, 2.5}) {
    std::vector<size_t> counts;
    for (int k = 1; k <= 500; ++k) counts.push_back(size_t(std::llround(1e6 * std::pow(k, -s))));
    EXPECT_NEAR(fit_zipf_s(counts), s, 0.02) << "s=" << s;
  }
}

TEST(Stats, SkewCategories) {
  EXPECT_EQ(skew_category_for(1.0, 2), SkewCategory::SingleBinary);
  EXPECT_EQ(skew_category_for(0.0, 100), SkewCategory::Uniform);
  EXPECT_EQ(skew_category_for(1.2, 100), SkewCategory::GentleZipf);
  EXPECT_EQ(skew_category_for(2.6, 100), SkewCategory::Hotspot);
}

TEST(Stats, UniformColumnClassifiedUniform) {
  std::vector<int64_t> v;
  for (int rep = 0; rep < 100; ++rep) {
    for (int k = 0; k < 50; ++k) v.push_back(k);
  }
  const SkewFit fit = classify_skew(ColumnVector::from_int64(v));
  EXPECT_EQ(fit.category, SkewCategory::Uniform);
}

TEST(Stats, ComputeStatsMinMax) {
  Bitmap valid(4, true);
  valid.set(0, false);
  const auto col = ColumnVector::from_int64({-100, 7, -3, 12}, valid);
  const ColumnStats st = compute_stats(col);
  EXPECT_EQ(std::get<int64_t>(*st.min), -3);
  EXPECT_EQ(std::get<int64_t>(*st.max), 12);
  EXPECT_DOUBLE_EQ(st.null_ratio, 0.25);
  EXPECT_EQ(st.ndv, 3u);
}

}  // namespace
}  // namespace paxlab
