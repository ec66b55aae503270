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

#include "paxlab/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "paxlab/status.hpp"

namespace paxlab {

const char* skew_category_name(SkewCategory category) {
  switch (category) {
    case SkewCategory::Uniform: return "Uniform";
    case SkewCategory::GentleZipf: return "GentleZipf";
    case SkewCategory::Hotspot: return "Hotspot";
    case SkewCategory::SingleBinary: return "SingleBinary";
  }
  return "Unknown";
}

namespace {

void require_non_empty(const ColumnVector& col) {
  if (col.empty()) fail(ErrorCode::kEmptyColumn, "column has no rows");
}

// Frequencies of present values, keyed by a type-appropriate identity.
std::vector<size_t> value_counts(const ColumnVector& col) {
  std::vector<size_t> counts;
  const auto& valid = col.validity();
  auto tally = [&](auto&& key_of) {
    using Key = std::decay_t<decltype(key_of(size_t{0}))>;
    std::unordered_map<Key, size_t> freq;
    for (size_t i = 0; i < col.size(); ++i) {
      if (valid.get(i)) ++freq[key_of(i)];
    }
    counts.reserve(freq.size());
    for (const auto& [k, c] : freq) counts.push_back(c);
  };
  switch (col.type()) {
    case LogicalType::Int64: tally([&](size_t i) { return col.ints()[i]; }); break;
    case LogicalType::Float64:
      tally([&](size_t i) { return std::bit_cast<uint64_t>(col.doubles()[i]); });
      break;
    case LogicalType::Utf8String:
      tally([&](size_t i) { return std::string_view(col.strings()[i]); });
      break;
    case LogicalType::Bool: tally([&](size_t i) { return col.bools()[i] != 0; }); break;
  }
  return counts;
}

// -1 / 0 / +1 comparison of two present slots.
int compare_slots(const ColumnVector& col, size_t a, size_t b) {
  switch (col.type()) {
    case LogicalType::Int64: {
      const int64_t x = col.ints()[a], y = col.ints()[b];
      return (x > y) - (x < y);
    }
    case LogicalType::Float64: {
      const double x = col.doubles()[a], y = col.doubles()[b];
      if (std::bit_cast<uint64_t>(x) == std::bit_cast<uint64_t>(y)) return 0;
      return (x > y) - (x < y);
    }
    case LogicalType::Utf8String: {
      const int c = col.strings()[a].compare(col.strings()[b]);
      return (c > 0) - (c < 0);
    }
    case LogicalType::Bool: return int(col.bools()[a]) - int(col.bools()[b]);
  }
  return 0;
}

}  // namespace

size_t count_distinct(const ColumnVector& col) { return value_counts(col).size(); }

double compute_ndv_ratio(const ColumnVector& col) {
  require_non_empty(col);
  return static_cast<double>(count_distinct(col)) / static_cast<double>(col.size());
}

double compute_null_ratio(const ColumnVector& col) {
  require_non_empty(col);
  return static_cast<double>(col.null_count()) / static_cast<double>(col.size());
}

double block_sortedness(size_t asc, size_t desc, size_t eq, size_t n) {
  if (n < 2) return 1.0;
  const double half_floor = static_cast<double>(n / 2);
  const double denom = static_cast<double>((n + 1) / 2) - 1.0;
  if (denom <= 0.0) return 1.0;
  const double score = (static_cast<double>(std::max(asc, desc) + eq) - half_floor) / denom;
  return std::clamp(score, 0.0, 1.0);
}

double compute_sortedness(const ColumnVector& col, size_t block_size) {
  if (block_size < 2) fail(ErrorCode::kInvalidConfig, "sortedness block size must be >= 2");
  const auto& valid = col.validity();
  double sum = 0.0;
  size_t blocks = 0;
  size_t present = 0;
  size_t in_block = 0, asc = 0, desc = 0, eq = 0;
  size_t prev = 0;
  auto close_block = [&] {
    if (in_block >= 2) {
      sum += block_sortedness(asc, desc, eq, in_block);
      ++blocks;
    }
    in_block = asc = desc = eq = 0;
  };
  for (size_t i = 0; i < col.size(); ++i) {
    if (!valid.get(i)) continue;
    ++present;
    if (in_block > 0) {
      const int c = compare_slots(col, prev, i);
      if (c < 0) {
        ++asc;
      } else if (c > 0) {
        ++desc;
      } else {
        ++eq;
      }
    }
    prev = i;
    if (++in_block == block_size) close_block();
  }
  close_block();
  if (present < 2 || blocks == 0) {
    fail(ErrorCode::kNotEnoughValues, "sortedness needs at least two present values");
  }
  return sum / static_cast<double>(blocks);
}

SkewCategory skew_category_for(double s, size_t ndv) {
  if (ndv <= 2) return SkewCategory::SingleBinary;
  if (s <= 0.01) return SkewCategory::Uniform;
  if (s <= 2.0) return SkewCategory::GentleZipf;
  return SkewCategory::Hotspot;
}

double fit_zipf_s(std::span<const size_t> descending_counts) {
  const size_t ranks = descending_counts.size();
  if (ranks <= 1) return 0.0;
  double total = 0.0;
  for (size_t c : descending_counts) total += static_cast<double>(c);
  // weight[k] = (k+1)^-s, advanced one grid step at a time by a per-rank
  // factor (k+1)^-0.01.
  std::vector<double> observed(ranks), step_factor(ranks), weight(ranks, 1.0);
  for (size_t k = 0; k < ranks; ++k) {
    observed[k] = static_cast<double>(descending_counts[k]) / total;
    step_factor[k] = std::exp(-0.01 * std::log(static_cast<double>(k + 1)));
  }
  double best_s = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 400; ++step) {
    const double s = step * 0.01;
    double norm = 0.0;
    for (size_t k = 0; k < ranks; ++k) {
      if (step > 0) weight[k] *= step_factor[k];
      norm += weight[k];
    }
    double err = 0.0;
    for (size_t k = 0; k < ranks; ++k) {
      const double d = observed[k] - weight[k] / norm;
      err += d * d;
    }
    if (err < best_err) {
      best_err = err;
      best_s = s;
    }
  }
  return best_s;
}

SkewFit classify_skew(const ColumnVector& col) {
  if (col.present_count() == 0) {
    fail(ErrorCode::kNotEnoughValues, "skew classification needs a present value");
  }
  auto counts = value_counts(col);
  std::sort(counts.begin(), counts.end(), std::greater<>());
  SkewFit fit;
  fit.zipf_s = fit_zipf_s(counts);
  fit.category = skew_category_for(fit.zipf_s, counts.size());
  return fit;
}

ColumnStats compute_stats(const ColumnVector& col) {
  require_non_empty(col);
  ColumnStats stats;
  stats.ndv = count_distinct(col);
  stats.ndv_ratio = static_cast<double>(stats.ndv) / static_cast<double>(col.size());
  stats.null_ratio = compute_null_ratio(col);
  std::optional<size_t> lo, hi;
  for (size_t i = 0; i < col.size(); ++i) {
    if (!col.is_valid(i)) continue;
    if (col.type() == LogicalType::Float64 && std::isnan(col.doubles()[i])) continue;
    if (!lo || compare_slots(col, i, *lo) < 0) lo = i;
    if (!hi || compare_slots(col, i, *hi) > 0) hi = i;
  }
  if (lo) {
    stats.min = col.scalar_at(*lo);
    stats.max = col.scalar_at(*hi);
  }
  if (col.present_count() >= 2) stats.sortedness = compute_sortedness(col);
  if (col.present_count() > 0) {
    const SkewFit fit = classify_skew(col);
    stats.fitted_zipf_s = fit.zipf_s;
    stats.skew_category = fit.category;
  }
  return stats;
}

}  // namespace paxlab
