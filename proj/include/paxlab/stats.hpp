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

#include <cstddef>
#include <optional>
#include <span>

#include "paxlab/column.hpp"

namespace paxlab {

enum class SkewCategory : uint8_t { Uniform, GentleZipf, Hotspot, SingleBinary };

const char* skew_category_name(SkewCategory category);

struct SkewFit {
  double zipf_s = 0.0;
  SkewCategory category = SkewCategory::Uniform;
};

struct ColumnStats {
  size_t ndv = 0;
  double ndv_ratio = 0.0;
  double null_ratio = 0.0;
  std::optional<Scalar> min;
  std::optional<Scalar> max;
  // Absent when the column has fewer than two present values.
  std::optional<double> sortedness;
  SkewCategory skew_category = SkewCategory::Uniform;
  double fitted_zipf_s = 0.0;
};

inline constexpr size_t kSortednessBlockSize = 512;

// Distinct present values. Floats are distinct by bit pattern.
size_t count_distinct(const ColumnVector& col);

double compute_ndv_ratio(const ColumnVector& col);
double compute_null_ratio(const ColumnVector& col);

// Mean over blocks of present values of
//   (max(asc, desc) + eq - floor(N/2)) / (ceil(N/2) - 1)
// clamped to [0, 1]. A two-value block has a zero denominator and scores 1.
double compute_sortedness(const ColumnVector& col, size_t block_size = kSortednessBlockSize);

// Score of one block given its adjacent-pair counts.
double block_sortedness(size_t asc, size_t desc, size_t eq, size_t n);

// Grid fit of the rank-frequency curve against 1/k^s over s in [0, 4].
SkewFit classify_skew(const ColumnVector& col);

// Same fit over an explicit descending frequency list.
double fit_zipf_s(std::span<const size_t> descending_counts);
SkewCategory skew_category_for(double s, size_t ndv);

ColumnStats compute_stats(const ColumnVector& col);

}  // namespace paxlab
