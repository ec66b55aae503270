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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "paxlab/column.hpp"
#include "paxlab/predicate.hpp"

namespace paxlab {

// Deterministic RNG wrapper. Only mt19937_64 raw output is consumed, so a
// given seed produces the same stream on every standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform in [0, n). n must be positive.
  uint64_t below(uint64_t n);
  double normal(double mean, double stddev);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t x);

// Inverse-CDF sampler for p(k) = k^-s / sum_{n<=C} n^-s, k in [1, C].
class ZipfSampler {
 public:
  ZipfSampler(uint64_t distinct, double s);

  uint64_t sample(Rng& rng) const;
  double probability(uint64_t rank) const;
  uint64_t distinct() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

uint64_t sample_zipf(uint64_t distinct, double s, Rng& rng);

enum class RangeClass : uint8_t { Small, Medium, Large };

const char* range_class_name(RangeClass cls);
std::optional<RangeClass> parse_range_class(std::string_view name);

// Magnitude of generated values. Integers and the integral part of floats
// draw from [0, 2^12) / [0, 2^20) / [0, 2^40); strings use mean byte
// lengths 8 / 24 / 64. An explicit range overrides the class.
struct ValueRangeSpec {
  RangeClass cls = RangeClass::Medium;
  // Numeric: values in [mean - half_width, mean + half_width].
  std::optional<double> mean;
  std::optional<double> half_width;
  // Strings: byte-length mean and variance.
  std::optional<double> mean_len;
  std::optional<double> len_variance;

  static ValueRangeSpec of(RangeClass cls) {
    ValueRangeSpec r;
    r.cls = cls;
    return r;
  }
};

struct ColumnConfig {
  LogicalType logical_type = LogicalType::Int64;
  uint64_t rows = 0;
  double ndv_ratio = 0.1;
  double null_ratio = 0.0;
  ValueRangeSpec value_range;
  double sortedness_target = 0.0;
  double zipf_s = 0.0;
  uint64_t seed = 0;
  // Sort the whole column before per-block degradation so that values are
  // clustered across blocks (zone maps become selective).
  bool clustered = false;
};

enum class SelectivityLevel : uint8_t { Low, Mid, High };

const char* selectivity_level_name(SelectivityLevel level);
std::optional<SelectivityLevel> parse_selectivity_level(std::string_view name);
double selectivity_for_level(SelectivityLevel level);

// Property levels shared by every column drawn from one workload.
struct PropertyLevels {
  double ndv_ratio = 0.1;
  double null_ratio = 0.0;
  RangeClass value_range = RangeClass::Medium;
  double sortedness = 0.5;
  double zipf_s = 1.0;
};

struct WorkloadSource {
  std::string workload;
  double fraction = 0.0;
};

struct WorkloadSpec {
  std::string name = "custom";
  // Fractions indexed by LogicalType.
  std::array<double, 4> type_mix{0.25, 0.25, 0.25, 0.25};
  PropertyLevels levels;
  SelectivityLevel selectivity_level = SelectivityLevel::Mid;
  // Non-empty for mixed workloads: each column takes the levels of a source
  // workload sampled by fraction.
  std::vector<WorkloadSource> sources;
};

const std::vector<std::string>& preset_workload_names();
WorkloadSpec workload_preset(std::string_view name);

void validate(const ColumnConfig& cfg);
void validate(const WorkloadSpec& spec);

ColumnVector generate_column(const ColumnConfig& cfg);

// Estimated sortedness of a fully shuffled column under `cfg`'s value
// frequencies. Random pair swaps cannot push a block much below it, so
// lower targets are met only approximately.
double sortedness_floor(const ColumnConfig& cfg);

// Largest-remainder split of `cols` columns over the type mix.
std::array<size_t, 4> allocate_types(const std::array<double, 4>& mix, size_t cols);

// The per-column configs generate_table would use, in column order.
std::vector<ColumnConfig> derive_column_configs(const WorkloadSpec& spec, uint64_t rows,
                                                size_t cols, uint64_t seed);

Table generate_table(const WorkloadSpec& spec, uint64_t rows, size_t cols, uint64_t seed);

// Contiguous value-window predicates whose brute-force selectivity is as
// close to the target as the column's frequency granularity allows.
std::vector<PredicateSpec> generate_predicates(const Table& table, double target_selectivity,
                                               size_t count, uint64_t seed);

}  // namespace paxlab
