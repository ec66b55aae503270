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

#include <string>

#include "paxlab/column.hpp"

namespace paxlab {

enum class PredicateOp : uint8_t { Eq, RangeInclusive };

// A single-column predicate. Eq uses `lo` only. NULL never matches.
struct PredicateSpec {
  std::string column;
  PredicateOp op = PredicateOp::Eq;
  Scalar lo = int64_t{0};
  Scalar hi = int64_t{0};
  double target_selectivity = 0.0;
  // Filled by the generator: brute-force matches / rows on the source table.
  double achieved_selectivity = 0.0;

  static PredicateSpec eq(std::string column, Scalar value);
  static PredicateSpec range(std::string column, Scalar lo, Scalar hi);

  LogicalType literal_type() const { return scalar_type(lo); }
};

bool predicate_matches(const PredicateSpec& pred, const Scalar& value);

// Brute-force evaluation over the present values of `col`.
Bitmap evaluate_predicate(const ColumnVector& col, const PredicateSpec& pred);

std::string describe_predicate(const PredicateSpec& pred);

}  // namespace paxlab
