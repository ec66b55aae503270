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

#include "paxlab/predicate.hpp"

#include "paxlab/status.hpp"

namespace paxlab {

PredicateSpec PredicateSpec::eq(std::string column, Scalar value) {
  PredicateSpec p;
  p.column = std::move(column);
  p.op = PredicateOp::Eq;
  p.lo = value;
  p.hi = std::move(value);
  return p;
}

PredicateSpec PredicateSpec::range(std::string column, Scalar lo, Scalar hi) {
  if (lo.index() != hi.index()) fail(ErrorCode::kTypeMismatch, "range bounds differ in type");
  if (compare_scalars(lo, hi) > 0) fail(ErrorCode::kInvalidConfig, "range predicate has lo > hi");
  PredicateSpec p;
  p.column = std::move(column);
  p.op = PredicateOp::RangeInclusive;
  p.lo = std::move(lo);
  p.hi = std::move(hi);
  return p;
}

bool predicate_matches(const PredicateSpec& pred, const Scalar& value) {
  if (pred.op == PredicateOp::Eq) {
    if (value.index() == 1) {
      // -0.0 and +0.0 compare equal; NaN matches nothing.
      return std::get<double>(value) == std::get<double>(pred.lo);
    }
    return compare_scalars(value, pred.lo) == 0;
  }
  if (value.index() == 1) {
    const double v = std::get<double>(value);
    return v >= std::get<double>(pred.lo) && v <= std::get<double>(pred.hi);
  }
  return compare_scalars(value, pred.lo) >= 0 && compare_scalars(value, pred.hi) <= 0;
}

namespace {

template <typename T, typename Match>
void evaluate_typed(const std::vector<T>& values, const Bitmap& valid, Bitmap& out, Match match) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (valid.get(i) && match(values[i])) out.set(i, true);
  }
}

}  // namespace

Bitmap evaluate_predicate(const ColumnVector& col, const PredicateSpec& pred) {
  if (pred.literal_type() != col.type()) {
    fail(ErrorCode::kTypeMismatch, "predicate literal type differs from column type");
  }
  Bitmap out(col.size());
  const auto& valid = col.validity();
  const bool eq = pred.op == PredicateOp::Eq;
  switch (col.type()) {
    case LogicalType::Int64: {
      const int64_t lo = std::get<int64_t>(pred.lo), hi = eq ? lo : std::get<int64_t>(pred.hi);
      evaluate_typed(col.ints(), valid, out, [&](int64_t v) { return v >= lo && v <= hi; });
      break;
    }
    case LogicalType::Float64: {
      const double lo = std::get<double>(pred.lo), hi = eq ? lo : std::get<double>(pred.hi);
      evaluate_typed(col.doubles(), valid, out, [&](double v) { return v >= lo && v <= hi; });
      break;
    }
    case LogicalType::Utf8String: {
      const auto& lo = std::get<std::string>(pred.lo);
      const auto& hi = eq ? lo : std::get<std::string>(pred.hi);
      evaluate_typed(col.strings(), valid, out,
                     [&](const std::string& v) { return v >= lo && v <= hi; });
      break;
    }
    case LogicalType::Bool: {
      const uint8_t lo = std::get<bool>(pred.lo), hi = eq ? lo : std::get<bool>(pred.hi);
      evaluate_typed(col.bools(), valid, out,
                     [&](uint8_t v) { return (v != 0) >= lo && (v != 0) <= hi; });
      break;
    }
  }
  return out;
}

std::string describe_predicate(const PredicateSpec& pred) {
  if (pred.op == PredicateOp::Eq) return pred.column + " = " + scalar_to_string(pred.lo);
  return pred.column + " in [" + scalar_to_string(pred.lo) + ", " + scalar_to_string(pred.hi) + "]";
}

}  // namespace paxlab
