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

#include "paxlab/nested.hpp"
#include "paxlab/status.hpp"
#include "test_support.hpp"

namespace paxlab {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const PaxError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no PaxError thrown";
  return ErrorCode::kIoError;
}

Repetition some_repetition(Rng& rng) {
  switch (rng.below(5)) {
    case 0: return Repetition::Repeated;
    case 1:
    case 2: return Repetition::Optional;
    default: return Repetition::Required;
  }
}

NestedField random_field(Rng& rng, const std::string& name, size_t depth, size_t max_depth) {
  const uint64_t pick = depth >= max_depth ? 0 : rng.below(3);
  if (pick == 0) return NestedField::atomic(name, testing::any_type(rng), some_repetition(rng));
  if (pick == 1) {
    std::vector<NestedField> kids;
    const size_t fanout = 1 + rng.below(4);
    for (size_t i = 0; i < fanout; ++i) kids.push_back(random_field(rng, "f" + std::to_string(i), depth + 1, max_depth));
    return NestedField::structure(name, std::move(kids), some_repetition(rng));
  }
  return NestedField::list(name, random_field(rng, "element", depth + 1, max_depth),
                           rng.below(2) == 0 ? Repetition::Optional : Repetition::Required);
}

NestedSchema random_schema(Rng& rng) {
  std::vector<NestedField> kids;
  const size_t fanout = 1 + rng.below(4);
  const size_t max_depth = 1 + rng.below(6);
  for (size_t i = 0; i < fanout; ++i) kids.push_back(random_field(rng, "c" + std::to_string(i), 2, max_depth));
  return NestedSchema{NestedField::structure("root", std::move(kids))};
}

Scalar random_atom(Rng& rng, LogicalType type) {
  switch (type) {
    case LogicalType::Int64: return testing::edgy_int(rng);
    case LogicalType::Float64: return testing::edgy_double(rng);
    case LogicalType::Utf8String: return testing::edgy_string(rng);
    case LogicalType::Bool: return rng.below(2) == 0;
  }
  return int64_t{0};
}

NestedValue random_instance(Rng& rng, const NestedField& f);

NestedValue random_value(Rng& rng, const NestedField& f) {
  if (f.repetition == Repetition::Optional && rng.below(4) == 0) return NestedValue::null();
  if (f.repetition == Repetition::Repeated) {
    std::vector<NestedValue> items;
    for (size_t n = rng.below(4); n > 0; --n) items.push_back(random_instance(rng, f));
    return NestedValue::list(std::move(items));
  }
  return random_instance(rng, f);
}

NestedValue random_instance(Rng& rng, const NestedField& f) {
  switch (f.kind) {
    case NodeKind::Atomic: return NestedValue::of(random_atom(rng, f.type));
    case NodeKind::Struct: {
      std::vector<NestedValue> fields;
      for (const auto& c : f.children) fields.push_back(random_value(rng, c));
      return NestedValue::structure(std::move(fields));
    }
    case NodeKind::List: return random_value(rng, f.children[0]);
  }
  return NestedValue::null();
}

std::vector<NestedRecord> random_records(Rng& rng, const NestedSchema& s, size_t n) {
  std::vector<NestedRecord> out;
  for (size_t i = 0; i < n; ++i) out.push_back(random_instance(rng, s.root));
  return out;
}

TEST(Nested, RoundTripRandomSchemasBothModels) {
  testing::for_all(81, 120, [](Rng& rng, int) {
    const NestedSchema schema = random_schema(rng);
    const auto records = random_records(rng, schema, rng.below(40));
    const ShreddedDremel d = shred_dremel(records, schema);
    for (const auto& leaf : d.leaves) {
      ASSERT_EQ(leaf.rep.size(), leaf.def.size());
      ASSERT_EQ(leaf.values.size(), leaf.rep.size());
      for (size_t i = 0; i < leaf.rep.size(); ++i) {
        EXPECT_LE(leaf.rep[i], leaf.max_rep);
        EXPECT_LE(leaf.def[i], leaf.max_def);
        EXPECT_EQ(leaf.values.is_valid(i), leaf.def[i] == leaf.max_def);
      }
    }
    EXPECT_EQ(assemble_dremel(d, schema), records);
    EXPECT_EQ(assemble_length_presence(shred_length_presence(records, schema), schema), records);
  });
}

TEST(Nested, ListOfTwoStructsHandWalk) {
  const NestedSchema schema{NestedField::structure(
      "root", {NestedField::list("l", NestedField::structure("element", {NestedField::atomic("a", LogicalType::Int64)}))})};
  const auto rec = NestedValue::structure({NestedValue::list(
      {NestedValue::structure({NestedValue::of(int64_t{1})}), NestedValue::structure({NestedValue::of(int64_t{2})})})});
  const ShreddedDremel d = shred_dremel({rec}, schema);
  ASSERT_EQ(d.leaves.size(), 1u);
  const DremelColumn& c = d.leaves[0];
  EXPECT_EQ(c.path, "l.element.a");
  EXPECT_EQ(c.max_rep, 1u);
  EXPECT_EQ(c.max_def, 2u);
  EXPECT_EQ(c.rep, (std::vector<uint32_t>{0, 1}));
  EXPECT_EQ(c.def, (std::vector<uint32_t>{2, 2}));
  EXPECT_EQ(c.values, ColumnVector::from_int64({1, 2}));

  const ShreddedLengthPresence lp = shred_length_presence({rec}, schema);
  ASSERT_EQ(lp.lengths.size(), 1u);
  EXPECT_EQ(lp.lengths[0], (std::vector<uint64_t>{2}));
  ASSERT_EQ(lp.presence.size(), 1u);
  EXPECT_EQ(lp.presence[0].size(), 1u);
  EXPECT_TRUE(lp.presence[0].get(0));
}

TEST(Nested, FlatRequiredRecordHasZeroLevels) {
  const NestedSchema schema{NestedField::structure(
      "root", {NestedField::atomic("a", LogicalType::Int64), NestedField::atomic("b", LogicalType::Bool)})};
  const auto d = shred_dremel({NestedValue::structure({NestedValue::of(int64_t{4}), NestedValue::of(true)})}, schema);
  for (const auto& leaf : d.leaves) {
    EXPECT_EQ(leaf.rep, (std::vector<uint32_t>{0}));
    EXPECT_EQ(leaf.def, (std::vector<uint32_t>{0}));
  }
}

TEST(Nested, AbsentOptionalStruct) {
  const NestedSchema schema{NestedField::structure(
      "root", {NestedField::structure("s", {NestedField::atomic("x", LogicalType::Int64), NestedField::atomic("y", LogicalType::Int64)},
                                      Repetition::Optional)})};
  const auto rec = NestedValue::structure({NestedValue::null()});
  const auto d = shred_dremel({rec}, schema);
  for (const auto& leaf : d.leaves) {
    EXPECT_EQ(leaf.def, (std::vector<uint32_t>{0}));
    EXPECT_FALSE(leaf.values.is_valid(0));
  }
  const auto lp = shred_length_presence({rec}, schema);
  ASSERT_EQ(lp.presence.size(), 1u);
  EXPECT_FALSE(lp.presence[0].get(0));
  for (const auto& leaf : lp.leaves) EXPECT_EQ(leaf.size(), 0u);
  EXPECT_EQ(count_physical_columns(schema, NestedModel::Dremel), 2u);
  EXPECT_EQ(count_physical_columns(schema, NestedModel::LengthPresence), 3u);
}

TEST(Nested, EmptyBatch) {
  const NestedSchema schema = recursive_schema(3);
  EXPECT_TRUE(assemble_dremel(shred_dremel({}, schema), schema).empty());
  EXPECT_TRUE(assemble_length_presence(shred_length_presence({}, schema), schema).empty());
}

TEST(Nested, BadLevelsRejected) {
  const NestedSchema schema = recursive_schema(2);
  ShreddedDremel d = shred_dremel(generate_recursive_records(2, 5, 1), schema);
  ShreddedDremel too_deep = d;
  too_deep.leaves[1].rep[0] = 0;
  too_deep.leaves[1].rep[1] = too_deep.leaves[1].max_rep + 1;
  EXPECT_EQ(code_of([&] { assemble_dremel(too_deep, schema); }), ErrorCode::kInvalidLevels);
  ShreddedDremel short_leaf = d;
  short_leaf.leaves[0].rep.pop_back();
  short_leaf.leaves[0].def.pop_back();
  EXPECT_EQ(code_of([&] { assemble_dremel(short_leaf, schema); }), ErrorCode::kInvalidLevels);

  ShreddedLengthPresence lp = shred_length_presence(generate_recursive_records(2, 5, 1), schema);
  lp.lengths[0][0] += 3;
  EXPECT_EQ(code_of([&] { assemble_length_presence(lp, schema); }), ErrorCode::kInvalidLevels);
}

TEST(Nested, SchemaMismatchRejected) {
  const NestedSchema schema{NestedField::structure("root", {NestedField::atomic("a", LogicalType::Int64)})};
  const auto wrong_type = NestedValue::structure({NestedValue::of(std::string("x"))});
  EXPECT_EQ(code_of([&] { shred_dremel({wrong_type}, schema); }), ErrorCode::kSchemaMismatch);
  const auto missing = NestedValue::structure({NestedValue::null()});
  EXPECT_EQ(code_of([&] { shred_length_presence({missing}, schema); }), ErrorCode::kSchemaMismatch);
  const NestedSchema optional_root{NestedField::structure("root", {NestedField::atomic("a", LogicalType::Int64)},
                                                          Repetition::Optional)};
  EXPECT_EQ(code_of([&] { validate(optional_root); }), ErrorCode::kSchemaMismatch);
}

TEST(Nested, RecursiveSchemaCounts) {
  for (size_t d = 1; d <= 8; ++d) {
    const NestedSchema s = recursive_schema(d);
    EXPECT_EQ(s.leaf_count(), d);
    const size_t dremel = count_physical_columns(s, NestedModel::Dremel);
    const size_t lp = count_physical_columns(s, NestedModel::LengthPresence);
    EXPECT_EQ(dremel, d);
    // One Optional list plus one Repeated element per level below the root.
    EXPECT_EQ(lp - dremel, 2 * (d - 1));
  }
}

TEST(Nested, RecursiveRecordsRoundTripAndListShape) {
  for (size_t d = 1; d <= 8; ++d) {
    SCOPED_TRACE("depth " + std::to_string(d));
    const NestedSchema s = recursive_schema(d);
    const auto recs = generate_recursive_records(d, 2000, 9 + d);
    EXPECT_EQ(assemble_dremel(shred_dremel(recs, s), s), recs);
    EXPECT_EQ(assemble_length_presence(shred_length_presence(recs, s), s), recs);
    if (d > 1) {
      size_t ones = 0;
      for (const auto& r : recs) ones += r.items[1].items.size() == 1;
      EXPECT_NEAR(double(ones) / recs.size(), 0.97, 0.015);
    }
  }
}

TEST(Nested, DremelOverheadGrowsWithDepth) {
  int64_t prev = std::numeric_limits<int64_t>::min();
  for (size_t d = 1; d <= 8; ++d) {
    const NestedSchema s = recursive_schema(d);
    const auto recs = generate_recursive_records(d, 20000, 3);
    const auto dremel = static_cast<int64_t>(encoded_size(shred_dremel(recs, s)).total());
    const auto lp = static_cast<int64_t>(encoded_size(shred_length_presence(recs, s)).total());
    EXPECT_GT(dremel - lp, prev) << "depth " << d;
    prev = dremel - lp;
  }
}

}  // namespace
}  // namespace paxlab
