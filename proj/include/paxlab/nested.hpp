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
#include <string>
#include <vector>

#include "paxlab/column.hpp"

namespace paxlab {

enum class Repetition : uint8_t { Required, Optional, Repeated };
enum class NodeKind : uint8_t { Atomic, Struct, List };

const char* repetition_name(Repetition r);

// A List node wraps exactly one Repeated child (the element). A Repeated
// node's value is the sequence of its instances.
struct NestedField {
  std::string name;
  Repetition repetition = Repetition::Required;
  NodeKind kind = NodeKind::Atomic;
  LogicalType type = LogicalType::Int64;  // Atomic only
  std::vector<NestedField> children;

  static NestedField atomic(std::string name, LogicalType type,
                            Repetition rep = Repetition::Required);
  static NestedField structure(std::string name, std::vector<NestedField> children,
                               Repetition rep = Repetition::Required);
  // `element` is forced to Repeated.
  static NestedField list(std::string name, NestedField element,
                          Repetition rep = Repetition::Optional);

  friend bool operator==(const NestedField&, const NestedField&) = default;
};

struct NestedSchema {
  NestedField root;  // Required Struct

  size_t leaf_count() const;
  // Leaf paths in pre-order, e.g. "l.element.f".
  std::vector<std::string> leaf_paths() const;
  size_t depth() const;
};

void validate(const NestedSchema& schema);

struct NestedValue {
  enum class Kind : uint8_t { Null, Atom, Struct, List };
  Kind kind = Kind::Null;
  Scalar atom;
  // Struct: one entry per schema child. List: the elements.
  std::vector<NestedValue> items;

  static NestedValue null() { return {}; }
  static NestedValue of(Scalar v) { return NestedValue{Kind::Atom, std::move(v), {}}; }
  static NestedValue structure(std::vector<NestedValue> fields) {
    return NestedValue{Kind::Struct, int64_t{0}, std::move(fields)};
  }
  static NestedValue list(std::vector<NestedValue> elements) {
    return NestedValue{Kind::List, int64_t{0}, std::move(elements)};
  }

  friend bool operator==(const NestedValue& a, const NestedValue& b);
};

using NestedRecord = NestedValue;

// ---- Dremel repetition / definition levels ----

struct DremelColumn {
  std::string path;
  uint32_t max_rep = 0;
  uint32_t max_def = 0;
  // One slot per level entry; null where def < max_def.
  ColumnVector values;
  std::vector<uint32_t> rep;
  std::vector<uint32_t> def;
};

struct ShreddedDremel {
  std::vector<DremelColumn> leaves;
};

ShreddedDremel shred_dremel(const std::vector<NestedRecord>& records, const NestedSchema& schema);
std::vector<NestedRecord> assemble_dremel(const ShreddedDremel& shredded, const NestedSchema& schema);

// ---- length / presence ----

struct ShreddedLengthPresence {
  // Dense present values per leaf, leaves in pre-order.
  std::vector<std::string> leaf_paths;
  std::vector<ColumnVector> leaves;
  // One entry per Optional node, pre-order.
  std::vector<std::string> presence_paths;
  std::vector<Bitmap> presence;
  // One entry per Repeated node, pre-order.
  std::vector<std::string> length_paths;
  std::vector<std::vector<uint64_t>> lengths;
};

ShreddedLengthPresence shred_length_presence(const std::vector<NestedRecord>& records,
                                             const NestedSchema& schema);
std::vector<NestedRecord> assemble_length_presence(const ShreddedLengthPresence& shredded,
                                                   const NestedSchema& schema);

enum class NestedModel : uint8_t { Dremel, LengthPresence };

const char* nested_model_name(NestedModel m);

size_t count_physical_columns(const NestedSchema& schema, NestedModel model);

// Encoded sizes. Every structural stream goes through rle_bp so the two
// models are compared on equal encoder footing. Dremel levels use the max
// level width and are omitted when the max is 0; presence uses width 1.
// Present values are plain.
struct NestedSize {
  uint64_t value_bytes = 0;
  uint64_t structure_bytes = 0;
  uint64_t total() const { return value_bytes + structure_bytes; }
};
NestedSize encoded_size(const ShreddedDremel& s);
NestedSize encoded_size(const ShreddedLengthPresence& s);

// ---- the recursive benchmark schema ----
//
// Struct { f: Float64, l: Optional List<Repeated Struct{same}> } unrolled to
// `max_depth` struct levels; the deepest struct has no list. Each list holds
// one element with probability 0.97, none with 0.01 and two with 0.02.
NestedSchema recursive_schema(size_t max_depth);
std::vector<NestedRecord> generate_recursive_records(size_t max_depth, size_t count, uint64_t seed);

}  // namespace paxlab
