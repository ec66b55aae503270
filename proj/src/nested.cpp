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

#include "paxlab/nested.hpp"

#include "paxlab/encoders.hpp"
#include "paxlab/status.hpp"
#include "paxlab/workload.hpp"

namespace paxlab {

const char* repetition_name(Repetition r) {
  switch (r) {
    case Repetition::Required: return "required";
    case Repetition::Optional: return "optional";
    case Repetition::Repeated: return "repeated";
  }
  return "unknown";
}

const char* nested_model_name(NestedModel m) {
  return m == NestedModel::Dremel ? "dremel" : "length-presence";
}

NestedField NestedField::atomic(std::string name, LogicalType type, Repetition rep) {
  NestedField f;
  f.name = std::move(name);
  f.repetition = rep;
  f.kind = NodeKind::Atomic;
  f.type = type;
  return f;
}

NestedField NestedField::structure(std::string name, std::vector<NestedField> children,
                                   Repetition rep) {
  NestedField f;
  f.name = std::move(name);
  f.repetition = rep;
  f.kind = NodeKind::Struct;
  f.children = std::move(children);
  return f;
}

NestedField NestedField::list(std::string name, NestedField element, Repetition rep) {
  NestedField f;
  f.name = std::move(name);
  f.repetition = rep;
  f.kind = NodeKind::List;
  element.repetition = Repetition::Repeated;
  f.children.push_back(std::move(element));
  return f;
}

bool operator==(const NestedValue& a, const NestedValue& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == NestedValue::Kind::Atom) return scalars_identical(a.atom, b.atom);
  return a.items == b.items;
}

namespace {

// Pre-order flattening of a schema.
struct FlatNode {
  const NestedField* field = nullptr;
  std::string path;
  uint32_t max_rep = 0;  // including self
  uint32_t max_def = 0;  // including self
  size_t leaf_begin = 0, leaf_end = 0;
  size_t leaf_index = 0;      // Atomic
  size_t presence_index = 0;  // Optional
  size_t length_index = 0;    // Repeated
  std::vector<size_t> children;
};

class FlatSchema {
 public:
  explicit FlatSchema(const NestedSchema& schema) {
    validate(schema);
    add(schema.root, "", 0, 0);
  }

  const FlatNode& node(size_t i) const { return nodes_[i]; }
  size_t leaves() const { return leaf_nodes_.size(); }
  const FlatNode& leaf(size_t i) const { return nodes_[leaf_nodes_[i]]; }
  std::vector<std::string> paths(size_t which) const {
    std::vector<std::string> out;
    for (const auto& n : nodes_) {
      const bool take = (which == 0 && n.field->kind == NodeKind::Atomic) ||
                        (which == 1 && n.field->repetition == Repetition::Optional) ||
                        (which == 2 && n.field->repetition == Repetition::Repeated);
      if (take && !n.path.empty()) out.push_back(n.path);
    }
    return out;
  }
  size_t optional_count() const { return optionals_; }
  size_t repeated_count() const { return repeateds_; }

 private:
  size_t add(const NestedField& f, const std::string& prefix, uint32_t rep, uint32_t def) {
    const size_t id = nodes_.size();
    nodes_.emplace_back();
    FlatNode n;
    n.field = &f;
    n.path = prefix.empty() ? f.name : prefix + "." + f.name;
    if (id == 0) n.path.clear();
    n.max_rep = rep + (f.repetition == Repetition::Repeated ? 1 : 0);
    n.max_def = def + (f.repetition == Repetition::Required ? 0 : 1);
    if (f.repetition == Repetition::Optional) n.presence_index = optionals_++;
    if (f.repetition == Repetition::Repeated) n.length_index = repeateds_++;
    n.leaf_begin = leaf_nodes_.size();
    if (f.kind == NodeKind::Atomic) {
      n.leaf_index = leaf_nodes_.size();
      leaf_nodes_.push_back(id);
    }
    nodes_[id] = n;
    for (const auto& c : f.children) {
      const size_t cid = add(c, nodes_[id].path, n.max_rep, n.max_def);
      nodes_[id].children.push_back(cid);
    }
    nodes_[id].leaf_end = leaf_nodes_.size();
    return id;
  }

  std::vector<FlatNode> nodes_;
  std::vector<size_t> leaf_nodes_;
  size_t optionals_ = 0, repeateds_ = 0;
};

void validate_field(const NestedField& f, bool is_root) {
  if (f.name.empty() && !is_root) fail(ErrorCode::kSchemaMismatch, "unnamed field");
  switch (f.kind) {
    case NodeKind::Atomic:
      if (!f.children.empty()) fail(ErrorCode::kSchemaMismatch, "atomic field '" + f.name + "' has children");
      break;
    case NodeKind::Struct:
      if (f.children.empty()) fail(ErrorCode::kSchemaMismatch, "struct '" + f.name + "' has no fields");
      break;
    case NodeKind::List:
      if (f.children.size() != 1 || f.children[0].repetition != Repetition::Repeated) {
        fail(ErrorCode::kSchemaMismatch, "list '" + f.name + "' needs one repeated element");
      }
      break;
  }
  for (const auto& c : f.children) validate_field(c, false);
}

[[noreturn]] void mismatch(const FlatNode& n, const std::string& what) {
  fail(ErrorCode::kSchemaMismatch, "at '" + (n.path.empty() ? std::string("<root>") : n.path) +
                                       "': " + what);
}

[[noreturn]] void bad_levels(const std::string& what) { fail(ErrorCode::kInvalidLevels, what); }

void check_atom(const FlatNode& n, const NestedValue& v) {
  if (v.kind != NestedValue::Kind::Atom) mismatch(n, "expected a value");
  if (scalar_type(v.atom) != n.field->type) mismatch(n, "value has the wrong type");
}

// ---- Dremel ----

class DremelShredder {
 public:
  DremelShredder(const FlatSchema& s, ShreddedDremel& out) : s_(s), out_(out) {}

  void record(const NestedValue& v) { node(0, v, 0, 0); }

 private:
  void node(size_t id, const NestedValue& v, uint32_t rep, uint32_t def) {
    const FlatNode& n = s_.node(id);
    switch (n.field->repetition) {
      case Repetition::Required:
        if (v.kind == NestedValue::Kind::Null) mismatch(n, "required value missing");
        instance(id, v, rep, def);
        break;
      case Repetition::Optional:
        if (v.kind == NestedValue::Kind::Null) {
          missing(id, rep, def);
        } else {
          instance(id, v, rep, def + 1);
        }
        break;
      case Repetition::Repeated:
        if (v.kind != NestedValue::Kind::List) mismatch(n, "repeated field needs a list value");
        if (v.items.empty()) {
          missing(id, rep, def);
          break;
        }
        for (size_t i = 0; i < v.items.size(); ++i) {
          if (v.items[i].kind == NestedValue::Kind::Null) mismatch(n, "null list element");
          instance(id, v.items[i], i == 0 ? rep : n.max_rep, def + 1);
        }
        break;
    }
  }

  void instance(size_t id, const NestedValue& v, uint32_t rep, uint32_t def) {
    const FlatNode& n = s_.node(id);
    switch (n.field->kind) {
      case NodeKind::Atomic: {
        check_atom(n, v);
        DremelColumn& c = out_.leaves[n.leaf_index];
        c.values.append(v.atom);
        c.rep.push_back(rep);
        c.def.push_back(def);
        break;
      }
      case NodeKind::Struct:
        if (v.kind != NestedValue::Kind::Struct || v.items.size() != n.children.size()) {
          mismatch(n, "expected a struct with " + std::to_string(n.children.size()) + " fields");
        }
        for (size_t i = 0; i < n.children.size(); ++i) node(n.children[i], v.items[i], rep, def);
        break;
      case NodeKind::List:
        if (v.kind != NestedValue::Kind::List) mismatch(n, "expected a list");
        node(n.children[0], v, rep, def);
        break;
    }
  }

  void missing(size_t id, uint32_t rep, uint32_t def) {
    const FlatNode& n = s_.node(id);
    for (size_t l = n.leaf_begin; l < n.leaf_end; ++l) {
      DremelColumn& c = out_.leaves[l];
      c.values.append_null();
      c.rep.push_back(rep);
      c.def.push_back(def);
    }
  }

  const FlatSchema& s_;
  ShreddedDremel& out_;
};

class DremelAssembler {
 public:
  DremelAssembler(const FlatSchema& s, const ShreddedDremel& in) : s_(s), in_(in), pos_(s.leaves(), 0) {}

  std::vector<NestedRecord> run() {
    std::vector<NestedRecord> out;
    if (s_.leaves() == 0) return out;
    while (pos_[0] < in_.leaves[0].rep.size()) {
      for (size_t l = 0; l < s_.leaves(); ++l) {
        if (pos_[l] >= in_.leaves[l].rep.size()) bad_levels("leaf '" + in_.leaves[l].path + "' ran out of entries");
        if (in_.leaves[l].rep[pos_[l]] != 0) bad_levels("record does not start at repetition level 0");
      }
      out.push_back(node(0, 0));
    }
    for (size_t l = 0; l < s_.leaves(); ++l) {
      if (pos_[l] != in_.leaves[l].rep.size()) {
        bad_levels("leaf '" + in_.leaves[l].path + "' has unconsumed entries");
      }
    }
    return out;
  }

 private:
  uint32_t peek_def(const FlatNode& n) const {
    const auto& c = in_.leaves[n.leaf_begin];
    if (pos_[n.leaf_begin] >= c.def.size()) bad_levels("leaf '" + c.path + "' ran out of entries");
    return c.def[pos_[n.leaf_begin]];
  }

  // Consumes the single placeholder entry each leaf under `n` carries when
  // `n` is absent or empty.
  void skip_missing(const FlatNode& n, uint32_t below) {
    for (size_t l = n.leaf_begin; l < n.leaf_end; ++l) {
      const auto& c = in_.leaves[l];
      if (pos_[l] >= c.def.size()) bad_levels("leaf '" + c.path + "' ran out of entries");
      if (c.def[pos_[l]] >= below) bad_levels("leaf '" + c.path + "' disagrees on a missing subtree");
      ++pos_[l];
    }
  }

  NestedValue node(size_t id, uint32_t def) {
    const FlatNode& n = s_.node(id);
    switch (n.field->repetition) {
      case Repetition::Required:
        return instance(id, def);
      case Repetition::Optional:
        if (peek_def(n) <= def) {
          skip_missing(n, def + 1);
          return NestedValue::null();
        }
        return instance(id, def + 1);
      case Repetition::Repeated: {
        if (peek_def(n) <= def) {
          skip_missing(n, def + 1);
          return NestedValue::list({});
        }
        std::vector<NestedValue> items;
        const auto& first = in_.leaves[n.leaf_begin];
        while (true) {
          items.push_back(instance(id, def + 1));
          const size_t p = pos_[n.leaf_begin];
          if (p >= first.rep.size() || first.rep[p] != n.max_rep) break;
          if (first.def[p] <= def) bad_levels("continuation of '" + n.path + "' below its definition level");
        }
        return NestedValue::list(std::move(items));
      }
    }
    bad_levels("bad repetition");
  }

  NestedValue instance(size_t id, uint32_t def) {
    const FlatNode& n = s_.node(id);
    switch (n.field->kind) {
      case NodeKind::Atomic: {
        const auto& c = in_.leaves[n.leaf_index];
        size_t& p = pos_[n.leaf_index];
        if (p >= c.def.size()) bad_levels("leaf '" + c.path + "' ran out of entries");
        if (c.def[p] != n.max_def || def != n.max_def) bad_levels("leaf '" + c.path + "' definition level mismatch");
        if (!c.values.is_valid(p)) bad_levels("leaf '" + c.path + "' is null at its max definition level");
        return NestedValue::of(c.values.scalar_at(p++));
      }
      case NodeKind::Struct: {
        std::vector<NestedValue> fields;
        fields.reserve(n.children.size());
        for (size_t c : n.children) fields.push_back(node(c, def));
        return NestedValue::structure(std::move(fields));
      }
      case NodeKind::List:
        return node(n.children[0], def);
    }
    bad_levels("bad node kind");
  }

  const FlatSchema& s_;
  const ShreddedDremel& in_;
  std::vector<size_t> pos_;
};

// ---- length / presence ----

class LpShredder {
 public:
  LpShredder(const FlatSchema& s, ShreddedLengthPresence& out) : s_(s), out_(out) {}

  void record(const NestedValue& v) { node(0, v); }

 private:
  void node(size_t id, const NestedValue& v) {
    const FlatNode& n = s_.node(id);
    switch (n.field->repetition) {
      case Repetition::Required:
        if (v.kind == NestedValue::Kind::Null) mismatch(n, "required value missing");
        instance(id, v);
        break;
      case Repetition::Optional:
        out_.presence[n.presence_index].push_back(v.kind != NestedValue::Kind::Null);
        if (v.kind != NestedValue::Kind::Null) instance(id, v);
        break;
      case Repetition::Repeated:
        if (v.kind != NestedValue::Kind::List) mismatch(n, "repeated field needs a list value");
        out_.lengths[n.length_index].push_back(v.items.size());
        for (const auto& item : v.items) {
          if (item.kind == NestedValue::Kind::Null) mismatch(n, "null list element");
          instance(id, item);
        }
        break;
    }
  }

  void instance(size_t id, const NestedValue& v) {
    const FlatNode& n = s_.node(id);
    switch (n.field->kind) {
      case NodeKind::Atomic:
        check_atom(n, v);
        out_.leaves[n.leaf_index].append(v.atom);
        break;
      case NodeKind::Struct:
        if (v.kind != NestedValue::Kind::Struct || v.items.size() != n.children.size()) {
          mismatch(n, "expected a struct with " + std::to_string(n.children.size()) + " fields");
        }
        for (size_t i = 0; i < n.children.size(); ++i) node(n.children[i], v.items[i]);
        break;
      case NodeKind::List:
        if (v.kind != NestedValue::Kind::List) mismatch(n, "expected a list");
        node(n.children[0], v);
        break;
    }
  }

  const FlatSchema& s_;
  ShreddedLengthPresence& out_;
};

class LpAssembler {
 public:
  LpAssembler(const FlatSchema& s, const ShreddedLengthPresence& in)
      : s_(s),
        in_(in),
        leaf_pos_(s.leaves(), 0),
        presence_pos_(s.optional_count(), 0),
        length_pos_(s.repeated_count(), 0) {}

  std::vector<NestedRecord> run(size_t records) {
    std::vector<NestedRecord> out;
    out.reserve(records);
    for (size_t r = 0; r < records; ++r) out.push_back(node(0));
    for (size_t i = 0; i < leaf_pos_.size(); ++i) {
      if (leaf_pos_[i] != in_.leaves[i].size()) bad_levels("leaf '" + in_.leaf_paths[i] + "' has unconsumed values");
    }
    for (size_t i = 0; i < presence_pos_.size(); ++i) {
      if (presence_pos_[i] != in_.presence[i].size()) bad_levels("presence '" + in_.presence_paths[i] + "' has unconsumed bits");
    }
    for (size_t i = 0; i < length_pos_.size(); ++i) {
      if (length_pos_[i] != in_.lengths[i].size()) bad_levels("lengths '" + in_.length_paths[i] + "' has unconsumed entries");
    }
    return out;
  }

 private:
  NestedValue node(size_t id) {
    const FlatNode& n = s_.node(id);
    switch (n.field->repetition) {
      case Repetition::Required:
        return instance(id);
      case Repetition::Optional: {
        const Bitmap& bits = in_.presence[n.presence_index];
        size_t& p = presence_pos_[n.presence_index];
        if (p >= bits.size()) bad_levels("presence '" + n.path + "' ran out of bits");
        if (!bits.get(p++)) return NestedValue::null();
        return instance(id);
      }
      case Repetition::Repeated: {
        const auto& lens = in_.lengths[n.length_index];
        size_t& p = length_pos_[n.length_index];
        if (p >= lens.size()) bad_levels("lengths '" + n.path + "' ran out of entries");
        const uint64_t len = lens[p++];
        std::vector<NestedValue> items;
        for (uint64_t i = 0; i < len; ++i) items.push_back(instance(id));
        return NestedValue::list(std::move(items));
      }
    }
    bad_levels("bad repetition");
  }

  NestedValue instance(size_t id) {
    const FlatNode& n = s_.node(id);
    switch (n.field->kind) {
      case NodeKind::Atomic: {
        const ColumnVector& col = in_.leaves[n.leaf_index];
        size_t& p = leaf_pos_[n.leaf_index];
        if (p >= col.size()) bad_levels("leaf '" + n.path + "' ran out of values");
        if (!col.is_valid(p)) bad_levels("leaf '" + n.path + "' holds a null");
        return NestedValue::of(col.scalar_at(p++));
      }
      case NodeKind::Struct: {
        std::vector<NestedValue> fields;
        fields.reserve(n.children.size());
        for (size_t c : n.children) fields.push_back(node(c));
        return NestedValue::structure(std::move(fields));
      }
      case NodeKind::List:
        return node(n.children[0]);
    }
    bad_levels("bad node kind");
  }

  const FlatSchema& s_;
  const ShreddedLengthPresence& in_;
  std::vector<size_t> leaf_pos_, presence_pos_, length_pos_;
};

size_t depth_of(const NestedField& f) {
  size_t d = 0;
  for (const auto& c : f.children) d = std::max(d, depth_of(c));
  return d + 1;
}

}  // namespace

void validate(const NestedSchema& schema) {
  if (schema.root.kind != NodeKind::Struct || schema.root.repetition != Repetition::Required) {
    fail(ErrorCode::kSchemaMismatch, "root must be a required struct");
  }
  validate_field(schema.root, true);
}

size_t NestedSchema::leaf_count() const { return FlatSchema(*this).leaves(); }

std::vector<std::string> NestedSchema::leaf_paths() const { return FlatSchema(*this).paths(0); }

size_t NestedSchema::depth() const { return depth_of(root); }

ShreddedDremel shred_dremel(const std::vector<NestedRecord>& records, const NestedSchema& schema) {
  FlatSchema flat(schema);
  ShreddedDremel out;
  for (size_t l = 0; l < flat.leaves(); ++l) {
    const FlatNode& n = flat.leaf(l);
    DremelColumn c;
    c.path = n.path;
    c.max_rep = n.max_rep;
    c.max_def = n.max_def;
    c.values = ColumnVector(n.field->type);
    out.leaves.push_back(std::move(c));
  }
  DremelShredder sh(flat, out);
  for (const auto& r : records) sh.record(r);
  return out;
}

std::vector<NestedRecord> assemble_dremel(const ShreddedDremel& shredded, const NestedSchema& schema) {
  FlatSchema flat(schema);
  if (shredded.leaves.size() != flat.leaves()) {
    bad_levels("expected " + std::to_string(flat.leaves()) + " leaves, got " +
               std::to_string(shredded.leaves.size()));
  }
  for (size_t l = 0; l < flat.leaves(); ++l) {
    const DremelColumn& c = shredded.leaves[l];
    const FlatNode& n = flat.leaf(l);
    if (c.rep.size() != c.def.size() || c.values.size() != c.rep.size()) {
      bad_levels("leaf '" + c.path + "' level and value counts differ");
    }
    if (c.values.type() != n.field->type) bad_levels("leaf '" + c.path + "' has the wrong type");
    for (size_t i = 0; i < c.rep.size(); ++i) {
      if (c.rep[i] > n.max_rep) bad_levels("leaf '" + c.path + "' repetition level exceeds max");
      if (c.def[i] > n.max_def) bad_levels("leaf '" + c.path + "' definition level exceeds max");
      if (c.values.is_valid(i) != (c.def[i] == n.max_def)) {
        bad_levels("leaf '" + c.path + "' presence disagrees with definition level");
      }
    }
  }
  return DremelAssembler(flat, shredded).run();
}

ShreddedLengthPresence shred_length_presence(const std::vector<NestedRecord>& records,
                                             const NestedSchema& schema) {
  FlatSchema flat(schema);
  ShreddedLengthPresence out;
  out.leaf_paths = flat.paths(0);
  out.presence_paths = flat.paths(1);
  out.length_paths = flat.paths(2);
  for (size_t l = 0; l < flat.leaves(); ++l) out.leaves.emplace_back(flat.leaf(l).field->type);
  out.presence.resize(flat.optional_count());
  out.lengths.resize(flat.repeated_count());
  LpShredder sh(flat, out);
  for (const auto& r : records) sh.record(r);
  return out;
}

std::vector<NestedRecord> assemble_length_presence(const ShreddedLengthPresence& shredded,
                                                   const NestedSchema& schema) {
  FlatSchema flat(schema);
  if (shredded.leaves.size() != flat.leaves() || shredded.presence.size() != flat.optional_count() ||
      shredded.lengths.size() != flat.repeated_count()) {
    bad_levels("shredded columns do not match the schema");
  }
  // Every record instantiates the root, so the record count is the number
  // of entries in any column owned directly by the root context.
  size_t records = 0;
  bool known = false;
  const FlatNode& root = flat.node(0);
  for (size_t c : root.children) {
    const FlatNode& n = flat.node(c);
    if (n.field->repetition == Repetition::Optional) {
      records = shredded.presence[n.presence_index].size();
    } else if (n.field->repetition == Repetition::Repeated) {
      records = shredded.lengths[n.length_index].size();
    } else if (n.field->kind == NodeKind::Atomic) {
      records = shredded.leaves[n.leaf_index].size();
    } else {
      continue;
    }
    known = true;
    break;
  }
  if (!known) {
    // Only required structs under the root: descend to the first leaf.
    records = shredded.leaves.empty() ? 0 : shredded.leaves[0].size();
    const FlatNode* n = &flat.node(0);
    while (!n->children.empty()) {
      n = &flat.node(n->children[0]);
      if (n->field->repetition == Repetition::Optional) {
        records = shredded.presence[n->presence_index].size();
        break;
      }
      if (n->field->repetition == Repetition::Repeated) {
        records = shredded.lengths[n->length_index].size();
        break;
      }
    }
  }
  return LpAssembler(flat, shredded).run(records);
}

size_t count_physical_columns(const NestedSchema& schema, NestedModel model) {
  FlatSchema flat(schema);
  if (model == NestedModel::Dremel) return flat.leaves();
  return flat.leaves() + flat.optional_count() + flat.repeated_count();
}

namespace {

uint64_t level_bytes(const std::vector<uint32_t>& levels, uint32_t max_level) {
  if (max_level == 0) return 0;
  std::vector<uint64_t> v(levels.begin(), levels.end());
  return rle_bp_encode(v, bit_width(max_level), 8).payload.size();
}

}  // namespace

NestedSize encoded_size(const ShreddedDremel& s) {
  NestedSize out;
  for (const auto& c : s.leaves) {
    out.value_bytes += plain_encode(c.values).size();
    out.structure_bytes += level_bytes(c.rep, c.max_rep) + level_bytes(c.def, c.max_def);
  }
  return out;
}

NestedSize encoded_size(const ShreddedLengthPresence& s) {
  NestedSize out;
  for (const auto& c : s.leaves) out.value_bytes += plain_encode(c).size();
  for (const auto& p : s.presence) {
    std::vector<uint64_t> v(p.size());
    for (size_t i = 0; i < p.size(); ++i) v[i] = p.get(i);
    out.structure_bytes += rle_bp_encode(v, 1, 8).payload.size();
  }
  for (const auto& l : s.lengths) out.structure_bytes += rle_bp_encode(l, 8).payload.size();
  return out;
}

NestedSchema recursive_schema(size_t max_depth) {
  if (max_depth == 0) fail(ErrorCode::kInvalidConfig, "max_depth must be at least 1");
  NestedField level = NestedField::structure("element", {NestedField::atomic("f", LogicalType::Float64)});
  for (size_t d = max_depth; d > 1; --d) {
    NestedField next = NestedField::structure(
        "element", {NestedField::atomic("f", LogicalType::Float64), NestedField::list("l", level)});
    level = std::move(next);
  }
  level.name = "root";
  level.repetition = Repetition::Required;
  return NestedSchema{std::move(level)};
}

namespace {

NestedValue recursive_value(size_t depth, size_t max_depth, Rng& rng) {
  std::vector<NestedValue> fields;
  fields.push_back(NestedValue::of(static_cast<double>(rng.below(1000000)) / 100.0));
  if (depth < max_depth) {
    const double u = rng.uniform();
    const size_t n = u < 0.97 ? 1 : (u < 0.98 ? 0 : 2);
    std::vector<NestedValue> items;
    for (size_t i = 0; i < n; ++i) items.push_back(recursive_value(depth + 1, max_depth, rng));
    fields.push_back(NestedValue::list(std::move(items)));
  }
  return NestedValue::structure(std::move(fields));
}

}  // namespace

std::vector<NestedRecord> generate_recursive_records(size_t max_depth, size_t count, uint64_t seed) {
  if (max_depth == 0) fail(ErrorCode::kInvalidConfig, "max_depth must be at least 1");
  Rng rng(splitmix64(seed));
  std::vector<NestedRecord> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(recursive_value(1, max_depth, rng));
  return out;
}

}  // namespace paxlab
