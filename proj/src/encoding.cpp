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

#include <bit>
#include <cmath>
#include <unordered_map>

#include "paxlab/bytes.hpp"
#include "paxlab/encoders.hpp"
#include "paxlab/status.hpp"

namespace paxlab {

const char* encoding_scheme_name(EncodingScheme scheme) {
  switch (scheme) {
    case EncodingScheme::Plain: return "Plain";
    case EncodingScheme::RleBitpackHybrid: return "RleBitpackHybrid";
    case EncodingScheme::OrcHybrid: return "OrcHybrid";
    case EncodingScheme::Dict: return "Dict";
  }
  return "Unknown";
}

const char* policy_style_name(PolicyStyle style) {
  switch (style) {
    case PolicyStyle::ParquetLike: return "parquet-like";
    case PolicyStyle::OrcLike: return "orc-like";
    case PolicyStyle::PlainOnly: return "plain";
  }
  return "unknown";
}

std::optional<PolicyStyle> parse_policy_style(std::string_view name) {
  if (name == "parquet-like") return PolicyStyle::ParquetLike;
  if (name == "orc-like") return PolicyStyle::OrcLike;
  if (name == "plain") return PolicyStyle::PlainOnly;
  return std::nullopt;
}

const char* chunk_encoding_name(ChunkEncoding encoding) {
  switch (encoding) {
    case ChunkEncoding::Plain: return "Plain";
    case ChunkEncoding::Dict: return "Dict";
    case ChunkEncoding::OrcHybrid: return "OrcHybrid";
    case ChunkEncoding::ByteRle: return "ByteRle";
  }
  return "Unknown";
}

void validate(const EncodingPolicy& policy) {
  if (policy.dict_size_limit_bytes == 0) {
    fail(ErrorCode::kInvalidConfig, "dict_size_limit_bytes must be positive");
  }
  if (!(policy.ndv_ratio_threshold > 0.0)) {
    fail(ErrorCode::kInvalidConfig, "ndv_ratio_threshold must be positive");
  }
  if (policy.rle_min_run == 0) fail(ErrorCode::kInvalidConfig, "rle_min_run must be positive");
}

// ---- presence ----

std::vector<uint8_t> presence_encode(const Bitmap& validity) {
  const std::vector<uint8_t> bytes = validity.to_bytes();
  ByteWriter w;
  size_t lit_start = 0;
  auto flush = [&](size_t end) {
    if (end > lit_start) {
      w.put_varint((end - lit_start) << 1 | 1);
      w.put_bytes(std::span(bytes).subspan(lit_start, end - lit_start));
    }
  };
  size_t i = 0;
  while (i < bytes.size()) {
    size_t j = i + 1;
    while (j < bytes.size() && bytes[j] == bytes[i]) ++j;
    if (j - i >= 3) {
      flush(i);
      w.put_varint((j - i) << 1);
      w.put_u8(bytes[i]);
      lit_start = j;
    }
    i = j;
  }
  flush(bytes.size());
  return w.take();
}

Bitmap presence_decode(std::span<const uint8_t> payload, size_t bits) {
  const size_t want = (bits + 7) / 8;
  std::vector<uint8_t> bytes;
  bytes.reserve(want);
  ByteReader r(payload);
  while (bytes.size() < want) {
    const uint64_t header = r.varint();
    const uint64_t n = header >> 1;
    if (n == 0 || n > want - bytes.size()) fail(ErrorCode::kDecodeError, "bad presence run");
    if (header & 1) {
      auto lit = r.bytes(n);
      bytes.insert(bytes.end(), lit.begin(), lit.end());
    } else {
      bytes.insert(bytes.end(), n, r.u8());
    }
  }
  return Bitmap::from_bytes(bytes, bits);
}

// ---- plain ----

void plain_encode_into(const ColumnVector& col, std::vector<uint8_t>& out) {
  ByteWriter w;
  std::swap(w.buffer(), out);
  const auto& valid = col.validity();
  const bool all = valid.all();
  switch (col.type()) {
    case LogicalType::Int64:
      for (size_t i = 0; i < col.size(); ++i) {
        if (all || valid.get(i)) w.put_u64(static_cast<uint64_t>(col.ints()[i]));
      }
      break;
    case LogicalType::Float64:
      for (size_t i = 0; i < col.size(); ++i) {
        if (all || valid.get(i)) w.put_f64(col.doubles()[i]);
      }
      break;
    case LogicalType::Utf8String:
      for (size_t i = 0; i < col.size(); ++i) {
        if (!all && !valid.get(i)) continue;
        const auto& s = col.strings()[i];
        w.put_u32(static_cast<uint32_t>(s.size()));
        w.put_bytes(s);
      }
      break;
    case LogicalType::Bool:
      for (size_t i = 0; i < col.size(); ++i) {
        if (all || valid.get(i)) w.put_u8(col.bools()[i] ? 1 : 0);
      }
      break;
  }
  std::swap(w.buffer(), out);
}

std::vector<uint8_t> plain_encode(const ColumnVector& col) {
  std::vector<uint8_t> out;
  plain_encode_into(col, out);
  return out;
}

ColumnVector plain_decode(LogicalType type, std::span<const uint8_t> payload, size_t count,
                          size_t* consumed) {
  ByteReader r(payload);
  ColumnVector out;
  switch (type) {
    case LogicalType::Int64: {
      r.checked_len(count * 8);
      std::vector<int64_t> v(count);
      for (auto& x : v) x = static_cast<int64_t>(r.u64());
      out = ColumnVector::from_int64(std::move(v));
      break;
    }
    case LogicalType::Float64: {
      r.checked_len(count * 8);
      std::vector<double> v(count);
      for (auto& x : v) x = r.f64();
      out = ColumnVector::from_double(std::move(v));
      break;
    }
    case LogicalType::Utf8String: {
      r.checked_len(count * 4);
      std::vector<std::string> v(count);
      for (auto& x : v) {
        auto b = r.bytes(r.u32());
        x.assign(b.begin(), b.end());
      }
      out = ColumnVector::from_strings(std::move(v));
      break;
    }
    case LogicalType::Bool: {
      auto b = r.bytes(count);
      std::vector<uint8_t> v(b.begin(), b.end());
      for (auto x : v) {
        if (x > 1) fail(ErrorCode::kDecodeError, "plain bool byte above 1");
      }
      out = ColumnVector::from_bools(std::move(v));
      break;
    }
  }
  if (consumed != nullptr) *consumed = r.position();
  return out;
}

// ---- dictionaries ----

uint64_t dictionary_entry_bytes(const ColumnVector& entries, size_t i) {
  switch (entries.type()) {
    case LogicalType::Int64:
    case LogicalType::Float64: return 8;
    case LogicalType::Utf8String: return 4 + entries.strings()[i].size();
    case LogicalType::Bool: return 1;
  }
  return 0;
}

namespace {

struct DictBuild {
  Dictionary dictionary;
  // One code per present value before the overflow point.
  std::vector<uint64_t> codes;
  // Present values after the overflow point.
  ColumnVector spill;
};

template <typename T, typename Key, typename KeyOf>
void build_typed(const std::vector<T>& values, const Bitmap& valid, std::vector<T>& entries,
                 DictBuild& out, uint64_t limit, KeyOf key_of,
                 std::vector<T>& spill, uint64_t (*entry_bytes)(const T&)) {
  std::unordered_map<Key, uint64_t> index;
  const bool all = valid.all();
  bool overflowed = false;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!all && !valid.get(i)) continue;
    if (overflowed) {
      spill.push_back(values[i]);
      continue;
    }
    const Key key = key_of(values[i]);
    auto it = index.find(key);
    if (it != index.end()) {
      out.codes.push_back(it->second);
      continue;
    }
    const uint64_t bytes = entry_bytes(values[i]);
    if (out.dictionary.byte_size + bytes > limit) {
      overflowed = true;
      out.dictionary.overflowed = true;
      spill.push_back(values[i]);
      continue;
    }
    const uint64_t code = entries.size();
    index.emplace(key, code);
    entries.push_back(values[i]);
    out.dictionary.byte_size += bytes;
    out.codes.push_back(code);
  }
}

DictBuild build_dictionary(const ColumnVector& col, uint64_t limit) {
  DictBuild out;
  const auto& valid = col.validity();
  switch (col.type()) {
    case LogicalType::Int64: {
      std::vector<int64_t> entries, spill;
      build_typed<int64_t, int64_t>(
          col.ints(), valid, entries, out, limit, [](int64_t v) { return v; }, spill,
          [](const int64_t&) -> uint64_t { return 8; });
      out.dictionary.entries = ColumnVector::from_int64(std::move(entries));
      out.spill = ColumnVector::from_int64(std::move(spill));
      break;
    }
    case LogicalType::Float64: {
      std::vector<double> entries, spill;
      build_typed<double, uint64_t>(
          col.doubles(), valid, entries, out, limit,
          [](double v) { return std::bit_cast<uint64_t>(v); }, spill,
          [](const double&) -> uint64_t { return 8; });
      out.dictionary.entries = ColumnVector::from_double(std::move(entries));
      out.spill = ColumnVector::from_double(std::move(spill));
      break;
    }
    case LogicalType::Utf8String: {
      std::vector<std::string> entries, spill;
      build_typed<std::string, std::string_view>(
          col.strings(), valid, entries, out, limit,
          [](const std::string& v) { return std::string_view(v); }, spill,
          [](const std::string& s) -> uint64_t { return 4 + s.size(); });
      out.dictionary.entries = ColumnVector::from_strings(std::move(entries));
      out.spill = ColumnVector::from_strings(std::move(spill));
      break;
    }
    case LogicalType::Bool: {
      std::vector<uint8_t> entries, spill;
      build_typed<uint8_t, uint8_t>(
          col.bools(), valid, entries, out, limit, [](uint8_t v) { return v; }, spill,
          [](const uint8_t&) -> uint64_t { return 1; });
      out.dictionary.entries = ColumnVector::from_bools(std::move(entries));
      out.spill = ColumnVector::from_bools(std::move(spill));
      break;
    }
  }
  return out;
}

bool orc_uses_dictionary(const ColumnVector& col, const EncodingPolicy& policy) {
  if (col.type() != LogicalType::Utf8String || col.empty()) return false;
  std::unordered_map<std::string_view, char> seen;
  const auto& valid = col.validity();
  for (size_t i = 0; i < col.size(); ++i) {
    if (valid.get(i)) seen.emplace(col.strings()[i], 0);
  }
  const double ratio = static_cast<double>(seen.size()) / static_cast<double>(col.size());
  return ratio <= policy.ndv_ratio_threshold;
}

int code_width(size_t entries) { return entries <= 1 ? 0 : bit_width(entries - 1); }

std::vector<int64_t> as_signed(std::span<const uint64_t> codes) {
  return std::vector<int64_t>(codes.begin(), codes.end());
}

// Rebuilds values by dictionary lookup.
ColumnVector lookup(const ColumnVector& entries, std::span<const uint64_t> codes) {
  for (uint64_t c : codes) {
    if (c >= entries.size()) fail(ErrorCode::kDecodeError, "dictionary code out of range");
  }
  return std::visit(
      [&](const auto& dict) -> ColumnVector {
        using Vec = std::decay_t<decltype(dict)>;
        Vec out;
        out.reserve(codes.size());
        for (uint64_t c : codes) out.push_back(dict[c]);
        if constexpr (std::is_same_v<Vec, std::vector<int64_t>>) {
          return ColumnVector::from_int64(std::move(out));
        } else if constexpr (std::is_same_v<Vec, std::vector<double>>) {
          return ColumnVector::from_double(std::move(out));
        } else if constexpr (std::is_same_v<Vec, std::vector<std::string>>) {
          return ColumnVector::from_strings(std::move(out));
        } else {
          return ColumnVector::from_bools(std::move(out));
        }
      },
      entries.values());
}

// Spreads compact present values over the slots marked in `validity`.
ColumnVector expand(const ColumnVector& compact, const Bitmap& validity) {
  if (compact.size() != validity.count()) {
    fail(ErrorCode::kDecodeError, "decoded value count differs from presence count");
  }
  if (validity.all()) return compact;
  return std::visit(
      [&](const auto& src) -> ColumnVector {
        using Vec = std::decay_t<decltype(src)>;
        Vec out(validity.size());
        size_t next = 0;
        for (size_t i = 0; i < validity.size(); ++i) {
          if (validity.get(i)) out[i] = src[next++];
        }
        if constexpr (std::is_same_v<Vec, std::vector<int64_t>>) {
          return ColumnVector::from_int64(std::move(out), validity);
        } else if constexpr (std::is_same_v<Vec, std::vector<double>>) {
          return ColumnVector::from_double(std::move(out), validity);
        } else if constexpr (std::is_same_v<Vec, std::vector<std::string>>) {
          return ColumnVector::from_strings(std::move(out), validity);
        } else {
          return ColumnVector::from_bools(std::move(out), validity);
        }
      },
      compact.values());
}

// Dictionary section styles.
constexpr uint8_t kDictPlainEntries = 0;
constexpr uint8_t kDictOrcStrings = 1;

}  // namespace

DictEncoding dict_encode(const ColumnVector& col, const EncodingPolicy& policy) {
  if (col.empty()) fail(ErrorCode::kEmptyColumn, "dict_encode needs a non-empty column");
  validate(policy);
  DictEncoding enc;
  switch (policy.style) {
    case PolicyStyle::PlainOnly: enc.plain_fallback = true; return enc;
    case PolicyStyle::OrcLike: {
      if (!orc_uses_dictionary(col, policy)) {
        enc.plain_fallback = true;
        return enc;
      }
      DictBuild b = build_dictionary(col, std::numeric_limits<uint64_t>::max());
      enc.dictionary = std::move(b.dictionary);
      enc.codes = orc_encode(as_signed(b.codes));
      enc.codes.scheme = EncodingScheme::OrcHybrid;
      enc.spill = std::move(b.spill);
      return enc;
    }
    case PolicyStyle::ParquetLike: {
      DictBuild b = build_dictionary(col, policy.dict_size_limit_bytes);
      const int width = code_width(b.dictionary.entries.size());
      enc.codes = rle_bp_encode(b.codes, width, policy.rle_min_run);
      enc.dictionary = std::move(b.dictionary);
      enc.spill = std::move(b.spill);
      return enc;
    }
  }
  return enc;
}

ColumnVector dict_decode(const DictEncoding& enc, LogicalType type) {
  if (enc.plain_fallback) fail(ErrorCode::kInvalidConfig, "plain fallback has no dictionary");
  std::vector<uint64_t> codes;
  if (enc.codes.scheme == EncodingScheme::OrcHybrid) {
    for (int64_t c : orc_decode(enc.codes)) codes.push_back(static_cast<uint64_t>(c));
  } else {
    codes = rle_bp_decode(enc.codes);
  }
  ColumnVector out = enc.dictionary.entries.size() == 0 && codes.empty()
                         ? ColumnVector(type)
                         : lookup(enc.dictionary.entries, codes);
  out.append_all(enc.spill);
  return out;
}

// ---- column chunks ----

namespace {

ChunkEncoding choose_encoding(const ColumnVector& col, const EncodingPolicy& policy) {
  switch (policy.style) {
    case PolicyStyle::PlainOnly: return ChunkEncoding::Plain;
    case PolicyStyle::ParquetLike: return ChunkEncoding::Dict;
    case PolicyStyle::OrcLike:
      switch (col.type()) {
        case LogicalType::Int64: return ChunkEncoding::OrcHybrid;
        case LogicalType::Float64: return ChunkEncoding::Plain;
        case LogicalType::Utf8String:
          return orc_uses_dictionary(col, policy) ? ChunkEncoding::Dict : ChunkEncoding::Plain;
        case LogicalType::Bool: return ChunkEncoding::ByteRle;
      }
  }
  return ChunkEncoding::Plain;
}

void write_block(ByteWriter& w, const EncodedBlock& block) {
  w.put_varint(block.value_count);
  w.put_blob(block.payload);
}

EncodedBlock read_block(ByteReader& r, EncodingScheme scheme) {
  EncodedBlock b;
  b.scheme = scheme;
  b.value_count = r.varint();
  auto payload = r.blob();
  b.payload.assign(payload.begin(), payload.end());
  return b;
}

std::vector<uint8_t> encode_dictionary_section(const Dictionary& dict, bool orc_style) {
  ByteWriter w;
  const auto& entries = dict.entries;
  w.put_u8(orc_style ? kDictOrcStrings : kDictPlainEntries);
  w.put_varint(entries.size());
  if (orc_style) {
    std::vector<int64_t> lengths;
    lengths.reserve(entries.size());
    for (const auto& s : entries.strings()) lengths.push_back(static_cast<int64_t>(s.size()));
    write_block(w, orc_encode(lengths));
    for (const auto& s : entries.strings()) w.put_bytes(s);
  } else {
    plain_encode_into(entries, w.buffer());
  }
  return w.take();
}

ColumnVector decode_dictionary_section(LogicalType type, std::span<const uint8_t> bytes,
                                       bool* orc_style) {
  ByteReader r(bytes);
  const uint8_t style = r.u8();
  const size_t count = r.checked_len(r.varint());
  if (style == kDictOrcStrings) {
    if (type != LogicalType::Utf8String) fail(ErrorCode::kDecodeError, "ORC dictionary on non-string");
    *orc_style = true;
    const auto lengths = orc_decode(read_block(r, EncodingScheme::OrcHybrid));
    if (lengths.size() != count) fail(ErrorCode::kDecodeError, "dictionary length count mismatch");
    std::vector<std::string> entries;
    entries.reserve(count);
    for (int64_t len : lengths) {
      if (len < 0) fail(ErrorCode::kDecodeError, "negative dictionary entry length");
      auto b = r.bytes(static_cast<size_t>(len));
      entries.emplace_back(b.begin(), b.end());
    }
    return ColumnVector::from_strings(std::move(entries));
  }
  if (style != kDictPlainEntries) fail(ErrorCode::kDecodeError, "unknown dictionary style");
  *orc_style = false;
  return plain_decode(type, bytes.subspan(r.position()), count);
}

std::vector<uint8_t> encode_page(const ColumnVector& page, ChunkEncoding encoding,
                                 const EncodingPolicy& policy, bool orc_dict, int width,
                                 std::span<const uint64_t> codes) {
  ByteWriter w;
  w.put_blob(presence_encode(page.validity()));
  switch (encoding) {
    case ChunkEncoding::Plain: plain_encode_into(page, w.buffer()); break;
    case ChunkEncoding::OrcHybrid: {
      std::vector<int64_t> present;
      present.reserve(page.present_count());
      for (size_t i = 0; i < page.size(); ++i) {
        if (page.is_valid(i)) present.push_back(page.ints()[i]);
      }
      write_block(w, orc_encode(present));
      break;
    }
    case ChunkEncoding::ByteRle: {
      Bitmap bits;
      for (size_t i = 0; i < page.size(); ++i) {
        if (page.is_valid(i)) bits.push_back(page.bools()[i] != 0);
      }
      w.put_blob(presence_encode(bits));
      break;
    }
    case ChunkEncoding::Dict: {
      write_block(w, orc_dict ? orc_encode(as_signed(codes))
                              : rle_bp_encode(codes, width, policy.rle_min_run));
      // Present values past the codes were spilled after dictionary overflow.
      const size_t present = page.present_count();
      if (codes.size() < present) {
        size_t seen = 0;
        ColumnVector spill(page.type());
        for (size_t i = 0; i < page.size(); ++i) {
          if (!page.is_valid(i)) continue;
          if (seen++ >= codes.size()) spill.append_from(page, i);
        }
        plain_encode_into(spill, w.buffer());
      }
      break;
    }
  }
  return w.take();
}

}  // namespace

EncodedChunk encode_column_chunk(const ColumnVector& col, const EncodingPolicy& policy,
                                 size_t page_rows) {
  validate(policy);
  if (page_rows == 0) fail(ErrorCode::kInvalidConfig, "page_rows must be positive");
  EncodedChunk chunk;
  chunk.encoding = choose_encoding(col, policy);

  DictBuild dict;
  const bool orc_dict = policy.style == PolicyStyle::OrcLike;
  int width = 0;
  if (chunk.encoding == ChunkEncoding::Dict) {
    dict = build_dictionary(col, orc_dict ? std::numeric_limits<uint64_t>::max()
                                          : policy.dict_size_limit_bytes);
    chunk.dictionary = encode_dictionary_section(dict.dictionary, orc_dict);
    width = code_width(dict.dictionary.entries.size());
  }

  size_t code_pos = 0;
  for (size_t begin = 0; begin < col.size(); begin += page_rows) {
    const size_t end = std::min(col.size(), begin + page_rows);
    const ColumnVector page = col.slice(begin, end);
    std::span<const uint64_t> codes;
    if (chunk.encoding == ChunkEncoding::Dict) {
      const size_t present = page.present_count();
      const size_t coded = std::min(present, dict.codes.size() - code_pos);
      codes = std::span<const uint64_t>(dict.codes).subspan(code_pos, coded);
      code_pos += coded;
    }
    chunk.pages.push_back(encode_page(page, chunk.encoding, policy, orc_dict, width, codes));
    chunk.page_rows.push_back(end - begin);
  }
  return chunk;
}

ChunkDecoder::ChunkDecoder(LogicalType type, ChunkEncoding encoding,
                           std::span<const uint8_t> dictionary)
    : type_(type), encoding_(encoding), dict_(type) {
  if (encoding == ChunkEncoding::OrcHybrid && type != LogicalType::Int64) {
    fail(ErrorCode::kDecodeError, "OrcHybrid chunk on a non-integer column");
  }
  if (encoding == ChunkEncoding::ByteRle && type != LogicalType::Bool) {
    fail(ErrorCode::kDecodeError, "ByteRle chunk on a non-bool column");
  }
  if (encoding == ChunkEncoding::Dict) {
    dict_ = decode_dictionary_section(type, dictionary, &orc_dict_);
  }
}

ColumnVector ChunkDecoder::decode_page(std::span<const uint8_t> page, size_t rows) const {
  ByteReader r(page);
  const Bitmap validity = presence_decode(r.blob(), rows);
  const size_t present = validity.count();
  ColumnVector values(type_);
  switch (encoding_) {
    case ChunkEncoding::Plain:
      values = plain_decode(type_, page.subspan(r.position()), present);
      break;
    case ChunkEncoding::OrcHybrid: {
      auto ints = orc_decode(read_block(r, EncodingScheme::OrcHybrid));
      values = ColumnVector::from_int64(std::move(ints));
      break;
    }
    case ChunkEncoding::ByteRle: {
      const Bitmap bits = presence_decode(r.blob(), present);
      std::vector<uint8_t> b(present);
      for (size_t i = 0; i < present; ++i) b[i] = bits.get(i) ? 1 : 0;
      values = ColumnVector::from_bools(std::move(b));
      break;
    }
    case ChunkEncoding::Dict: {
      std::vector<uint64_t> codes;
      if (orc_dict_) {
        for (int64_t c : orc_decode(read_block(r, EncodingScheme::OrcHybrid))) {
          codes.push_back(static_cast<uint64_t>(c));
        }
      } else {
        codes = rle_bp_decode(read_block(r, EncodingScheme::RleBitpackHybrid));
      }
      if (codes.size() > present) fail(ErrorCode::kDecodeError, "more codes than present values");
      values = codes.empty() ? ColumnVector(type_) : lookup(dict_, codes);
      if (codes.size() < present) {
        values.append_all(plain_decode(type_, page.subspan(r.position()), present - codes.size()));
      }
      break;
    }
  }
  return expand(values, validity);
}

ColumnVector decode_column_chunk(const EncodedChunk& chunk, LogicalType type) {
  ChunkDecoder decoder(type, chunk.encoding, chunk.dictionary);
  ColumnVector out(type);
  for (size_t p = 0; p < chunk.pages.size(); ++p) {
    out.append_all(decoder.decode_page(chunk.pages[p], chunk.page_rows[p]));
  }
  return out;
}

}  // namespace paxlab
