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

#include "paxlab/pax_file.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>

#include "paxlab/bytes.hpp"
#include "paxlab/stats.hpp"

namespace paxlab {

const char* zone_placement_name(ZonePlacement placement) {
  return placement == ZonePlacement::CentralizedFooter ? "centralized" : "per-row-group";
}

const char* bloom_granularity_name(BloomGranularity granularity) {
  return granularity == BloomGranularity::ColumnChunk ? "column-chunk" : "page";
}

FileLayoutConfig FileLayoutConfig::parquet_like() {
  FileLayoutConfig c;
  c.row_group_mode = RowGroupMode::FixedRows;
  c.row_group_rows = 1048576;
  c.page_rows = 131072;
  c.zone_placement = ZonePlacement::CentralizedFooter;
  c.bloom.granularity = BloomGranularity::ColumnChunk;
  c.encoding_policy = EncodingPolicy::parquet_like();
  c.align_compression_to_page = true;
  return c;
}

FileLayoutConfig FileLayoutConfig::orc_like() {
  FileLayoutConfig c;
  c.row_group_mode = RowGroupMode::FixedBytes;
  c.row_group_bytes = uint64_t{64} << 20;
  c.page_rows = 10000;
  c.zone_placement = ZonePlacement::PerRowGroup;
  c.bloom.granularity = BloomGranularity::Page;
  c.encoding_policy = EncodingPolicy::orc_like();
  c.align_compression_to_page = false;
  c.compression_unit_bytes = uint64_t{256} << 10;
  return c;
}

FileLayoutConfig FileLayoutConfig::plain() {
  FileLayoutConfig c = parquet_like();
  c.encoding_policy = EncodingPolicy::plain_only();
  return c;
}

void validate(const FileLayoutConfig& cfg) {
  if (cfg.page_rows == 0) fail(ErrorCode::kInvalidConfig, "page_rows must be positive");
  if (cfg.row_group_mode == RowGroupMode::FixedRows) {
    if (cfg.row_group_rows == 0) fail(ErrorCode::kInvalidConfig, "row_group_rows must be positive");
    if (cfg.page_rows > cfg.row_group_rows) {
      fail(ErrorCode::kInvalidConfig, "page_rows exceeds row_group_rows");
    }
  } else if (cfg.row_group_bytes == 0) {
    fail(ErrorCode::kInvalidConfig, "row_group_bytes must be positive");
  }
  if (cfg.bloom.enabled && !(cfg.bloom.fpp > 0.0 && cfg.bloom.fpp < 1.0)) {
    fail(ErrorCode::kInvalidConfig, "bloom fpp must be in (0, 1)");
  }
  if (!cfg.align_compression_to_page && cfg.compression_unit_bytes == 0) {
    fail(ErrorCode::kInvalidConfig, "compression_unit_bytes must be positive");
  }
  if (!codec_available(cfg.codec)) {
    fail(ErrorCode::kInvalidConfig, std::string("codec not available: ") + codec_name(cfg.codec));
  }
  validate(cfg.encoding_policy);
}

std::optional<size_t> FileFooter::find_column(std::string_view name) const {
  for (size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return i;
  }
  return std::nullopt;
}

// ---- sources and sinks ----

std::vector<uint8_t> ByteSource::read(uint64_t offset, uint64_t len) {
  const uint64_t total = size();
  if (offset > total || len > total - offset) {
    fail(ErrorCode::kTruncatedFile, "read of " + std::to_string(len) + " bytes at " +
                                        std::to_string(offset) + " past end of file (" +
                                        std::to_string(total) + " bytes)");
  }
  std::vector<uint8_t> out(len);
  read_into(offset, out);
  stats_.read_ops += 1;
  stats_.bytes_read += len;
  return out;
}

void MemorySource::read_into(uint64_t offset, std::span<uint8_t> out) {
  std::memcpy(out.data(), bytes_.data() + offset, out.size());
}

FileSource::FileSource(const std::string& path) {
  fd_ = ::open(path.c_str(), O_RDONLY);
  if (fd_ < 0) fail(ErrorCode::kIoError, "cannot open '" + path + "': " + std::strerror(errno));
  struct stat st {};
  if (::fstat(fd_, &st) != 0) {
    ::close(fd_);
    fail(ErrorCode::kIoError, "cannot stat '" + path + "'");
  }
  size_ = static_cast<uint64_t>(st.st_size);
}

FileSource::~FileSource() {
  if (fd_ >= 0) ::close(fd_);
}

void FileSource::read_into(uint64_t offset, std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    const ssize_t n = ::pread(fd_, out.data() + done, out.size() - done,
                              static_cast<off_t>(offset + done));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) fail(ErrorCode::kIoError, "short read");
    done += static_cast<size_t>(n);
  }
}

FileSink::FileSink(const std::string& path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd_ < 0) fail(ErrorCode::kIoError, "cannot create '" + path + "': " + std::strerror(errno));
}

FileSink::~FileSink() {
  if (fd_ >= 0) ::close(fd_);
}

void FileSink::write(std::span<const uint8_t> bytes) {
  size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t n = ::write(fd_, bytes.data() + done, bytes.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) fail(ErrorCode::kIoError, std::string("write failed: ") + std::strerror(errno));
    done += static_cast<size_t>(n);
  }
  pos_ += bytes.size();
}

void FileSink::close() {
  if (fd_ >= 0 && ::close(fd_) != 0) {
    fd_ = -1;
    fail(ErrorCode::kIoError, "close failed");
  }
  fd_ = -1;
}

// ---- zone maps and page indexes ----

namespace {

void put_scalar(ByteWriter& w, const Scalar& v, LogicalType type) {
  if (scalar_type(v) != type) fail(ErrorCode::kTypeMismatch, "zone bound type differs from column");
  switch (type) {
    case LogicalType::Int64: w.put_u64(static_cast<uint64_t>(std::get<int64_t>(v))); break;
    case LogicalType::Float64: w.put_f64(std::get<double>(v)); break;
    case LogicalType::Utf8String: w.put_string(std::get<std::string>(v)); break;
    case LogicalType::Bool: w.put_u8(std::get<bool>(v) ? 1 : 0); break;
  }
}

Scalar get_scalar(ByteReader& r, LogicalType type) {
  switch (type) {
    case LogicalType::Int64: return static_cast<int64_t>(r.u64());
    case LogicalType::Float64: return r.f64();
    case LogicalType::Utf8String: return r.string();
    case LogicalType::Bool: return r.u8() != 0;
  }
  fail(ErrorCode::kDecodeError, "bad logical type");
}

void write_zone(ByteWriter& w, const ZoneMap& z, LogicalType type) {
  const bool has = z.min.has_value() && z.max.has_value();
  w.put_u8(has ? 1 : 0);
  w.put_varint(z.row_count);
  w.put_varint(z.null_count);
  if (has) {
    put_scalar(w, *z.min, type);
    put_scalar(w, *z.max, type);
  }
}

ZoneMap read_zone(ByteReader& r, LogicalType type) {
  ZoneMap z;
  const uint8_t has = r.u8();
  if (has > 1) fail(ErrorCode::kDecodeError, "bad zone map flag");
  z.row_count = r.varint();
  z.null_count = r.varint();
  if (z.null_count > z.row_count) fail(ErrorCode::kDecodeError, "zone null_count exceeds rows");
  if (has) {
    z.min = get_scalar(r, type);
    z.max = get_scalar(r, type);
  }
  return z;
}

}  // namespace

void encode_zone_map(const ZoneMap& zone, LogicalType type, std::vector<uint8_t>& out) {
  ByteWriter w;
  write_zone(w, zone, type);
  out.insert(out.end(), w.buffer().begin(), w.buffer().end());
}

ZoneMap decode_zone_map(std::span<const uint8_t> bytes, LogicalType type, size_t* consumed) {
  ByteReader r(bytes);
  ZoneMap z = read_zone(r, type);
  if (consumed) *consumed = r.position();
  return z;
}

std::vector<uint8_t> encode_page_index(const PageIndex& index, LogicalType type) {
  ByteWriter w;
  w.put_varint(index.pages.size());
  for (const PageEntry& p : index.pages) {
    w.put_varint(p.rows);
    w.put_varint(p.offset);
    w.put_varint(p.stored_length);
    w.put_varint(p.raw_length);
    const bool bloom = p.bloom_length > 0;
    w.put_u8(static_cast<uint8_t>((p.zone ? 1 : 0) | (bloom ? 2 : 0)));
    if (p.zone) write_zone(w, *p.zone, type);
    if (bloom) {
      w.put_varint(p.bloom_offset);
      w.put_varint(p.bloom_length);
    }
  }
  w.put_varint(index.units.size());
  for (const CompressionUnit& u : index.units) {
    w.put_varint(u.offset);
    w.put_varint(u.stored_length);
    w.put_varint(u.raw_length);
  }
  return w.take();
}

PageIndex decode_page_index(std::span<const uint8_t> bytes, LogicalType type) {
  ByteReader r(bytes);
  PageIndex index;
  const size_t pages = r.checked_len(r.varint());
  index.pages.reserve(pages);
  uint64_t first = 0;
  auto u32 = [&](uint64_t v) {
    if (v > UINT32_MAX) fail(ErrorCode::kDecodeError, "length field exceeds 32 bits");
    return static_cast<uint32_t>(v);
  };
  for (size_t i = 0; i < pages; ++i) {
    PageEntry p;
    p.first_row = first;
    p.rows = r.varint();
    p.offset = r.varint();
    p.stored_length = u32(r.varint());
    p.raw_length = u32(r.varint());
    const uint8_t flags = r.u8();
    if (flags > 3) fail(ErrorCode::kDecodeError, "bad page flags");
    if (flags & 1) p.zone = read_zone(r, type);
    if (flags & 2) {
      p.bloom_offset = r.varint();
      p.bloom_length = u32(r.varint());
    }
    first += p.rows;
    index.pages.push_back(std::move(p));
  }
  const size_t units = r.checked_len(r.varint());
  for (size_t i = 0; i < units; ++i) {
    CompressionUnit u;
    u.offset = r.varint();
    u.stored_length = u32(r.varint());
    u.raw_length = u32(r.varint());
    index.units.push_back(u);
  }
  if (!r.done()) fail(ErrorCode::kDecodeError, "trailing bytes in page index");
  return index;
}

// ---- footer layout ----
//
// header (40 bytes)
//   u16 version, u8 placement, u8 zone level bits, u8 bloom granularity,
//   3 pad, u64 total_rows, u32 columns, u32 row groups, u64 page_rows,
//   u32 hash buckets, u32 heap length
// schema       columns x 12: u32 name heap offset, u32 name length, u8 type, 3 pad
// name hash    buckets x u32: column index + 1, 0 when empty
// row groups   groups x 32: u64 offset, length, first_row, rows
// chunk slots  groups x columns x 80, row-group major
// file zones   columns x 8: u32 heap offset, u32 length (0 = absent)
// heap
//
// Trailer after the footer: u32 footer length, magic.

namespace {

constexpr size_t kHeaderSize = 40;
constexpr size_t kSchemaEntry = 12;
constexpr size_t kGroupEntry = 32;
constexpr size_t kSlotSize = 80;
constexpr size_t kZoneRef = 8;
constexpr size_t kTrailerSize = 8;

uint64_t name_hash(std::string_view name) {
  return digest_bytes({reinterpret_cast<const uint8_t*>(name.data()), name.size()});
}

size_t bucket_count(size_t columns) {
  size_t b = 1;
  while (b < columns * 2) b <<= 1;
  return b;
}

uint8_t zone_bits(const ZoneLevels& z) {
  return static_cast<uint8_t>((z.file ? 1 : 0) | (z.row_group ? 2 : 0) | (z.page ? 4 : 0));
}

ZoneLevels zone_levels(uint8_t bits) {
  return ZoneLevels{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
}

uint64_t load_le(const uint8_t* p, size_t bytes) {
  uint64_t v = 0;
  for (size_t i = 0; i < bytes; ++i) v |= uint64_t{p[i]} << (8 * i);
  return v;
}

class HeapWriter {
 public:
  std::pair<uint32_t, uint32_t> add(std::span<const uint8_t> bytes) {
    const size_t off = heap_.size();
    heap_.insert(heap_.end(), bytes.begin(), bytes.end());
    if (heap_.size() > UINT32_MAX) fail(ErrorCode::kEncodingOverflow, "footer heap exceeds 4 GiB");
    return {static_cast<uint32_t>(off), static_cast<uint32_t>(bytes.size())};
  }
  std::pair<uint32_t, uint32_t> add_zone(const ZoneMap& z, LogicalType type) {
    std::vector<uint8_t> b;
    encode_zone_map(z, type, b);
    return add(b);
  }
  const std::vector<uint8_t>& bytes() const { return heap_; }

 private:
  std::vector<uint8_t> heap_;
};

std::vector<uint8_t> serialize_footer(const FileFooter& f) {
  const size_t ncols = f.schema.size();
  const size_t ngroups = f.row_groups.size();
  const size_t buckets = bucket_count(ncols);
  HeapWriter heap;
  ByteWriter w;
  w.put_u16(f.version);
  w.put_u8(static_cast<uint8_t>(f.zone_placement));
  w.put_u8(zone_bits(f.zone_maps));
  w.put_u8(static_cast<uint8_t>(f.bloom_granularity));
  w.put_le(0, 3);
  w.put_u64(f.total_rows);
  w.put_u32(static_cast<uint32_t>(ncols));
  w.put_u32(static_cast<uint32_t>(ngroups));
  w.put_u64(f.page_rows);
  w.put_u32(static_cast<uint32_t>(buckets));
  const size_t heap_len_at = w.size();
  w.put_u32(0);

  for (const ColumnSchema& s : f.schema) {
    auto [off, len] = heap.add({reinterpret_cast<const uint8_t*>(s.name.data()), s.name.size()});
    w.put_u32(off);
    w.put_u32(len);
    w.put_u8(static_cast<uint8_t>(s.type));
    w.put_le(0, 3);
  }

  std::vector<uint32_t> table(buckets, 0);
  for (size_t c = 0; c < ncols; ++c) {
    size_t b = name_hash(f.schema[c].name) & (buckets - 1);
    while (table[b] != 0) b = (b + 1) & (buckets - 1);
    table[b] = static_cast<uint32_t>(c + 1);
  }
  for (uint32_t t : table) w.put_u32(t);

  for (const RowGroupMeta& g : f.row_groups) {
    w.put_u64(g.offset);
    w.put_u64(g.length);
    w.put_u64(g.first_row);
    w.put_u64(g.rows);
  }

  for (size_t g = 0; g < ngroups; ++g) {
    for (size_t c = 0; c < ncols; ++c) {
      const ColumnChunkMeta& m = f.chunks[g][c];
      const size_t start = w.size();
      w.put_u64(m.offset);
      w.put_u64(m.length);
      w.put_u64(m.rows);
      w.put_u8(static_cast<uint8_t>(m.encoding));
      w.put_u8(static_cast<uint8_t>(m.codec));
      w.put_u8(m.aligned ? 1 : 0);
      w.put_u8(0);
      w.put_u32(m.num_pages);
      w.put_u64(m.dict_offset);
      w.put_u32(m.dict_length);
      w.put_u32(m.dict_raw_length);
      w.put_u64(m.page_index_offset);
      w.put_u32(m.page_index_length);
      w.put_u32(m.bloom_length);
      w.put_u64(m.bloom_offset);
      auto [off, len] = m.zone ? heap.add_zone(*m.zone, f.schema[c].type)
                               : std::pair<uint32_t, uint32_t>{0, 0};
      w.put_u32(off);
      w.put_u32(len);
      if (w.size() - start != kSlotSize) fail(ErrorCode::kEncodingOverflow, "slot size drift");
    }
  }

  for (size_t c = 0; c < ncols; ++c) {
    const auto& z = f.file_zones.empty() ? std::optional<ZoneMap>{} : f.file_zones[c];
    auto [off, len] = z ? heap.add_zone(*z, f.schema[c].type) : std::pair<uint32_t, uint32_t>{0, 0};
    w.put_u32(off);
    w.put_u32(len);
  }

  auto out = w.take();
  const uint32_t heap_len = static_cast<uint32_t>(heap.bytes().size());
  for (size_t i = 0; i < 4; ++i) out[heap_len_at + i] = static_cast<uint8_t>(heap_len >> (8 * i));
  out.insert(out.end(), heap.bytes().begin(), heap.bytes().end());
  return out;
}

}  // namespace

// ---- footer view ----

FooterView::FooterView(std::vector<uint8_t> footer_bytes) : bytes_(std::move(footer_bytes)) {
  if (bytes_.size() < kHeaderSize) fail(ErrorCode::kTruncatedFile, "footer shorter than header");
  const uint8_t* p = bytes_.data();
  const auto version = static_cast<uint16_t>(load_le(p, 2));
  if (version != kPaxVersion) {
    fail(ErrorCode::kUnsupportedVersion, "footer version " + std::to_string(version) +
                                             ", reader supports " + std::to_string(kPaxVersion));
  }
  if (p[2] > 1 || p[3] > 7 || p[4] > 1) fail(ErrorCode::kDecodeError, "bad footer flags");
  placement_ = static_cast<ZonePlacement>(p[2]);
  zone_levels_ = zone_levels(p[3]);
  bloom_granularity_ = static_cast<BloomGranularity>(p[4]);
  total_rows_ = load_le(p + 8, 8);
  num_columns_ = static_cast<size_t>(load_le(p + 16, 4));
  num_row_groups_ = static_cast<size_t>(load_le(p + 20, 4));
  page_rows_ = load_le(p + 24, 8);
  hash_buckets_ = static_cast<size_t>(load_le(p + 32, 4));
  const uint64_t heap_len = load_le(p + 36, 4);
  if (hash_buckets_ != bucket_count(num_columns_)) {
    fail(ErrorCode::kDecodeError, "footer name table size mismatch");
  }
  schema_at_ = kHeaderSize;
  hash_at_ = schema_at_ + num_columns_ * kSchemaEntry;
  groups_at_ = hash_at_ + hash_buckets_ * 4;
  slots_at_ = groups_at_ + num_row_groups_ * kGroupEntry;
  file_zones_at_ = slots_at_ + num_row_groups_ * num_columns_ * kSlotSize;
  heap_at_ = file_zones_at_ + num_columns_ * kZoneRef;
  if (heap_at_ + heap_len != bytes_.size()) {
    fail(ErrorCode::kDecodeError, "footer length " + std::to_string(bytes_.size()) +
                                      " does not match its directory");
  }
}

std::span<const uint8_t> FooterView::heap(uint32_t offset, uint32_t length) const {
  const size_t heap_len = bytes_.size() - heap_at_;
  if (uint64_t{offset} + length > heap_len) fail(ErrorCode::kDecodeError, "heap reference out of range");
  return std::span<const uint8_t>(bytes_).subspan(heap_at_ + offset, length);
}

LogicalType FooterView::column_type(size_t column) const {
  const uint8_t t = bytes_[schema_at_ + column * kSchemaEntry + 8];
  if (t > 3) fail(ErrorCode::kDecodeError, "bad column type");
  return static_cast<LogicalType>(t);
}

ColumnSchema FooterView::column(size_t idx) const {
  if (idx >= num_columns_) {
    fail(ErrorCode::kIndexOutOfRange, "column " + std::to_string(idx) + " of " +
                                          std::to_string(num_columns_));
  }
  const uint8_t* e = bytes_.data() + schema_at_ + idx * kSchemaEntry;
  auto name = heap(static_cast<uint32_t>(load_le(e, 4)), static_cast<uint32_t>(load_le(e + 4, 4)));
  return ColumnSchema{std::string(name.begin(), name.end()), column_type(idx)};
}

std::optional<size_t> FooterView::find_column(std::string_view name) const {
  if (num_columns_ == 0) return std::nullopt;
  size_t b = name_hash(name) & (hash_buckets_ - 1);
  for (size_t probes = 0; probes < hash_buckets_; ++probes) {
    const auto entry = static_cast<uint32_t>(load_le(bytes_.data() + hash_at_ + b * 4, 4));
    if (entry == 0) return std::nullopt;
    const size_t c = entry - 1;
    if (c >= num_columns_) fail(ErrorCode::kDecodeError, "bad name table entry");
    const uint8_t* e = bytes_.data() + schema_at_ + c * kSchemaEntry;
    auto n = heap(static_cast<uint32_t>(load_le(e, 4)), static_cast<uint32_t>(load_le(e + 4, 4)));
    if (std::string_view(reinterpret_cast<const char*>(n.data()), n.size()) == name) return c;
    b = (b + 1) & (hash_buckets_ - 1);
  }
  return std::nullopt;
}

RowGroupMeta FooterView::row_group(size_t idx) const {
  if (idx >= num_row_groups_) {
    fail(ErrorCode::kIndexOutOfRange, "row group " + std::to_string(idx) + " of " +
                                          std::to_string(num_row_groups_));
  }
  const uint8_t* e = bytes_.data() + groups_at_ + idx * kGroupEntry;
  return RowGroupMeta{load_le(e, 8), load_le(e + 8, 8), load_le(e + 16, 8), load_le(e + 24, 8)};
}

ColumnChunkMeta FooterView::column_meta(size_t row_group, size_t column) const {
  if (row_group >= num_row_groups_) {
    fail(ErrorCode::kIndexOutOfRange, "row group " + std::to_string(row_group) + " of " +
                                          std::to_string(num_row_groups_));
  }
  if (column >= num_columns_) {
    fail(ErrorCode::kIndexOutOfRange, "column " + std::to_string(column) + " of " +
                                          std::to_string(num_columns_));
  }
  const uint8_t* s = bytes_.data() + slots_at_ + (row_group * num_columns_ + column) * kSlotSize;
  ColumnChunkMeta m;
  m.offset = load_le(s, 8);
  m.length = load_le(s + 8, 8);
  m.rows = load_le(s + 16, 8);
  if (s[24] > 3 || s[25] > 1 || s[26] > 1) fail(ErrorCode::kDecodeError, "bad chunk slot flags");
  m.encoding = static_cast<ChunkEncoding>(s[24]);
  m.codec = static_cast<CodecId>(s[25]);
  m.aligned = s[26] != 0;
  m.num_pages = static_cast<uint32_t>(load_le(s + 28, 4));
  m.dict_offset = load_le(s + 32, 8);
  m.dict_length = static_cast<uint32_t>(load_le(s + 40, 4));
  m.dict_raw_length = static_cast<uint32_t>(load_le(s + 44, 4));
  m.page_index_offset = load_le(s + 48, 8);
  m.page_index_length = static_cast<uint32_t>(load_le(s + 56, 4));
  m.bloom_length = static_cast<uint32_t>(load_le(s + 60, 4));
  m.bloom_offset = load_le(s + 64, 8);
  const auto zoff = static_cast<uint32_t>(load_le(s + 72, 4));
  const auto zlen = static_cast<uint32_t>(load_le(s + 76, 4));
  if (zlen > 0) m.zone = decode_zone_map(heap(zoff, zlen), column_type(column));
  return m;
}

std::optional<ZoneMap> FooterView::file_zone(size_t column) const {
  if (column >= num_columns_) {
    fail(ErrorCode::kIndexOutOfRange, "column " + std::to_string(column) + " of " +
                                          std::to_string(num_columns_));
  }
  const uint8_t* e = bytes_.data() + file_zones_at_ + column * kZoneRef;
  const auto off = static_cast<uint32_t>(load_le(e, 4));
  const auto len = static_cast<uint32_t>(load_le(e + 4, 4));
  if (len == 0) return std::nullopt;
  return decode_zone_map(heap(off, len), column_type(column));
}

ColumnChunkMeta read_column_meta(const FooterView& footer, size_t row_group_idx,
                                 size_t column_idx) {
  return footer.column_meta(row_group_idx, column_idx);
}

std::vector<uint8_t> read_footer_bytes(ByteSource& source) {
  const uint64_t size = source.size();
  if (size < sizeof(kPaxMagic) + kTrailerSize) {
    fail(ErrorCode::kTruncatedFile, "file of " + std::to_string(size) + " bytes is too short");
  }
  auto trailer = source.read(size - kTrailerSize, kTrailerSize);
  if (std::memcmp(trailer.data() + 4, kPaxMagic, 4) != 0) {
    fail(ErrorCode::kBadMagic, "trailing magic is not PAXB");
  }
  const uint64_t footer_len = load_le(trailer.data(), 4);
  if (footer_len > size - kTrailerSize - sizeof(kPaxMagic)) {
    fail(ErrorCode::kTruncatedFile, "footer length " + std::to_string(footer_len) +
                                        " exceeds file size " + std::to_string(size));
  }
  return source.read(size - kTrailerSize - footer_len, footer_len);
}

FileFooter parse_footer(std::span<const uint8_t> footer_bytes) {
  // Sequential: every schema entry and slot is decoded up front.
  FooterView view(std::vector<uint8_t>(footer_bytes.begin(), footer_bytes.end()));
  FileFooter f;
  f.version = kPaxVersion;
  f.total_rows = view.total_rows();
  f.zone_placement = view.zone_placement();
  f.zone_maps = view.zone_maps();
  f.bloom_granularity = view.bloom_granularity();
  f.page_rows = view.page_rows();
  f.footer_length = static_cast<uint32_t>(footer_bytes.size());
  f.schema.reserve(view.num_columns());
  for (size_t c = 0; c < view.num_columns(); ++c) f.schema.push_back(view.column(c));
  for (size_t g = 0; g < view.num_row_groups(); ++g) {
    f.row_groups.push_back(view.row_group(g));
    std::vector<ColumnChunkMeta> metas;
    metas.reserve(view.num_columns());
    for (size_t c = 0; c < view.num_columns(); ++c) metas.push_back(view.column_meta(g, c));
    f.chunks.push_back(std::move(metas));
  }
  f.file_zones.reserve(view.num_columns());
  for (size_t c = 0; c < view.num_columns(); ++c) f.file_zones.push_back(view.file_zone(c));
  return f;
}

FileFooter read_footer(ByteSource& source) { return parse_footer(read_footer_bytes(source)); }

// ---- writer ----

namespace {

struct EncodedGroup {
  uint64_t rows = 0;
  std::vector<EncodedChunk> chunks;
  uint64_t bytes = 0;
};

uint64_t encoded_bytes(const EncodedChunk& c) {
  uint64_t n = c.dictionary.size();
  for (const auto& p : c.pages) n += p.size();
  return n;
}

// The whole column when the range covers it, else a copy kept in `held`.
const ColumnVector& rows_of(const ColumnVector& col, uint64_t start, uint64_t end,
                            std::optional<ColumnVector>& held) {
  if (start == 0 && end == col.size()) return col;
  return held.emplace(col.slice(start, end));
}

class GroupPlanner {
 public:
  GroupPlanner(const Table& t, const FileLayoutConfig& cfg) : t_(t), cfg_(cfg) {}

  // Encodes the next row group starting at `start`.
  EncodedGroup next(uint64_t start) {
    const uint64_t left = t_.row_count() - start;
    if (cfg_.row_group_mode == RowGroupMode::FixedRows) {
      return encode(start, std::min<uint64_t>(left, cfg_.row_group_rows));
    }
    const double budget = static_cast<double>(cfg_.row_group_bytes) * 0.9;
    const uint64_t probe_rows = std::min<uint64_t>(left, cfg_.page_rows);
    EncodedGroup probe = encode(start, probe_rows);
    uint64_t rows = probe_rows;
    if (probe.bytes > 0) {
      const double per_row = static_cast<double>(probe.bytes) / static_cast<double>(probe_rows);
      rows = static_cast<uint64_t>(budget / per_row);
      if (rows >= cfg_.page_rows) rows -= rows % cfg_.page_rows;
      rows = std::clamp<uint64_t>(rows, 1, left);
    } else {
      rows = left;
    }
    if (rows == probe_rows) return probe;
    // The probe can underestimate (dictionaries grow); shrink until it fits.
    for (int attempt = 0;; ++attempt) {
      EncodedGroup g = encode(start, rows);
      if (g.bytes <= cfg_.row_group_bytes || rows == 1 || attempt == 8) return g;
      const double scale = static_cast<double>(cfg_.row_group_bytes) / static_cast<double>(g.bytes);
      rows = std::max<uint64_t>(1, static_cast<uint64_t>(static_cast<double>(rows) * scale * 0.95));
    }
  }

 private:
  EncodedGroup encode(uint64_t start, uint64_t rows) {
    EncodedGroup g;
    g.rows = rows;
    for (size_t c = 0; c < t_.column_count(); ++c) {
      std::optional<ColumnVector> held;
      const ColumnVector& slice = rows_of(t_.column(c), start, start + rows, held);
      g.chunks.push_back(encode_column_chunk(slice, cfg_.encoding_policy, cfg_.page_rows));
      g.bytes += encoded_bytes(g.chunks.back());
    }
    return g;
  }

  const Table& t_;
  const FileLayoutConfig& cfg_;
};

uint32_t to_u32(size_t n, const char* what) {
  if (n > UINT32_MAX) fail(ErrorCode::kEncodingOverflow, std::string(what) + " exceeds 4 GiB");
  return static_cast<uint32_t>(n);
}

class Writer {
 public:
  Writer(const Table& t, const FileLayoutConfig& cfg, ByteSink& sink)
      : t_(t), cfg_(cfg), sink_(sink) {}

  FileFooter run() {
    validate(cfg_);
    base_ = sink_.position();
    put(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kPaxMagic), 4));

    f_.total_rows = t_.row_count();
    f_.zone_placement = cfg_.zone_placement;
    f_.zone_maps = cfg_.zone_maps;
    f_.bloom_granularity = cfg_.bloom.granularity;
    f_.page_rows = cfg_.page_rows;
    for (const auto& nc : t_.columns()) f_.schema.push_back({nc.name, nc.column.type()});
    std::vector<std::optional<ZoneMap>> file_zones(t_.column_count());

    GroupPlanner planner(t_, cfg_);
    uint64_t start = 0;
    while (start < t_.row_count()) {
      EncodedGroup g = planner.next(start);
      write_group(start, g, file_zones);
      start += g.rows;
    }

    if (cfg_.zone_placement == ZonePlacement::CentralizedFooter) {
      // Column-major so one read covers a column in every row group.
      for (size_t c = 0; c < t_.column_count(); ++c) {
        for (size_t g = 0; g < f_.row_groups.size(); ++g) {
          ColumnChunkMeta& m = f_.chunks[g][c];
          m.page_index_offset = pos();
          m.page_index_length = to_u32(pending_index_[g][c].size(), "page index");
          put(pending_index_[g][c]);
        }
      }
    }

    if (cfg_.zone_maps.file) {
      f_.file_zones = std::move(file_zones);
    } else {
      f_.file_zones.assign(t_.column_count(), std::nullopt);
    }
    auto footer = serialize_footer(f_);
    f_.footer_length = to_u32(footer.size(), "footer");
    put(footer);
    ByteWriter trailer;
    trailer.put_u32(f_.footer_length);
    trailer.put_bytes(std::string_view(kPaxMagic, 4));
    put(trailer.buffer());
    return f_;
  }

 private:
  uint64_t pos() const { return sink_.position() - base_; }
  void put(std::span<const uint8_t> b) { sink_.write(b); }

  void write_group(uint64_t start, EncodedGroup& g,
                   std::vector<std::optional<ZoneMap>>& file_zones) {
    RowGroupMeta rg;
    rg.offset = pos();
    rg.first_row = start;
    rg.rows = g.rows;
    std::vector<ColumnChunkMeta> metas;
    std::vector<std::vector<uint8_t>> indexes;
    for (size_t c = 0; c < t_.column_count(); ++c) {
      std::optional<ColumnVector> held;
      const ColumnVector& slice = rows_of(t_.column(c), start, start + g.rows, held);
      PageIndex index;
      ColumnChunkMeta m = write_chunk(slice, g.chunks[c], index);
      if (cfg_.zone_maps.file) {
        ZoneMap chunk_zone = m.zone ? *m.zone : ZoneMap::of(slice);
        if (file_zones[c]) {
          file_zones[c]->merge(chunk_zone);
        } else {
          file_zones[c] = chunk_zone;
        }
      }
      indexes.push_back(encode_page_index(index, slice.type()));
      metas.push_back(std::move(m));
      g.chunks[c] = EncodedChunk{};
    }
    if (cfg_.zone_placement == ZonePlacement::PerRowGroup) {
      for (size_t c = 0; c < metas.size(); ++c) {
        metas[c].page_index_offset = pos();
        metas[c].page_index_length = to_u32(indexes[c].size(), "page index");
        put(indexes[c]);
      }
    } else {
      pending_index_.push_back(std::move(indexes));
    }
    rg.length = pos() - rg.offset;
    f_.row_groups.push_back(rg);
    f_.chunks.push_back(std::move(metas));
  }

  std::vector<uint8_t> bloom_for(const ColumnVector& col, size_t begin, size_t end) {
    const size_t distinct = count_distinct(col.slice(begin, end));
    auto filter = SplitBlockBloomFilter::for_keys(std::max<size_t>(distinct, 1), cfg_.bloom.fpp);
    insert_column(filter, col, begin, end);
    return filter.serialize();
  }

  ColumnChunkMeta write_chunk(const ColumnVector& slice, const EncodedChunk& chunk,
                              PageIndex& index) {
    ColumnChunkMeta m;
    m.offset = pos();
    m.rows = slice.size();
    m.encoding = chunk.encoding;
    m.codec = cfg_.codec;
    m.aligned = cfg_.align_compression_to_page;
    m.num_pages = to_u32(chunk.pages.size(), "page count");

    if (!chunk.dictionary.empty()) {
      auto stored = compress(cfg_.codec, chunk.dictionary);
      m.dict_offset = pos();
      m.dict_length = to_u32(stored.size(), "dictionary");
      m.dict_raw_length = to_u32(chunk.dictionary.size(), "dictionary");
      put(stored);
    }

    uint64_t first = 0;
    if (m.aligned) {
      for (size_t p = 0; p < chunk.pages.size(); ++p) {
        auto stored = compress(cfg_.codec, chunk.pages[p]);
        PageEntry e;
        e.first_row = first;
        e.rows = chunk.page_rows[p];
        e.offset = pos();
        e.stored_length = to_u32(stored.size(), "page");
        e.raw_length = to_u32(chunk.pages[p].size(), "page");
        put(stored);
        index.pages.push_back(std::move(e));
        first += chunk.page_rows[p];
      }
    } else {
      std::vector<uint8_t> stream;
      for (size_t p = 0; p < chunk.pages.size(); ++p) {
        PageEntry e;
        e.first_row = first;
        e.rows = chunk.page_rows[p];
        e.offset = stream.size();
        e.stored_length = to_u32(chunk.pages[p].size(), "page");
        e.raw_length = e.stored_length;
        stream.insert(stream.end(), chunk.pages[p].begin(), chunk.pages[p].end());
        index.pages.push_back(std::move(e));
        first += chunk.page_rows[p];
      }
      const size_t unit = cfg_.compression_unit_bytes;
      for (size_t at = 0; at < stream.size(); at += unit) {
        const size_t len = std::min(unit, stream.size() - at);
        auto stored = compress(cfg_.codec, std::span<const uint8_t>(stream).subspan(at, len));
        CompressionUnit u;
        u.offset = pos();
        u.stored_length = to_u32(stored.size(), "compression unit");
        u.raw_length = to_u32(len, "compression unit");
        put(stored);
        index.units.push_back(u);
      }
    }

    if (cfg_.zone_maps.page) {
      for (PageEntry& e : index.pages) {
        e.zone = ZoneMap::of(slice, e.first_row, e.first_row + e.rows);
      }
    }
    if (cfg_.zone_maps.row_group) m.zone = ZoneMap::of(slice);

    if (cfg_.bloom.enabled) {
      if (cfg_.bloom.granularity == BloomGranularity::ColumnChunk) {
        auto b = bloom_for(slice, 0, slice.size());
        m.bloom_offset = pos();
        m.bloom_length = to_u32(b.size(), "bloom filter");
        put(b);
      } else {
        for (PageEntry& e : index.pages) {
          auto b = bloom_for(slice, e.first_row, e.first_row + e.rows);
          e.bloom_offset = pos();
          e.bloom_length = to_u32(b.size(), "bloom filter");
          put(b);
        }
      }
    }
    m.length = pos() - m.offset;
    return m;
  }

  const Table& t_;
  const FileLayoutConfig& cfg_;
  ByteSink& sink_;
  uint64_t base_ = 0;
  FileFooter f_;
  std::vector<std::vector<std::vector<uint8_t>>> pending_index_;
};

}  // namespace

FileFooter write_table(const Table& table, const FileLayoutConfig& cfg, ByteSink& sink) {
  return Writer(table, cfg, sink).run();
}

std::vector<uint8_t> write_table_to_bytes(const Table& table, const FileLayoutConfig& cfg,
                                          FileFooter* footer) {
  MemorySink sink;
  FileFooter f = write_table(table, cfg, sink);
  if (footer) *footer = std::move(f);
  return sink.take();
}

std::vector<uint64_t> plan_row_groups(const Table& table, const FileLayoutConfig& cfg) {
  validate(cfg);
  GroupPlanner planner(table, cfg);
  std::vector<uint64_t> out;
  for (uint64_t start = 0; start < table.row_count();) {
    const uint64_t rows = planner.next(start).rows;
    out.push_back(rows);
    start += rows;
  }
  return out;
}

// ---- reader ----

PaxReader::PaxReader(std::shared_ptr<ByteSource> source)
    : source_(std::move(source)), footer_(read_footer_bytes(*source_)) {}

void PaxReader::clear_cache() {
  chunks_.clear();
  column_index_cache_.clear();
}

std::vector<size_t> PaxReader::resolve_projection(const std::vector<std::string>& names) const {
  if (names.empty()) fail(ErrorCode::kInvalidProjection, "projection is empty");
  std::vector<size_t> out;
  for (const auto& n : names) {
    auto idx = footer_.find_column(n);
    if (!idx) fail(ErrorCode::kInvalidProjection, "no column named '" + n + "'");
    if (std::find(out.begin(), out.end(), *idx) != out.end()) {
      fail(ErrorCode::kInvalidProjection, "column '" + n + "' projected twice");
    }
    out.push_back(*idx);
  }
  return out;
}

PaxReader::ChunkState& PaxReader::state(size_t row_group, size_t column) {
  ColumnChunkMeta meta = footer_.column_meta(row_group, column);
  const uint64_t key = uint64_t{row_group} * footer_.num_columns() + column;
  ChunkState& st = chunks_[key];
  if (!st.loaded) {
    st.meta = std::move(meta);
    load_index(st, row_group, column);
    st.loaded = true;
  }
  return st;
}

void PaxReader::load_index(ChunkState& st, size_t row_group, size_t column) {
  const LogicalType type = footer_.column(column).type;
  std::vector<uint8_t> blob;
  if (footer_.zone_placement() == ZonePlacement::CentralizedFooter) {
    auto it = column_index_cache_.find(column);
    if (it == column_index_cache_.end()) {
      const ColumnChunkMeta first = footer_.column_meta(0, column);
      const ColumnChunkMeta last = footer_.column_meta(footer_.num_row_groups() - 1, column);
      const uint64_t begin = first.page_index_offset;
      const uint64_t end = last.page_index_offset + last.page_index_length;
      if (end < begin) fail(ErrorCode::kDecodeError, "page index section out of order");
      it = column_index_cache_.emplace(column, std::make_pair(begin, source_->read(begin, end - begin)))
               .first;
    }
    const auto& [base, bytes] = it->second;
    const uint64_t off = st.meta.page_index_offset;
    if (off < base || off - base + st.meta.page_index_length > bytes.size()) {
      fail(ErrorCode::kDecodeError, "page index outside its section");
    }
    blob.assign(bytes.begin() + static_cast<ptrdiff_t>(off - base),
                bytes.begin() + static_cast<ptrdiff_t>(off - base + st.meta.page_index_length));
  } else {
    blob = source_->read(st.meta.page_index_offset, st.meta.page_index_length);
  }
  try {
    st.index = decode_page_index(blob, type);
  } catch (const PaxError& e) {
    fail(ErrorCode::kDecodeError, "row group " + std::to_string(row_group) + ", column " +
                                      std::to_string(column) + " page index: " + e.what());
  }
  uint64_t rows = 0;
  for (const auto& p : st.index.pages) rows += p.rows;
  if (st.index.pages.size() != st.meta.num_pages || rows != st.meta.rows) {
    fail(ErrorCode::kDecodeError, "row group " + std::to_string(row_group) + ", column " +
                                      std::to_string(column) + ": page index disagrees with footer");
  }
}

const PageIndex& PaxReader::page_index(size_t row_group, size_t column) {
  return state(row_group, column).index;
}

const ChunkDecoder& PaxReader::decoder(ChunkState& st, size_t column) {
  if (!st.decoder) {
    std::vector<uint8_t> dict;
    if (st.meta.dict_length > 0 || st.meta.dict_raw_length > 0) {
      auto stored = source_->read(st.meta.dict_offset, st.meta.dict_length);
      dict = decompress(st.meta.codec, stored, st.meta.dict_raw_length);
    }
    st.decoder.emplace(footer_.column(column).type, st.meta.encoding, dict);
  }
  return *st.decoder;
}

std::vector<uint8_t> PaxReader::page_bytes(ChunkState& st, size_t page) {
  const PageEntry& e = st.index.pages[page];
  if (st.meta.aligned) {
    auto stored = source_->read(e.offset, e.stored_length);
    return decompress(st.meta.codec, stored, e.raw_length);
  }
  std::vector<uint8_t> out;
  out.reserve(e.raw_length);
  const uint64_t begin = e.offset;
  const uint64_t end = e.offset + e.raw_length;
  uint64_t unit_start = 0;
  for (size_t u = 0; u < st.index.units.size() && unit_start < end; ++u) {
    const CompressionUnit& cu = st.index.units[u];
    const uint64_t unit_end = unit_start + cu.raw_length;
    if (unit_end > begin) {
      if (st.unit != u) {
        auto stored = source_->read(cu.offset, cu.stored_length);
        st.unit_bytes = decompress(st.meta.codec, stored, cu.raw_length);
        st.unit = u;
      }
      const uint64_t lo = std::max(begin, unit_start) - unit_start;
      const uint64_t hi = std::min(end, unit_end) - unit_start;
      out.insert(out.end(), st.unit_bytes.begin() + static_cast<ptrdiff_t>(lo),
                 st.unit_bytes.begin() + static_cast<ptrdiff_t>(hi));
    }
    unit_start = unit_end;
  }
  if (out.size() != e.raw_length) fail(ErrorCode::kDecodeError, "page extends past its compression units");
  return out;
}

ColumnVector PaxReader::read_page(size_t row_group, size_t column, size_t page) {
  ChunkState& st = state(row_group, column);
  if (page >= st.index.pages.size()) {
    fail(ErrorCode::kIndexOutOfRange, "page " + std::to_string(page) + " of " +
                                          std::to_string(st.index.pages.size()));
  }
  const std::string where = "row group " + std::to_string(row_group) + ", column " +
                            std::to_string(column) + ", page " + std::to_string(page);
  try {
    const ChunkDecoder& dec = decoder(st, column);
    auto bytes = page_bytes(st, page);
    ColumnVector out = dec.decode_page(bytes, st.index.pages[page].rows);
    if (out.size() != st.index.pages[page].rows) fail(ErrorCode::kDecodeError, "row count mismatch");
    return out;
  } catch (const PaxError& e) {
    if (e.code() != ErrorCode::kDecodeError) throw;
    fail(ErrorCode::kDecodeError, where + ": " + e.what());
  }
}

ColumnVector PaxReader::read_chunk(size_t row_group, size_t column) {
  ChunkState& st = state(row_group, column);
  ColumnVector out(footer_.column(column).type);
  out.reserve(st.meta.rows);
  for (size_t p = 0; p < st.index.pages.size(); ++p) out.append_all(read_page(row_group, column, p));
  return out;
}

std::optional<SplitBlockBloomFilter> PaxReader::chunk_bloom(size_t row_group, size_t column) {
  ChunkState& st = state(row_group, column);
  if (st.meta.bloom_length == 0) return std::nullopt;
  return SplitBlockBloomFilter::deserialize(source_->read(st.meta.bloom_offset, st.meta.bloom_length));
}

std::optional<SplitBlockBloomFilter> PaxReader::page_bloom(size_t row_group, size_t column,
                                                           size_t page) {
  ChunkState& st = state(row_group, column);
  if (page >= st.index.pages.size()) {
    fail(ErrorCode::kIndexOutOfRange, "page " + std::to_string(page) + " of " +
                                          std::to_string(st.index.pages.size()));
  }
  const PageEntry& e = st.index.pages[page];
  if (e.bloom_length == 0) return std::nullopt;
  return SplitBlockBloomFilter::deserialize(source_->read(e.bloom_offset, e.bloom_length));
}

Table PaxReader::scan(const std::vector<std::string>& projection) {
  const auto cols = resolve_projection(projection);
  Table out(footer_.total_rows());
  for (size_t i = 0; i < cols.size(); ++i) {
    ColumnVector col(footer_.column(cols[i]).type);
    col.reserve(footer_.total_rows());
    for (size_t g = 0; g < footer_.num_row_groups(); ++g) col.append_all(read_chunk(g, cols[i]));
    if (col.size() != footer_.total_rows()) {
      fail(ErrorCode::kDecodeError, "column '" + projection[i] + "' row count mismatch");
    }
    out.add_column(projection[i], std::move(col));
  }
  return out;
}

namespace {

// Wraps a caller-owned source without taking ownership.
std::shared_ptr<ByteSource> borrow(ByteSource& s) {
  return std::shared_ptr<ByteSource>(&s, [](ByteSource*) {});
}

}  // namespace

Table scan_table(ByteSource& source, const std::vector<std::string>& projection) {
  return PaxReader(borrow(source)).scan(projection);
}

Table scan_table(std::shared_ptr<ByteSource> source, const std::vector<std::string>& projection) {
  return PaxReader(std::move(source)).scan(projection);
}

}  // namespace paxlab
