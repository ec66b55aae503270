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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "paxlab/codec.hpp"
#include "paxlab/column.hpp"
#include "paxlab/encoders.hpp"
#include "paxlab/filters.hpp"

namespace paxlab {

inline constexpr char kPaxMagic[4] = {'P', 'A', 'X', 'B'};
inline constexpr uint16_t kPaxVersion = 1;

enum class RowGroupMode : uint8_t { FixedRows = 0, FixedBytes = 1 };
enum class ZonePlacement : uint8_t { CentralizedFooter = 0, PerRowGroup = 1 };
enum class BloomGranularity : uint8_t { ColumnChunk = 0, Page = 1 };

const char* zone_placement_name(ZonePlacement placement);
const char* bloom_granularity_name(BloomGranularity granularity);

struct BloomConfig {
  bool enabled = false;
  double fpp = 0.05;
  BloomGranularity granularity = BloomGranularity::ColumnChunk;

  friend bool operator==(const BloomConfig&, const BloomConfig&) = default;
};

struct ZoneLevels {
  bool file = true;
  bool row_group = true;
  bool page = true;

  friend bool operator==(const ZoneLevels&, const ZoneLevels&) = default;
};

struct FileLayoutConfig {
  RowGroupMode row_group_mode = RowGroupMode::FixedRows;
  uint64_t row_group_rows = 1048576;
  uint64_t row_group_bytes = uint64_t{64} << 20;
  uint64_t page_rows = 131072;
  ZoneLevels zone_maps;
  ZonePlacement zone_placement = ZonePlacement::CentralizedFooter;
  BloomConfig bloom;
  CodecId codec = CodecId::None;
  EncodingPolicy encoding_policy;
  bool align_compression_to_page = true;
  uint64_t compression_unit_bytes = uint64_t{256} << 10;

  static FileLayoutConfig parquet_like();
  static FileLayoutConfig orc_like();
  static FileLayoutConfig plain();

  friend bool operator==(const FileLayoutConfig&, const FileLayoutConfig&) = default;
};

void validate(const FileLayoutConfig& cfg);

// ---- footer model ----

struct ColumnSchema {
  std::string name;
  LogicalType type = LogicalType::Int64;

  friend bool operator==(const ColumnSchema&, const ColumnSchema&) = default;
};

struct ColumnChunkMeta {
  uint64_t offset = 0;
  uint64_t length = 0;
  uint64_t rows = 0;
  ChunkEncoding encoding = ChunkEncoding::Plain;
  CodecId codec = CodecId::None;
  bool aligned = true;
  uint32_t num_pages = 0;
  // Dictionary section; length 0 when absent.
  uint64_t dict_offset = 0;
  uint32_t dict_length = 0;
  uint32_t dict_raw_length = 0;
  // This chunk's page index blob.
  uint64_t page_index_offset = 0;
  uint32_t page_index_length = 0;
  // Chunk-level Bloom filter; length 0 when absent.
  uint64_t bloom_offset = 0;
  uint32_t bloom_length = 0;
  std::optional<ZoneMap> zone;

  friend bool operator==(const ColumnChunkMeta&, const ColumnChunkMeta&) = default;
};

struct PageEntry {
  uint64_t first_row = 0;  // within the row group
  uint64_t rows = 0;
  // File offset when aligned, else offset into the chunk's raw page stream.
  uint64_t offset = 0;
  uint32_t stored_length = 0;
  uint32_t raw_length = 0;
  std::optional<ZoneMap> zone;
  uint64_t bloom_offset = 0;
  uint32_t bloom_length = 0;

  friend bool operator==(const PageEntry&, const PageEntry&) = default;
};

struct CompressionUnit {
  uint64_t offset = 0;
  uint32_t stored_length = 0;
  uint32_t raw_length = 0;

  friend bool operator==(const CompressionUnit&, const CompressionUnit&) = default;
};

struct PageIndex {
  std::vector<PageEntry> pages;
  // Only for misaligned chunks.
  std::vector<CompressionUnit> units;

  friend bool operator==(const PageIndex&, const PageIndex&) = default;
};

struct RowGroupMeta {
  uint64_t offset = 0;
  uint64_t length = 0;
  uint64_t first_row = 0;
  uint64_t rows = 0;

  friend bool operator==(const RowGroupMeta&, const RowGroupMeta&) = default;
};

struct FileFooter {
  uint16_t version = kPaxVersion;
  uint64_t total_rows = 0;
  ZonePlacement zone_placement = ZonePlacement::CentralizedFooter;
  ZoneLevels zone_maps;
  BloomGranularity bloom_granularity = BloomGranularity::ColumnChunk;
  uint64_t page_rows = 0;
  std::vector<ColumnSchema> schema;
  std::vector<RowGroupMeta> row_groups;
  // chunks[rg][col]
  std::vector<std::vector<ColumnChunkMeta>> chunks;
  std::vector<std::optional<ZoneMap>> file_zones;
  uint32_t footer_length = 0;

  std::optional<size_t> find_column(std::string_view name) const;

  friend bool operator==(const FileFooter&, const FileFooter&) = default;
};

// ---- byte sources and sinks ----

struct IoStats {
  uint64_t read_ops = 0;
  uint64_t bytes_read = 0;
};

class ByteSource {
 public:
  virtual ~ByteSource() = default;
  virtual uint64_t size() const = 0;
  // Reads exactly `len` bytes at `offset`; counts one read op.
  std::vector<uint8_t> read(uint64_t offset, uint64_t len);

  const IoStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

 protected:
  virtual void read_into(uint64_t offset, std::span<uint8_t> out) = 0;

 private:
  IoStats stats_;
};

class MemorySource : public ByteSource {
 public:
  explicit MemorySource(std::vector<uint8_t> bytes) : bytes_(std::move(bytes)) {}
  uint64_t size() const override { return bytes_.size(); }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

 protected:
  void read_into(uint64_t offset, std::span<uint8_t> out) override;

 private:
  std::vector<uint8_t> bytes_;
};

class FileSource : public ByteSource {
 public:
  explicit FileSource(const std::string& path);
  ~FileSource() override;
  FileSource(const FileSource&) = delete;
  FileSource& operator=(const FileSource&) = delete;
  uint64_t size() const override { return size_; }

 protected:
  void read_into(uint64_t offset, std::span<uint8_t> out) override;

 private:
  int fd_ = -1;
  uint64_t size_ = 0;
};

class ByteSink {
 public:
  virtual ~ByteSink() = default;
  virtual void write(std::span<const uint8_t> bytes) = 0;
  virtual uint64_t position() const = 0;
};

class MemorySink : public ByteSink {
 public:
  void write(std::span<const uint8_t> bytes) override {
    bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
  }
  uint64_t position() const override { return bytes_.size(); }
  std::vector<uint8_t>& bytes() { return bytes_; }
  std::vector<uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<uint8_t> bytes_;
};

class FileSink : public ByteSink {
 public:
  explicit FileSink(const std::string& path);
  ~FileSink() override;
  FileSink(const FileSink&) = delete;
  FileSink& operator=(const FileSink&) = delete;
  void write(std::span<const uint8_t> bytes) override;
  uint64_t position() const override { return pos_; }
  void close();

 private:
  int fd_ = -1;
  uint64_t pos_ = 0;
};

// ---- writer ----

FileFooter write_table(const Table& table, const FileLayoutConfig& cfg, ByteSink& sink);
std::vector<uint8_t> write_table_to_bytes(const Table& table, const FileLayoutConfig& cfg,
                                          FileFooter* footer = nullptr);

// Rows per row group for each group the writer would emit.
std::vector<uint64_t> plan_row_groups(const Table& table, const FileLayoutConfig& cfg);

// ---- footer access ----

// Reads the trailer and the footer bytes (two read ops).
std::vector<uint8_t> read_footer_bytes(ByteSource& source);

// Full sequential parse of every schema entry and metadata slot.
FileFooter parse_footer(std::span<const uint8_t> footer_bytes);
FileFooter read_footer(ByteSource& source);

// Random-access view over raw footer bytes. Construction validates the
// fixed header only; lookups touch one fixed-size slot each.
class FooterView {
 public:
  explicit FooterView(std::vector<uint8_t> footer_bytes);

  uint64_t total_rows() const { return total_rows_; }
  size_t num_columns() const { return num_columns_; }
  size_t num_row_groups() const { return num_row_groups_; }
  uint64_t page_rows() const { return page_rows_; }
  ZonePlacement zone_placement() const { return placement_; }
  BloomGranularity bloom_granularity() const { return bloom_granularity_; }
  const ZoneLevels& zone_maps() const { return zone_levels_; }

  ColumnSchema column(size_t idx) const;
  std::optional<size_t> find_column(std::string_view name) const;
  RowGroupMeta row_group(size_t idx) const;
  ColumnChunkMeta column_meta(size_t row_group, size_t column) const;
  std::optional<ZoneMap> file_zone(size_t column) const;
  const std::vector<uint8_t>& bytes() const { return bytes_; }

 private:
  std::span<const uint8_t> heap(uint32_t offset, uint32_t length) const;
  LogicalType column_type(size_t column) const;

  std::vector<uint8_t> bytes_;
  uint64_t total_rows_ = 0;
  size_t num_columns_ = 0;
  size_t num_row_groups_ = 0;
  uint64_t page_rows_ = 0;
  ZonePlacement placement_ = ZonePlacement::CentralizedFooter;
  BloomGranularity bloom_granularity_ = BloomGranularity::ColumnChunk;
  ZoneLevels zone_levels_;
  size_t schema_at_ = 0, hash_at_ = 0, hash_buckets_ = 0, groups_at_ = 0, slots_at_ = 0,
         file_zones_at_ = 0, heap_at_ = 0;
};

ColumnChunkMeta read_column_meta(const FooterView& footer, size_t row_group_idx,
                                 size_t column_idx);

// ---- reader ----

class PaxReader {
 public:
  explicit PaxReader(std::shared_ptr<ByteSource> source);

  const FooterView& footer() const { return footer_; }
  ByteSource& source() { return *source_; }
  const IoStats& stats() const { return source_->stats(); }

  std::vector<size_t> resolve_projection(const std::vector<std::string>& names) const;

  const PageIndex& page_index(size_t row_group, size_t column);
  ColumnVector read_page(size_t row_group, size_t column, size_t page);
  ColumnVector read_chunk(size_t row_group, size_t column);
  std::optional<SplitBlockBloomFilter> chunk_bloom(size_t row_group, size_t column);
  std::optional<SplitBlockBloomFilter> page_bloom(size_t row_group, size_t column, size_t page);

  Table scan(const std::vector<std::string>& projection);

  // Drops cached page indexes, dictionaries and compression units.
  void clear_cache();

 private:
  struct ChunkState {
    bool loaded = false;
    ColumnChunkMeta meta;
    PageIndex index;
    std::optional<ChunkDecoder> decoder;
    // Most recently inflated compression unit.
    size_t unit = SIZE_MAX;
    std::vector<uint8_t> unit_bytes;
  };

  ChunkState& state(size_t row_group, size_t column);
  void load_index(ChunkState& st, size_t row_group, size_t column);
  const ChunkDecoder& decoder(ChunkState& st, size_t column);
  std::vector<uint8_t> page_bytes(ChunkState& st, size_t page);

  std::shared_ptr<ByteSource> source_;
  FooterView footer_;
  std::unordered_map<uint64_t, ChunkState> chunks_;
  // Centralized placement: one read covers a column's blobs in every
  // row group. Keyed by column; holds (file offset, bytes).
  std::unordered_map<size_t, std::pair<uint64_t, std::vector<uint8_t>>> column_index_cache_;
};

Table scan_table(ByteSource& source, const std::vector<std::string>& projection);
Table scan_table(std::shared_ptr<ByteSource> source, const std::vector<std::string>& projection);

// Page index blob codec, exposed for golden tests.
std::vector<uint8_t> encode_page_index(const PageIndex& index, LogicalType type);
PageIndex decode_page_index(std::span<const uint8_t> bytes, LogicalType type);

// Zone map heap codec.
void encode_zone_map(const ZoneMap& zone, LogicalType type, std::vector<uint8_t>& out);
ZoneMap decode_zone_map(std::span<const uint8_t> bytes, LogicalType type, size_t* consumed = nullptr);

}  // namespace paxlab
