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

#include "paxlab/paxlab.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "paxlab/analyze.hpp"
#include "paxlab/bench.hpp"
#include "paxlab/config.hpp"
#include "paxlab/pax_file.hpp"
#include "paxlab/scan.hpp"
#include "paxlab/status.hpp"
#include "paxlab/workload.hpp"

struct pax_table {
  paxlab::Table table;
};

struct pax_layout {
  paxlab::FileLayoutConfig cfg;
};

struct pax_reader {
  std::unique_ptr<paxlab::PaxReader> reader;
  std::vector<std::string> names;
};

struct pax_bitvector {
  paxlab::Bitmap bits;
};

struct pax_bench_options {
  paxlab::BenchOptions opts;
};

namespace {

using paxlab::ErrorCode;
using paxlab::PaxError;

thread_local std::string g_last_error;

pax_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyColumn: return PAX_EMPTY_COLUMN;
    case ErrorCode::kNotEnoughValues: return PAX_NOT_ENOUGH_VALUES;
    case ErrorCode::kInvalidConfig: return PAX_INVALID_CONFIG;
    case ErrorCode::kEncodingOverflow: return PAX_ENCODING_OVERFLOW;
    case ErrorCode::kBadMagic: return PAX_BAD_MAGIC;
    case ErrorCode::kTruncatedFile: return PAX_TRUNCATED_FILE;
    case ErrorCode::kUnsupportedVersion: return PAX_UNSUPPORTED_VERSION;
    case ErrorCode::kIndexOutOfRange: return PAX_INDEX_OUT_OF_RANGE;
    case ErrorCode::kInvalidProjection: return PAX_INVALID_PROJECTION;
    case ErrorCode::kDecodeError: return PAX_DECODE_ERROR;
    case ErrorCode::kTypeMismatch: return PAX_TYPE_MISMATCH;
    case ErrorCode::kSchemaMismatch: return PAX_SCHEMA_MISMATCH;
    case ErrorCode::kInvalidLevels: return PAX_INVALID_LEVELS;
    case ErrorCode::kIoError: return PAX_IO_ERROR;
  }
  return PAX_INTERNAL;
}

pax_status set_error(pax_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

template <typename F>
pax_status guarded(F&& fn) {
  try {
    fn();
    return PAX_OK;
  } catch (const PaxError& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PAX_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PAX_INTERNAL, e.what());
  }
}

#define PAX_REQUIRE(cond, what)                                              \
  do {                                                                       \
    if (!(cond)) return set_error(PAX_INVALID_ARGUMENT, what " is required"); \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

paxlab::WorkloadSpec workload_of(std::string_view text) {
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && (text[first] == '{' || text[first] == '"')) {
    return paxlab::workload_from_json(text);
  }
  return paxlab::workload_preset(text);
}

paxlab::CodecId codec_of(const char* name) {
  auto id = paxlab::parse_codec(name);
  if (!id) paxlab::fail(ErrorCode::kInvalidConfig, std::string("unknown codec '") + name + "'");
  return *id;
}

paxlab::Table table_for_column(const paxlab::ColumnConfig& cfg) {
  paxlab::Table t(cfg.rows);
  t.add_column("c0", cfg.rows == 0 ? paxlab::ColumnVector(cfg.logical_type)
                                   : paxlab::generate_column(cfg));
  return t;
}

std::vector<std::string> names_of(const char* const* columns, size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) {
    if (columns[i] == nullptr) paxlab::fail(ErrorCode::kInvalidProjection, "null column name");
    out.emplace_back(columns[i]);
  }
  return out;
}

std::vector<std::string> projection_of(const pax_reader* r, const char* const* columns, size_t n) {
  return n == 0 ? r->names : names_of(columns, n);
}

paxlab::Scalar literal(const nlohmann::json& v, paxlab::LogicalType type, const char* key) {
  using paxlab::LogicalType;
  auto mismatch = [&]() -> paxlab::Scalar {
    paxlab::fail(ErrorCode::kTypeMismatch, std::string("predicate '") + key + "' does not match " +
                                               paxlab::logical_type_name(type) + " column");
  };
  switch (type) {
    case LogicalType::Int64:
      if (v.is_number_integer()) return v.get<int64_t>();
      return mismatch();
    case LogicalType::Float64:
      if (v.is_number()) return v.get<double>();
      return mismatch();
    case LogicalType::Utf8String:
      if (v.is_string()) return v.get<std::string>();
      return mismatch();
    case LogicalType::Bool:
      if (v.is_boolean()) return v.get<bool>();
      return mismatch();
  }
  return mismatch();
}

paxlab::PredicateSpec predicate_of(const pax_reader* r, const char* text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    paxlab::fail(ErrorCode::kInvalidConfig, std::string("predicate: ") + e.what());
  }
  if (!j.is_object() || !j.contains("column") || !j["column"].is_string() || !j.contains("op") ||
      !j["op"].is_string()) {
    paxlab::fail(ErrorCode::kInvalidConfig, "predicate needs string 'column' and 'op'");
  }
  for (const auto& [k, _] : j.items()) {
    if (k != "column" && k != "op" && k != "value" && k != "lo" && k != "hi") {
      paxlab::fail(ErrorCode::kInvalidConfig, "unknown predicate key '" + k + "'");
    }
  }
  const std::string column = j["column"].get<std::string>();
  const auto idx = r->reader->footer().find_column(column);
  if (!idx) paxlab::fail(ErrorCode::kInvalidProjection, "unknown column '" + column + "'");
  const paxlab::LogicalType type = r->reader->footer().column(*idx).type;
  const std::string op = j["op"].get<std::string>();
  if (op == "eq") {
    if (!j.contains("value")) paxlab::fail(ErrorCode::kInvalidConfig, "eq predicate needs 'value'");
    return paxlab::PredicateSpec::eq(column, literal(j["value"], type, "value"));
  }
  if (op == "range") {
    if (!j.contains("lo") || !j.contains("hi")) {
      paxlab::fail(ErrorCode::kInvalidConfig, "range predicate needs 'lo' and 'hi'");
    }
    return paxlab::PredicateSpec::range(column, literal(j["lo"], type, "lo"),
                                        literal(j["hi"], type, "hi"));
  }
  paxlab::fail(ErrorCode::kInvalidConfig, "unknown predicate op '" + op + "'");
}

void fill(pax_counters* out, const paxlab::QueryCounters& c) {
  if (out == nullptr) return;
  out->zones_skipped = c.zones_skipped;
  out->bloom_skipped = c.bloom_skipped;
  out->pages_decoded = c.pages_decoded;
  out->rows_decoded = c.rows_decoded;
  out->bytes_read = c.bytes_read;
  out->read_ops = c.read_ops;
}

pax_type type_of(paxlab::LogicalType t) { return static_cast<pax_type>(t); }

pax_status make_reader(std::shared_ptr<paxlab::ByteSource> source, pax_reader** out) {
  return guarded([&] {
    auto r = std::make_unique<pax_reader>();
    r->reader = std::make_unique<paxlab::PaxReader>(std::move(source));
    for (size_t c = 0; c < r->reader->footer().num_columns(); ++c) {
      r->names.push_back(r->reader->footer().column(c).name);
    }
    *out = r.release();
  });
}

pax_status check_cell(const pax_table* t, uint64_t col, uint64_t row, paxlab::LogicalType want,
                      int* is_null) {
  if (col >= t->table.column_count() || row >= t->table.row_count()) {
    return set_error(PAX_INDEX_OUT_OF_RANGE, "cell (" + std::to_string(col) + ", " +
                                                 std::to_string(row) + ") out of range");
  }
  const auto& c = t->table.column(col);
  if (c.type() != want) {
    return set_error(PAX_TYPE_MISMATCH, std::string("column is ") +
                                            paxlab::logical_type_name(c.type()));
  }
  *is_null = c.is_valid(row) ? 0 : 1;
  return PAX_OK;
}

}  // namespace

extern "C" {

const char* pax_version(void) { return "0.1.0"; }

const char* pax_status_name(pax_status status) {
  switch (status) {
    case PAX_OK: return "OK";
    case PAX_INVALID_ARGUMENT: return "InvalidArgument";
    case PAX_INTERNAL: return "Internal";
    default: break;
  }
  if (status >= PAX_EMPTY_COLUMN && status <= PAX_IO_ERROR) {
    return paxlab::error_code_name(static_cast<ErrorCode>(status - 1));
  }
  return "Unknown";
}

const char* pax_last_error(void) { return g_last_error.c_str(); }

void pax_string_free(char* s) { std::free(s); }

// ---- tables ----

pax_status pax_table_generate(const char* workload, uint64_t rows, uint64_t cols, uint64_t seed,
                              pax_table** out) {
  PAX_REQUIRE(workload != nullptr && out != nullptr, "workload and out");
  return guarded([&] {
    if (cols == 0) paxlab::fail(ErrorCode::kInvalidConfig, "cols must be positive");
    auto t = std::make_unique<pax_table>();
    t->table = paxlab::generate_table(workload_of(workload), rows, cols, seed);
    *out = t.release();
  });
}

pax_status pax_table_generate_column(const char* column_json, pax_table** out) {
  PAX_REQUIRE(column_json != nullptr && out != nullptr, "column_json and out");
  return guarded([&] {
    auto t = std::make_unique<pax_table>();
    t->table = table_for_column(paxlab::column_config_from_json(column_json));
    *out = t.release();
  });
}

pax_status pax_table_read_csv(const char* path, pax_csv_header header, pax_table** out) {
  PAX_REQUIRE(path != nullptr && out != nullptr, "path and out");
  return guarded([&] {
    auto t = std::make_unique<pax_table>();
    t->table = paxlab::read_csv(paxlab::read_text_file(path),
                                static_cast<paxlab::CsvHeader>(header));
    *out = t.release();
  });
}

void pax_table_free(pax_table* t) { delete t; }

uint64_t pax_table_num_rows(const pax_table* t) { return t == nullptr ? 0 : t->table.row_count(); }

uint64_t pax_table_num_columns(const pax_table* t) {
  return t == nullptr ? 0 : t->table.column_count();
}

pax_status pax_table_column_name(const pax_table* t, uint64_t col, const char** name) {
  PAX_REQUIRE(t != nullptr && name != nullptr, "table and name");
  if (col >= t->table.column_count()) return set_error(PAX_INDEX_OUT_OF_RANGE, "column index");
  *name = t->table.name(col).c_str();
  return PAX_OK;
}

pax_status pax_table_column_type(const pax_table* t, uint64_t col, pax_type* type) {
  PAX_REQUIRE(t != nullptr && type != nullptr, "table and type");
  if (col >= t->table.column_count()) return set_error(PAX_INDEX_OUT_OF_RANGE, "column index");
  *type = type_of(t->table.column(col).type());
  return PAX_OK;
}

pax_status pax_table_get_int64(const pax_table* t, uint64_t col, uint64_t row, int64_t* value,
                               int* is_null) {
  PAX_REQUIRE(t != nullptr && value != nullptr && is_null != nullptr, "table, value and is_null");
  const pax_status s = check_cell(t, col, row, paxlab::LogicalType::Int64, is_null);
  if (s == PAX_OK && !*is_null) *value = t->table.column(col).ints()[row];
  return s;
}

pax_status pax_table_get_float64(const pax_table* t, uint64_t col, uint64_t row, double* value,
                                 int* is_null) {
  PAX_REQUIRE(t != nullptr && value != nullptr && is_null != nullptr, "table, value and is_null");
  const pax_status s = check_cell(t, col, row, paxlab::LogicalType::Float64, is_null);
  if (s == PAX_OK && !*is_null) *value = t->table.column(col).doubles()[row];
  return s;
}

pax_status pax_table_get_string(const pax_table* t, uint64_t col, uint64_t row, const char** data,
                                size_t* len, int* is_null) {
  PAX_REQUIRE(t != nullptr && data != nullptr && len != nullptr && is_null != nullptr,
              "table, data, len and is_null");
  const pax_status s = check_cell(t, col, row, paxlab::LogicalType::Utf8String, is_null);
  if (s == PAX_OK && !*is_null) {
    const std::string& v = t->table.column(col).strings()[row];
    *data = v.data();
    *len = v.size();
  }
  return s;
}

pax_status pax_table_get_bool(const pax_table* t, uint64_t col, uint64_t row, int* value,
                              int* is_null) {
  PAX_REQUIRE(t != nullptr && value != nullptr && is_null != nullptr, "table, value and is_null");
  const pax_status s = check_cell(t, col, row, paxlab::LogicalType::Bool, is_null);
  if (s == PAX_OK && !*is_null) *value = t->table.column(col).bools()[row] != 0;
  return s;
}

pax_status pax_table_equal(const pax_table* a, const pax_table* b, int* equal) {
  PAX_REQUIRE(a != nullptr && b != nullptr && equal != nullptr, "tables and equal");
  *equal = a->table == b->table ? 1 : 0;
  return PAX_OK;
}

// ---- layouts ----

pax_status pax_layout_create(const char* preset, pax_layout** out) {
  PAX_REQUIRE(preset != nullptr && out != nullptr, "preset and out");
  return guarded([&] {
    auto cfg = paxlab::format_preset(preset);
    if (!cfg) paxlab::fail(ErrorCode::kInvalidConfig, std::string("unknown preset '") + preset + "'");
    *out = new pax_layout{*cfg};
  });
}

void pax_layout_free(pax_layout* layout) { delete layout; }

pax_status pax_layout_set_codec(pax_layout* layout, const char* codec) {
  PAX_REQUIRE(layout != nullptr && codec != nullptr, "layout and codec");
  return guarded([&] { layout->cfg.codec = codec_of(codec); });
}

pax_status pax_layout_apply_json(pax_layout* layout, const char* json) {
  PAX_REQUIRE(layout != nullptr && json != nullptr, "layout and json");
  return guarded([&] { paxlab::apply_layout_overrides(layout->cfg, json); });
}

pax_status pax_layout_to_json(const pax_layout* layout, char** json) {
  PAX_REQUIRE(layout != nullptr && json != nullptr, "layout and json");
  return guarded([&] { *json = dup_string(paxlab::layout_to_json(layout->cfg)); });
}

// ---- files ----

pax_status pax_write_file(const pax_table* t, const pax_layout* layout, const char* path,
                          uint64_t* file_bytes, uint64_t* write_ns) {
  PAX_REQUIRE(t != nullptr && layout != nullptr && path != nullptr, "table, layout and path");
  return guarded([&] {
    const auto t0 = std::chrono::steady_clock::now();
    paxlab::FileSink sink(path);
    paxlab::write_table(t->table, layout->cfg, sink);
    sink.close();
    const auto t1 = std::chrono::steady_clock::now();
    if (file_bytes != nullptr) *file_bytes = sink.position();
    if (write_ns != nullptr) {
      *write_ns = static_cast<uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    }
  });
}

pax_status pax_reader_open(const char* path, pax_reader** out) {
  PAX_REQUIRE(path != nullptr && out != nullptr, "path and out");
  std::shared_ptr<paxlab::ByteSource> source;
  const pax_status s = guarded([&] { source = std::make_shared<paxlab::FileSource>(path); });
  if (s != PAX_OK) return s;
  return make_reader(std::move(source), out);
}

pax_status pax_reader_open_memory(const void* data, size_t len, pax_reader** out) {
  PAX_REQUIRE((data != nullptr || len == 0) && out != nullptr, "data and out");
  const auto* p = static_cast<const uint8_t*>(data);
  std::shared_ptr<paxlab::ByteSource> source;
  const pax_status s = guarded([&] {
    source = std::make_shared<paxlab::MemorySource>(std::vector<uint8_t>(p, p + len));
  });
  if (s != PAX_OK) return s;
  return make_reader(std::move(source), out);
}

void pax_reader_free(pax_reader* r) { delete r; }

uint64_t pax_reader_num_rows(const pax_reader* r) {
  return r == nullptr ? 0 : r->reader->footer().total_rows();
}

uint64_t pax_reader_num_columns(const pax_reader* r) {
  return r == nullptr ? 0 : r->reader->footer().num_columns();
}

uint64_t pax_reader_num_row_groups(const pax_reader* r) {
  return r == nullptr ? 0 : r->reader->footer().num_row_groups();
}

pax_status pax_reader_column_name(pax_reader* r, uint64_t col, const char** name) {
  PAX_REQUIRE(r != nullptr && name != nullptr, "reader and name");
  if (col >= r->names.size()) return set_error(PAX_INDEX_OUT_OF_RANGE, "column index");
  *name = r->names[col].c_str();
  return PAX_OK;
}

pax_status pax_reader_column_type(const pax_reader* r, uint64_t col, pax_type* type) {
  PAX_REQUIRE(r != nullptr && type != nullptr, "reader and type");
  if (col >= r->names.size()) return set_error(PAX_INDEX_OUT_OF_RANGE, "column index");
  return guarded([&] { *type = type_of(r->reader->footer().column(col).type); });
}

pax_status pax_reader_io(const pax_reader* r, uint64_t* read_ops, uint64_t* bytes_read) {
  PAX_REQUIRE(r != nullptr, "reader");
  if (read_ops != nullptr) *read_ops = r->reader->stats().read_ops;
  if (bytes_read != nullptr) *bytes_read = r->reader->stats().bytes_read;
  return PAX_OK;
}

pax_status pax_reader_scan(pax_reader* r, const char* const* columns, size_t n, pax_table** out) {
  PAX_REQUIRE(r != nullptr && out != nullptr && (columns != nullptr || n == 0),
              "reader, columns and out");
  return guarded([&] {
    auto t = std::make_unique<pax_table>();
    const auto names = projection_of(r, columns, n);
    t->table = names.empty() ? paxlab::Table(r->reader->footer().total_rows())
                             : r->reader->scan(names);
    *out = t.release();
  });
}

pax_status pax_reader_select(pax_reader* r, const char* predicate_json, pax_bitvector** out,
                             pax_counters* counters) {
  PAX_REQUIRE(r != nullptr && predicate_json != nullptr && out != nullptr,
              "reader, predicate and out");
  return guarded([&] {
    auto res = paxlab::select(*r->reader, predicate_of(r, predicate_json));
    fill(counters, res.counters);
    *out = new pax_bitvector{std::move(res.bits)};
  });
}

pax_status pax_reader_project(pax_reader* r, const pax_bitvector* bv, const char* const* columns,
                              size_t n, pax_table** out, pax_counters* counters) {
  PAX_REQUIRE(r != nullptr && bv != nullptr && out != nullptr && (columns != nullptr || n == 0),
              "reader, bitvector, columns and out");
  return guarded([&] {
    auto res = paxlab::project_with_bitvector(*r->reader, bv->bits, projection_of(r, columns, n));
    fill(counters, res.counters);
    *out = new pax_table{std::move(res.table)};
  });
}

pax_status pax_reader_estimate_selectivity(pax_reader* r, const char* predicate_json,
                                           double* estimate) {
  PAX_REQUIRE(r != nullptr && predicate_json != nullptr && estimate != nullptr,
              "reader, predicate and estimate");
  return guarded(
      [&] { *estimate = paxlab::estimate_selectivity(*r->reader, predicate_of(r, predicate_json)); });
}

pax_status pax_reader_query(pax_reader* r, const char* predicate_json, const char* const* columns,
                            size_t n, pax_strategy strategy, pax_table** out,
                            pax_counters* counters) {
  PAX_REQUIRE(r != nullptr && predicate_json != nullptr && out != nullptr &&
                  (columns != nullptr || n == 0),
              "reader, predicate, columns and out");
  if (strategy != PAX_LATE_MATERIALIZE && strategy != PAX_FULL_SCAN_THEN_FILTER) {
    return set_error(PAX_INVALID_CONFIG, "unknown strategy");
  }
  return guarded([&] {
    auto res = paxlab::run_query(*r->reader, predicate_of(r, predicate_json),
                                 projection_of(r, columns, n),
                                 static_cast<paxlab::MaterializationStrategy>(strategy));
    fill(counters, res.counters);
    *out = new pax_table{std::move(res.table)};
  });
}

uint64_t pax_bitvector_size(const pax_bitvector* bv) { return bv == nullptr ? 0 : bv->bits.size(); }

uint64_t pax_bitvector_count(const pax_bitvector* bv) {
  return bv == nullptr ? 0 : bv->bits.count();
}

int pax_bitvector_get(const pax_bitvector* bv, uint64_t i) {
  return bv != nullptr && i < bv->bits.size() && bv->bits.get(i) ? 1 : 0;
}

void pax_bitvector_free(pax_bitvector* bv) { delete bv; }

// ---- commands ----

pax_status pax_generate(const pax_generate_request* req, pax_generate_result* result) {
  PAX_REQUIRE(req != nullptr && result != nullptr && req->out_path != nullptr,
              "request, out_path and result");
  return guarded([&] {
    paxlab::RunConfig rc;
    if (req->config_json != nullptr) rc = paxlab::run_config_from_json(req->config_json);
    const uint64_t seed = req->has_seed ? req->seed : rc.seed.value_or(42);
    const std::string preset =
        req->preset != nullptr ? req->preset : rc.preset.value_or("parquet-like");
    auto cfg = paxlab::format_preset(preset);
    if (!cfg) paxlab::fail(ErrorCode::kInvalidConfig, "unknown preset '" + preset + "'");
    if (rc.layout) paxlab::apply_layout_overrides(*cfg, *rc.layout);
    if (rc.codec) cfg->codec = *rc.codec;
    if (req->codec != nullptr) cfg->codec = codec_of(req->codec);
    paxlab::validate(*cfg);

    paxlab::Table table;
    if (req->workload == nullptr && rc.column) {
      paxlab::ColumnConfig cc = *rc.column;
      if (req->has_rows) cc.rows = req->rows;
      if (req->has_seed) cc.seed = seed;
      table = table_for_column(cc);
    } else {
      const paxlab::WorkloadSpec spec =
          req->workload != nullptr ? workload_of(req->workload)
                                   : rc.workload.value_or(paxlab::workload_preset("core"));
      const uint64_t rows = req->has_rows ? req->rows : rc.rows.value_or(1000000);
      const uint64_t cols = req->has_cols ? req->cols : rc.cols.value_or(20);
      if (cols == 0) paxlab::fail(ErrorCode::kInvalidConfig, "cols must be positive");
      table = paxlab::generate_table(spec, rows, cols, seed);
    }

    const auto t0 = std::chrono::steady_clock::now();
    paxlab::FileSink sink(req->out_path);
    paxlab::write_table(table, *cfg, sink);
    sink.close();
    const auto t1 = std::chrono::steady_clock::now();
    result->file_bytes = sink.position();
    result->write_ns = static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    result->rows = table.row_count();
    result->cols = table.column_count();
  });
}

pax_status pax_analyze(const char* input_path, pax_csv_header header, char** csv) {
  PAX_REQUIRE(input_path != nullptr && csv != nullptr, "input_path and csv");
  return guarded([&] {
    const paxlab::Table t =
        paxlab::load_analyze_input(input_path, static_cast<paxlab::CsvHeader>(header));
    std::ostringstream out;
    paxlab::write_profiles_csv(paxlab::profile_table(t), out);
    *csv = dup_string(out.str());
  });
}

const char* pax_bench_csv_header(void) {
  static const std::string header = paxlab::bench_csv_header();
  return header.c_str();
}

pax_status pax_bench_options_create(const char* suite, pax_bench_options** out) {
  PAX_REQUIRE(suite != nullptr && out != nullptr, "suite and out");
  return guarded([&] {
    const auto& suites = paxlab::bench_suite_names();
    if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
      paxlab::fail(ErrorCode::kInvalidConfig, std::string("unknown suite '") + suite + "'");
    }
    auto o = std::make_unique<pax_bench_options>();
    o->opts.suite = suite;
    *out = o.release();
  });
}

void pax_bench_options_free(pax_bench_options* o) { delete o; }

pax_status pax_bench_apply_config(pax_bench_options* o, const char* config_json) {
  PAX_REQUIRE(o != nullptr && config_json != nullptr, "options and config");
  return guarded([&] {
    const paxlab::RunConfig rc = paxlab::run_config_from_json(config_json);
    if (rc.workload) o->opts.workload = rc.workload;
    if (rc.rows) o->opts.rows = rc.rows;
    if (rc.cols) o->opts.cols = rc.cols;
    if (rc.seed) o->opts.seed = *rc.seed;
    if (rc.preset) o->opts.presets = {*rc.preset};
    if (rc.codec) o->opts.codecs = {*rc.codec};
    if (rc.layout) o->opts.layout_json = rc.layout;
    if (rc.column) {
      paxlab::fail(ErrorCode::kInvalidConfig, "bench suites do not take a 'column' config");
    }
  });
}

pax_status pax_bench_add_preset(pax_bench_options* o, const char* preset) {
  PAX_REQUIRE(o != nullptr && preset != nullptr, "options and preset");
  return guarded([&] {
    if (!paxlab::format_preset(preset)) {
      paxlab::fail(ErrorCode::kInvalidConfig, std::string("unknown preset '") + preset + "'");
    }
    o->opts.presets.emplace_back(preset);
  });
}

pax_status pax_bench_add_codec(pax_bench_options* o, const char* codec) {
  PAX_REQUIRE(o != nullptr && codec != nullptr, "options and codec");
  return guarded([&] { o->opts.codecs.push_back(codec_of(codec)); });
}

pax_status pax_bench_clear_presets(pax_bench_options* o) {
  PAX_REQUIRE(o != nullptr, "options");
  o->opts.presets.clear();
  return PAX_OK;
}

pax_status pax_bench_clear_codecs(pax_bench_options* o) {
  PAX_REQUIRE(o != nullptr, "options");
  o->opts.codecs.clear();
  return PAX_OK;
}

pax_status pax_bench_set_seed(pax_bench_options* o, uint64_t seed) {
  PAX_REQUIRE(o != nullptr, "options");
  o->opts.seed = seed;
  return PAX_OK;
}

pax_status pax_bench_set_rows(pax_bench_options* o, uint64_t rows) {
  PAX_REQUIRE(o != nullptr, "options");
  o->opts.rows = rows;
  return PAX_OK;
}

pax_status pax_bench_set_cols(pax_bench_options* o, uint64_t cols) {
  PAX_REQUIRE(o != nullptr, "options");
  o->opts.cols = cols;
  return PAX_OK;
}

pax_status pax_bench_set_runs(pax_bench_options* o, unsigned runs) {
  PAX_REQUIRE(o != nullptr, "options");
  if (runs < 3) return set_error(PAX_INVALID_CONFIG, "runs must be at least 3");
  o->opts.runs = runs;
  return PAX_OK;
}

pax_status pax_bench_set_threads(pax_bench_options* o, unsigned threads) {
  PAX_REQUIRE(o != nullptr, "options");
  if (threads != 1) return set_error(PAX_INVALID_CONFIG, "only --threads 1 is supported");
  o->opts.threads = threads;
  return PAX_OK;
}

pax_status pax_bench_set_workload(pax_bench_options* o, const char* workload) {
  PAX_REQUIRE(o != nullptr && workload != nullptr, "options and workload");
  return guarded([&] { o->opts.workload = workload_of(workload); });
}

pax_status pax_bench_add_axis(pax_bench_options* o, const char* axis) {
  PAX_REQUIRE(o != nullptr && axis != nullptr, "options and axis");
  return guarded([&] {
    (void)paxlab::encode_sweep_grid(axis);
    o->opts.axes.emplace_back(axis);
  });
}

pax_status pax_bench_add_type(pax_bench_options* o, const char* type) {
  PAX_REQUIRE(o != nullptr && type != nullptr, "options and type");
  return guarded([&] {
    auto t = paxlab::parse_logical_type(type);
    if (!t) paxlab::fail(ErrorCode::kInvalidConfig, std::string("unknown type '") + type + "'");
    o->opts.types.push_back(*t);
  });
}

pax_status pax_bench_run(const pax_bench_options* o, pax_record_fn fn, void* user) {
  PAX_REQUIRE(o != nullptr && fn != nullptr, "options and callback");
  return guarded([&] {
    paxlab::run_bench(o->opts, [&](const paxlab::BenchRecord& r) {
      const std::string row = paxlab::bench_csv_row(r);
      fn(row.c_str(), user);
    });
  });
}

}  // extern "C"
