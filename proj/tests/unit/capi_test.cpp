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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "paxlab/paxlab.h"

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("paxlab_capi_" + name)).string();
}

struct TableGuard {
  pax_table* t = nullptr;
  ~TableGuard() { pax_table_free(t); }
};

TEST(CApi, VersionAndStatusNames) {
  EXPECT_NE(std::string(pax_version()), "");
  EXPECT_STREQ(pax_status_name(PAX_OK), "OK");
  EXPECT_STREQ(pax_status_name(PAX_BAD_MAGIC), "BadMagic");
  EXPECT_STREQ(pax_status_name(PAX_INVALID_ARGUMENT), "InvalidArgument");
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(pax_table_generate("core", 10, 2, 1, nullptr), PAX_INVALID_ARGUMENT);
  EXPECT_NE(std::string(pax_last_error()), "");
  pax_table* t = nullptr;
  EXPECT_EQ(pax_table_generate(nullptr, 10, 2, 1, &t), PAX_INVALID_ARGUMENT);
  EXPECT_EQ(t, nullptr);
  EXPECT_EQ(pax_reader_open(nullptr, nullptr), PAX_INVALID_ARGUMENT);
  EXPECT_EQ(pax_generate(nullptr, nullptr), PAX_INVALID_ARGUMENT);
  pax_table_free(nullptr);
  pax_reader_free(nullptr);
  pax_layout_free(nullptr);
  pax_bitvector_free(nullptr);
}

TEST(CApi, ErrorCodesMapThrough) {
  pax_table* t = nullptr;
  EXPECT_EQ(pax_table_generate("oltp", 10, 2, 1, &t), PAX_INVALID_CONFIG);
  EXPECT_NE(std::string(pax_last_error()).find("oltp"), std::string::npos);
  pax_reader* r = nullptr;
  const char junk[] = "NOPE-NOT-A-PAX-FILE-AT-ALL";
  EXPECT_EQ(pax_reader_open_memory(junk, sizeof(junk), &r), PAX_BAD_MAGIC);
  EXPECT_EQ(pax_reader_open("/nonexistent/x.paxb", &r), PAX_IO_ERROR);
  pax_layout* l = nullptr;
  EXPECT_EQ(pax_layout_create("arrow", &l), PAX_INVALID_CONFIG);
}

TEST(CApi, WriteReadScanRoundTrip) {
  TableGuard src;
  ASSERT_EQ(pax_table_generate("bi", 5000, 6, 7, &src.t), PAX_OK);
  EXPECT_EQ(pax_table_num_rows(src.t), 5000u);
  EXPECT_EQ(pax_table_num_columns(src.t), 6u);
  const char* name = nullptr;
  ASSERT_EQ(pax_table_column_name(src.t, 0, &name), PAX_OK);
  EXPECT_STREQ(name, "c0");
  EXPECT_EQ(pax_table_column_name(src.t, 6, &name), PAX_INDEX_OUT_OF_RANGE);

  for (const char* preset : {"parquet-like", "orc-like", "plain"}) {
    pax_layout* layout = nullptr;
    ASSERT_EQ(pax_layout_create(preset, &layout), PAX_OK);
    ASSERT_EQ(pax_layout_set_codec(layout, "lz"), PAX_OK);
    ASSERT_EQ(pax_layout_apply_json(layout, R"({"page_rows": 700})"), PAX_OK);
    char* json = nullptr;
    ASSERT_EQ(pax_layout_to_json(layout, &json), PAX_OK);
    EXPECT_NE(std::string(json).find("\"page_rows\": 700"), std::string::npos) << json;
    pax_string_free(json);

    const std::string path = temp_path("rt.paxb");
    uint64_t bytes = 0;
    ASSERT_EQ(pax_write_file(src.t, layout, path.c_str(), &bytes, nullptr), PAX_OK);
    pax_layout_free(layout);
    EXPECT_EQ(bytes, std::filesystem::file_size(path));

    pax_reader* r = nullptr;
    ASSERT_EQ(pax_reader_open(path.c_str(), &r), PAX_OK);
    EXPECT_EQ(pax_reader_num_rows(r), 5000u);
    EXPECT_EQ(pax_reader_num_columns(r), 6u);
    TableGuard back;
    ASSERT_EQ(pax_reader_scan(r, nullptr, 0, &back.t), PAX_OK);
    int equal = 0;
    ASSERT_EQ(pax_table_equal(src.t, back.t, &equal), PAX_OK);
    EXPECT_EQ(equal, 1) << preset;
    uint64_t ops = 0, read = 0;
    ASSERT_EQ(pax_reader_io(r, &ops, &read), PAX_OK);
    EXPECT_GT(ops, 0u);
    EXPECT_LE(read, bytes);

    const char* cols[] = {"c9"};
    TableGuard bad;
    EXPECT_EQ(pax_reader_scan(r, cols, 1, &bad.t), PAX_INVALID_PROJECTION);
    pax_reader_free(r);
    std::filesystem::remove(path);
  }
}

TEST(CApi, SelectProjectAndQueryAgree) {
  TableGuard src;
  ASSERT_EQ(pax_table_generate_column(
                R"({"type": "int64", "rows": 20000, "ndv_ratio": 0.05, "null_ratio": 0.1, "seed": 3})", &src.t),
            PAX_OK);
  pax_layout* layout = nullptr;
  ASSERT_EQ(pax_layout_create("parquet-like", &layout), PAX_OK);
  const std::string path = temp_path("sel.paxb");
  ASSERT_EQ(pax_write_file(src.t, layout, path.c_str(), nullptr, nullptr), PAX_OK);
  pax_layout_free(layout);
  pax_reader* r = nullptr;
  ASSERT_EQ(pax_reader_open(path.c_str(), &r), PAX_OK);

  int64_t key = 0;
  int is_null = 1;
  for (uint64_t row = 0; is_null; ++row) ASSERT_EQ(pax_table_get_int64(src.t, 0, row, &key, &is_null), PAX_OK);
  uint64_t expected = 0;
  for (uint64_t row = 0; row < 20000; ++row) {
    int64_t v = 0;
    int n = 0;
    ASSERT_EQ(pax_table_get_int64(src.t, 0, row, &v, &n), PAX_OK);
    expected += !n && v == key;
  }

  const std::string pred = R"({"column": "c0", "op": "eq", "value": )" + std::to_string(key) + "}";
  pax_bitvector* bv = nullptr;
  pax_counters counters{};
  ASSERT_EQ(pax_reader_select(r, pred.c_str(), &bv, &counters), PAX_OK);
  EXPECT_EQ(pax_bitvector_size(bv), 20000u);
  EXPECT_EQ(pax_bitvector_count(bv), expected);
  EXPECT_GT(counters.pages_decoded, 0u);

  const char* cols[] = {"c0"};
  TableGuard projected;
  ASSERT_EQ(pax_reader_project(r, bv, cols, 1, &projected.t, nullptr), PAX_OK);
  EXPECT_EQ(pax_table_num_rows(projected.t), expected);
  pax_bitvector_free(bv);

  for (pax_strategy s : {PAX_LATE_MATERIALIZE, PAX_FULL_SCAN_THEN_FILTER}) {
    TableGuard q;
    ASSERT_EQ(pax_reader_query(r, pred.c_str(), cols, 1, s, &q.t, nullptr), PAX_OK);
    int equal = 0;
    ASSERT_EQ(pax_table_equal(q.t, projected.t, &equal), PAX_OK);
    EXPECT_EQ(equal, 1);
  }

  double est = 0;
  ASSERT_EQ(pax_reader_estimate_selectivity(r, pred.c_str(), &est), PAX_OK);
  EXPECT_GE(est, double(expected) / 20000 - 1e-12);

  pax_bitvector* none = nullptr;
  EXPECT_EQ(pax_reader_select(r, R"({"column": "c0", "op": "eq", "value": "x"})", &none, nullptr),
            PAX_TYPE_MISMATCH);
  EXPECT_EQ(pax_reader_select(r, R"({"column": "c0", "op": "like"})", &none, nullptr), PAX_INVALID_CONFIG);
  EXPECT_EQ(pax_reader_select(r, "not json", &none, nullptr), PAX_INVALID_CONFIG);
  pax_reader_free(r);
  std::filesystem::remove(path);
}

TEST(CApi, GenerateAndAnalyze) {
  const std::string path = temp_path("gen.paxb");
  pax_generate_request req{};
  req.workload = "log";
  req.has_rows = 1;
  req.rows = 3000;
  req.has_cols = 1;
  req.cols = 5;
  req.preset = "orc-like";
  req.out_path = path.c_str();
  pax_generate_result res{};
  ASSERT_EQ(pax_generate(&req, &res), PAX_OK);
  EXPECT_EQ(res.rows, 3000u);
  EXPECT_EQ(res.cols, 5u);
  EXPECT_EQ(res.file_bytes, std::filesystem::file_size(path));

  char* csv = nullptr;
  ASSERT_EQ(pax_analyze(path.c_str(), PAX_CSV_HEADER_AUTO, &csv), PAX_OK);
  const std::string text(csv);
  pax_string_free(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
  EXPECT_EQ(text.rfind("column,type,rows,", 0), 0u);
  std::filesystem::remove(path);

  req.out_path = "/nonexistent/dir/x.paxb";
  EXPECT_EQ(pax_generate(&req, &res), PAX_IO_ERROR);
  req.out_path = path.c_str();
  req.config_json = R"({"rows": "many"})";
  EXPECT_EQ(pax_generate(&req, &res), PAX_INVALID_CONFIG);
}

TEST(CApi, ReadCsvAccessors) {
  const std::string path = temp_path("in.csv");
  std::ofstream(path) << "i,f,s,b\n1,2.5,x,true\n,,,\n";
  TableGuard t;
  ASSERT_EQ(pax_table_read_csv(path.c_str(), PAX_CSV_HEADER_PRESENT, &t.t), PAX_OK);
  std::filesystem::remove(path);
  ASSERT_EQ(pax_table_num_columns(t.t), 4u);
  pax_type type{};
  ASSERT_EQ(pax_table_column_type(t.t, 1, &type), PAX_OK);
  EXPECT_EQ(type, PAX_FLOAT64);
  double f = 0;
  int n = 1;
  ASSERT_EQ(pax_table_get_float64(t.t, 1, 0, &f, &n), PAX_OK);
  EXPECT_EQ(n, 0);
  EXPECT_DOUBLE_EQ(f, 2.5);
  const char* data = nullptr;
  size_t len = 0;
  ASSERT_EQ(pax_table_get_string(t.t, 2, 0, &data, &len, &n), PAX_OK);
  EXPECT_EQ(std::string(data, len), "x");
  ASSERT_EQ(pax_table_get_string(t.t, 2, 1, &data, &len, &n), PAX_OK);
  EXPECT_EQ(n, 1);
  int64_t i = 0;
  EXPECT_EQ(pax_table_get_int64(t.t, 1, 0, &i, &n), PAX_TYPE_MISMATCH);
  EXPECT_EQ(pax_table_get_int64(t.t, 0, 2, &i, &n), PAX_INDEX_OUT_OF_RANGE);
}

void collect(const char* row, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(row); }

TEST(CApi, BenchRunStreamsRows) {
  pax_bench_options* o = nullptr;
  ASSERT_EQ(pax_bench_options_create("scan", &o), PAX_OK);
  ASSERT_EQ(pax_bench_set_rows(o, 2000), PAX_OK);
  ASSERT_EQ(pax_bench_set_cols(o, 3), PAX_OK);
  ASSERT_EQ(pax_bench_clear_presets(o), PAX_OK);
  ASSERT_EQ(pax_bench_add_preset(o, "plain"), PAX_OK);
  ASSERT_EQ(pax_bench_clear_codecs(o), PAX_OK);
  ASSERT_EQ(pax_bench_add_codec(o, "none"), PAX_OK);
  std::vector<std::string> rows;
  ASSERT_EQ(pax_bench_run(o, collect, &rows), PAX_OK);
  ASSERT_EQ(rows.size(), 1u);
  const std::string header = pax_bench_csv_header();
  EXPECT_EQ(std::count(rows[0].begin(), rows[0].end(), ','), std::count(header.begin(), header.end(), ','));
  EXPECT_EQ(rows[0].rfind("core,codec,none,plain,", 0), 0u) << rows[0];

  EXPECT_EQ(pax_bench_set_threads(o, 4), PAX_INVALID_CONFIG);
  EXPECT_EQ(pax_bench_set_runs(o, 1), PAX_INVALID_CONFIG);
  EXPECT_EQ(pax_bench_add_preset(o, "arrow"), PAX_INVALID_CONFIG);
  EXPECT_EQ(pax_bench_run(o, nullptr, nullptr), PAX_INVALID_ARGUMENT);
  pax_bench_options_free(o);
  EXPECT_EQ(pax_bench_options_create("tpch", &o), PAX_INVALID_CONFIG);
}

}  // namespace
