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

#ifndef PAXLAB_PAXLAB_H_
#define PAXLAB_PAXLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PAX_API __declspec(dllexport)
#else
#define PAX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status. On failure pax_last_error() describes it;
 * the text stays valid until the next failing call on the same thread.
 * Handles are not thread-safe; use one per thread. */
typedef enum pax_status {
  PAX_OK = 0,
  PAX_EMPTY_COLUMN = 1,
  PAX_NOT_ENOUGH_VALUES = 2,
  PAX_INVALID_CONFIG = 3,
  PAX_ENCODING_OVERFLOW = 4,
  PAX_BAD_MAGIC = 5,
  PAX_TRUNCATED_FILE = 6,
  PAX_UNSUPPORTED_VERSION = 7,
  PAX_INDEX_OUT_OF_RANGE = 8,
  PAX_INVALID_PROJECTION = 9,
  PAX_DECODE_ERROR = 10,
  PAX_TYPE_MISMATCH = 11,
  PAX_SCHEMA_MISMATCH = 12,
  PAX_INVALID_LEVELS = 13,
  PAX_IO_ERROR = 14,
  /* Null handle or output pointer. */
  PAX_INVALID_ARGUMENT = 100,
  PAX_INTERNAL = 101
} pax_status;

typedef enum pax_type {
  PAX_INT64 = 0,
  PAX_FLOAT64 = 1,
  PAX_STRING = 2,
  PAX_BOOL = 3
} pax_type;

typedef enum pax_csv_header {
  PAX_CSV_HEADER_AUTO = 0,
  PAX_CSV_HEADER_PRESENT = 1,
  PAX_CSV_HEADER_ABSENT = 2
} pax_csv_header;

typedef enum pax_strategy {
  PAX_LATE_MATERIALIZE = 0,
  PAX_FULL_SCAN_THEN_FILTER = 1
} pax_strategy;

typedef struct pax_table pax_table;
typedef struct pax_layout pax_layout;
typedef struct pax_reader pax_reader;
typedef struct pax_bitvector pax_bitvector;
typedef struct pax_bench_options pax_bench_options;

typedef struct pax_counters {
  uint64_t zones_skipped;
  uint64_t bloom_skipped;
  uint64_t pages_decoded;
  uint64_t rows_decoded;
  uint64_t bytes_read;
  uint64_t read_ops;
} pax_counters;

PAX_API const char* pax_version(void);
PAX_API const char* pax_status_name(pax_status status);
PAX_API const char* pax_last_error(void);
/* Frees strings returned through char** outputs. */
PAX_API void pax_string_free(char* s);

/* ---- tables ---- */

/* `workload` is a preset name ("core", "bi", ...) or a WorkloadSpec JSON
 * document. Columns are named c0..c{n-1}, zero padded. */
PAX_API pax_status pax_table_generate(const char* workload, uint64_t rows, uint64_t cols,
                                      uint64_t seed, pax_table** out);
/* One column named "c0" from a ColumnConfig JSON document. */
PAX_API pax_status pax_table_generate_column(const char* column_json, pax_table** out);
PAX_API pax_status pax_table_read_csv(const char* path, pax_csv_header header, pax_table** out);
PAX_API void pax_table_free(pax_table* t);

PAX_API uint64_t pax_table_num_rows(const pax_table* t);
PAX_API uint64_t pax_table_num_columns(const pax_table* t);
PAX_API pax_status pax_table_column_name(const pax_table* t, uint64_t col, const char** name);
PAX_API pax_status pax_table_column_type(const pax_table* t, uint64_t col, pax_type* type);
/* *is_null is set for every accessor; the value is untouched for nulls. */
PAX_API pax_status pax_table_get_int64(const pax_table* t, uint64_t col, uint64_t row,
                                       int64_t* value, int* is_null);
PAX_API pax_status pax_table_get_float64(const pax_table* t, uint64_t col, uint64_t row,
                                         double* value, int* is_null);
/* The bytes stay valid while the table lives. Not NUL terminated. */
PAX_API pax_status pax_table_get_string(const pax_table* t, uint64_t col, uint64_t row,
                                        const char** data, size_t* len, int* is_null);
PAX_API pax_status pax_table_get_bool(const pax_table* t, uint64_t col, uint64_t row,
                                      int* value, int* is_null);
/* Null slots compare equal; floats compare by bit pattern. */
PAX_API pax_status pax_table_equal(const pax_table* a, const pax_table* b, int* equal);

/* ---- layouts ---- */

/* "parquet-like", "orc-like" or "plain". */
PAX_API pax_status pax_layout_create(const char* preset, pax_layout** out);
PAX_API void pax_layout_free(pax_layout* layout);
/* "none" or "lz". */
PAX_API pax_status pax_layout_set_codec(pax_layout* layout, const char* codec);
/* Overrides from a layout JSON document (docs/config-schema.md). */
PAX_API pax_status pax_layout_apply_json(pax_layout* layout, const char* json);
PAX_API pax_status pax_layout_to_json(const pax_layout* layout, char** json);

/* ---- files ---- */

/* `file_bytes` and `write_ns` may be NULL. */
PAX_API pax_status pax_write_file(const pax_table* t, const pax_layout* layout, const char* path,
                                  uint64_t* file_bytes, uint64_t* write_ns);

PAX_API pax_status pax_reader_open(const char* path, pax_reader** out);
/* Copies `len` bytes of an in-memory file. */
PAX_API pax_status pax_reader_open_memory(const void* data, size_t len, pax_reader** out);
PAX_API void pax_reader_free(pax_reader* r);

PAX_API uint64_t pax_reader_num_rows(const pax_reader* r);
PAX_API uint64_t pax_reader_num_columns(const pax_reader* r);
PAX_API uint64_t pax_reader_num_row_groups(const pax_reader* r);
/* The name is owned by the reader. */
PAX_API pax_status pax_reader_column_name(pax_reader* r, uint64_t col, const char** name);
PAX_API pax_status pax_reader_column_type(const pax_reader* r, uint64_t col, pax_type* type);
/* Total I/O since open. */
PAX_API pax_status pax_reader_io(const pax_reader* r, uint64_t* read_ops, uint64_t* bytes_read);

/* `columns` may be NULL with n == 0 for every column. */
PAX_API pax_status pax_reader_scan(pax_reader* r, const char* const* columns, size_t n,
                                   pax_table** out);

/* Predicates are JSON: {"column": "x", "op": "eq", "value": 5} or
 * {"column": "x", "op": "range", "lo": 1.5, "hi": 2.5} (inclusive). The
 * literal must match the column type; integers are accepted for Float64
 * columns. `counters` may be NULL. */
PAX_API pax_status pax_reader_select(pax_reader* r, const char* predicate_json,
                                     pax_bitvector** out, pax_counters* counters);
PAX_API pax_status pax_reader_project(pax_reader* r, const pax_bitvector* bv,
                                      const char* const* columns, size_t n, pax_table** out,
                                      pax_counters* counters);
PAX_API pax_status pax_reader_estimate_selectivity(pax_reader* r, const char* predicate_json,
                                                   double* estimate);
PAX_API pax_status pax_reader_query(pax_reader* r, const char* predicate_json,
                                    const char* const* columns, size_t n, pax_strategy strategy,
                                    pax_table** out, pax_counters* counters);

PAX_API uint64_t pax_bitvector_size(const pax_bitvector* bv);
PAX_API uint64_t pax_bitvector_count(const pax_bitvector* bv);
PAX_API int pax_bitvector_get(const pax_bitvector* bv, uint64_t i);
PAX_API void pax_bitvector_free(pax_bitvector* bv);

/* ---- commands ---- */

typedef struct pax_generate_request {
  /* NULL fields and zero has_* flags fall back to config_json, then to the
   * defaults: core, 1000000 rows, 20 cols, seed 42, parquet-like, none. */
  const char* workload;
  int has_rows;
  uint64_t rows;
  int has_cols;
  uint64_t cols;
  int has_seed;
  uint64_t seed;
  const char* preset;
  const char* codec;
  /* A run config document, see docs/config-schema.md. */
  const char* config_json;
  const char* out_path;
} pax_generate_request;

typedef struct pax_generate_result {
  uint64_t file_bytes;
  uint64_t write_ns;
  uint64_t rows;
  uint64_t cols;
} pax_generate_result;

PAX_API pax_status pax_generate(const pax_generate_request* req, pax_generate_result* result);

/* Per-column profile CSV of a .paxb or CSV file. */
PAX_API pax_status pax_analyze(const char* input_path, pax_csv_header header, char** csv);

PAX_API const char* pax_bench_csv_header(void);
PAX_API pax_status pax_bench_options_create(const char* suite, pax_bench_options** out);
PAX_API void pax_bench_options_free(pax_bench_options* o);
/* Applies a run config document: workload, rows, cols, seed, preset,
 * codec and layout. Later setters override it. */
PAX_API pax_status pax_bench_apply_config(pax_bench_options* o, const char* config_json);
PAX_API pax_status pax_bench_add_preset(pax_bench_options* o, const char* preset);
PAX_API pax_status pax_bench_add_codec(pax_bench_options* o, const char* codec);
PAX_API pax_status pax_bench_clear_presets(pax_bench_options* o);
PAX_API pax_status pax_bench_clear_codecs(pax_bench_options* o);
PAX_API pax_status pax_bench_set_seed(pax_bench_options* o, uint64_t seed);
PAX_API pax_status pax_bench_set_rows(pax_bench_options* o, uint64_t rows);
PAX_API pax_status pax_bench_set_cols(pax_bench_options* o, uint64_t cols);
PAX_API pax_status pax_bench_set_runs(pax_bench_options* o, unsigned runs);
PAX_API pax_status pax_bench_set_threads(pax_bench_options* o, unsigned threads);
PAX_API pax_status pax_bench_set_workload(pax_bench_options* o, const char* workload);
/* encode-sweep filters. */
PAX_API pax_status pax_bench_add_axis(pax_bench_options* o, const char* axis);
PAX_API pax_status pax_bench_add_type(pax_bench_options* o, const char* type);

/* Receives one CSV row (no trailing newline) per record. */
typedef void (*pax_record_fn)(const char* csv_row, void* user);
PAX_API pax_status pax_bench_run(const pax_bench_options* o, pax_record_fn fn, void* user);

#ifdef __cplusplus
}
#endif

#endif /* PAXLAB_PAXLAB_H_ */
