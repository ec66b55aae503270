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

#include "paxlab/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstring>
#include <memory>
#include <sstream>

#include "paxlab/analyze.hpp"
#include "paxlab/config.hpp"
#include "paxlab/nested.hpp"
#include "paxlab/scan.hpp"
#include "paxlab/status.hpp"

namespace paxlab {

const std::vector<std::string>& bench_suite_names() {
  static const std::vector<std::string> names = {"encode-sweep", "scan",       "select",
                                                 "bloom",        "projection", "nested"};
  return names;
}

std::string bench_csv_header() {
  return "workload,sweep_param,param_value,preset,codec,file_bytes,write_ns,scan_ns,select_ns,"
         "selectivity,zones_skipped,pages_decoded,bytes_read,read_ops,seed,rows_decoded";
}

std::string bench_csv_row(const BenchRecord& r) {
  std::ostringstream out;
  out << csv_escape(r.workload) << ',' << csv_escape(r.sweep_param) << ','
      << csv_escape(r.param_value) << ',' << csv_escape(r.preset) << ',' << csv_escape(r.codec)
      << ',' << r.file_bytes << ',' << r.write_ns << ',' << r.scan_ns << ',' << r.select_ns << ','
      << format_double(r.selectivity) << ',' << r.zones_skipped << ',' << r.pages_decoded << ','
      << r.bytes_read << ',' << r.read_ops << ',' << r.seed << ',' << r.rows_decoded;
  return out.str();
}

FileLayoutConfig bench_layout(std::string_view preset, CodecId codec,
                              const std::optional<std::string>& layout_json) {
  auto cfg = format_preset(preset);
  if (!cfg) fail(ErrorCode::kInvalidConfig, "unknown preset '" + std::string(preset) + "'");
  cfg->codec = codec;
  if (layout_json) apply_layout_overrides(*cfg, *layout_json);
  return *cfg;
}

uint64_t median_ns(unsigned runs, const std::function<void()>& fn) {
  std::vector<uint64_t> times;
  times.reserve(runs);
  for (unsigned i = 0; i < runs; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
  }
  std::sort(times.begin(), times.end());
  return times.empty() ? 0 : times[times.size() / 2];
}

QueryCounters decode_all_pages(PaxReader& reader) {
  static thread_local std::vector<uint64_t> buffer;
  const FooterView& f = reader.footer();
  QueryCounters q;
  for (size_t g = 0; g < f.num_row_groups(); ++g) {
    for (size_t c = 0; c < f.num_columns(); ++c) {
      const PageIndex& index = reader.page_index(g, c);
      for (size_t p = 0; p < index.pages.size(); ++p) {
        const ColumnVector v = reader.read_page(g, c, p);
        if (buffer.size() < v.size()) buffer.resize(v.size());
        std::visit(
            [&](const auto& values) {
              using T = typename std::decay_t<decltype(values)>::value_type;
              for (size_t i = 0; i < values.size(); ++i) {
                if constexpr (std::is_same_v<T, std::string>) {
                  buffer[i] = values[i].size();
                } else if constexpr (std::is_same_v<T, double>) {
                  buffer[i] = std::bit_cast<uint64_t>(values[i]);
                } else {
                  buffer[i] = static_cast<uint64_t>(values[i]);
                }
              }
            },
            v.values());
        q.rows_decoded += v.size();
        ++q.pages_decoded;
      }
    }
  }
  return q;
}

SizeMeasurement measure_write_scan(const Table& table, const FileLayoutConfig& cfg,
                                   unsigned runs) {
  SizeMeasurement m;
  std::vector<uint8_t> bytes;
  m.write_ns = median_ns(runs, [&] { bytes = write_table_to_bytes(table, cfg); });
  m.file_bytes = bytes.size();
  PaxReader reader(std::make_shared<MemorySource>(std::move(bytes)));
  m.scan_ns = median_ns(runs, [&] {
    reader.clear_cache();
    decode_all_pages(reader);
  });
  reader.clear_cache();
  reader.source().reset_stats();
  m.scan = decode_all_pages(reader);
  m.scan.bytes_read = reader.stats().bytes_read;
  m.scan.read_ops = reader.stats().read_ops;
  return m;
}

// ---- encode-sweep ----

const std::vector<std::string>& encode_sweep_axes() {
  static const std::vector<std::string> axes = {"ndv_ratio", "zipf_s", "sortedness",
                                                "value_range"};
  return axes;
}

std::vector<std::string> encode_sweep_grid(std::string_view axis) {
  if (axis == "ndv_ratio") return {"0.0001", "0.001", "0.01", "0.1", "0.5", "1"};
  if (axis == "zipf_s") return {"0", "0.25", "0.5", "0.75", "1", "1.5", "2", "2.5", "3"};
  if (axis == "sortedness") return {"0", "0.25", "0.5", "0.75", "0.9", "0.95", "1"};
  if (axis == "value_range") return {"small", "medium", "large"};
  fail(ErrorCode::kInvalidConfig, "unknown sweep axis '" + std::string(axis) + "'");
}

ColumnConfig encode_sweep_column(LogicalType type, std::string_view axis, std::string_view value,
                                 uint64_t rows, uint64_t seed) {
  const PropertyLevels core = workload_preset("core").levels;
  ColumnConfig c;
  c.logical_type = type;
  c.rows = rows;
  c.ndv_ratio = core.ndv_ratio;
  c.null_ratio = core.null_ratio;
  c.value_range = ValueRangeSpec::of(core.value_range);
  c.sortedness_target = core.sortedness;
  c.zipf_s = core.zipf_s;
  c.seed = seed;
  if (axis == "value_range") {
    auto cls = parse_range_class(value);
    if (!cls) fail(ErrorCode::kInvalidConfig, "unknown range class '" + std::string(value) + "'");
    c.value_range = ValueRangeSpec::of(*cls);
    // The small integer domain holds 4096 values; keep every class feasible.
    if (type == LogicalType::Int64 && rows > 0) {
      c.ndv_ratio = std::min(c.ndv_ratio, 4000.0 / static_cast<double>(rows));
    }
  } else {
    double v = 0.0;
    std::istringstream in{std::string(value)};
    if (!(in >> v)) fail(ErrorCode::kInvalidConfig, "bad sweep value '" + std::string(value) + "'");
    if (axis == "ndv_ratio") {
      // 1.0 means every present value distinct.
      c.ndv_ratio = std::min(v, 1.0 - c.null_ratio);
    } else if (axis == "zipf_s") {
      c.zipf_s = v;
    } else if (axis == "sortedness") {
      c.sortedness_target = v;
    } else {
      fail(ErrorCode::kInvalidConfig, "unknown sweep axis '" + std::string(axis) + "'");
    }
  }
  validate(c);
  return c;
}

namespace {

std::vector<std::string> presets_or_default(const BenchOptions& o) {
  if (!o.presets.empty()) return o.presets;
  return {"parquet-like", "orc-like"};
}

std::vector<CodecId> codecs_or_default(const BenchOptions& o, std::vector<CodecId> fallback) {
  return o.codecs.empty() ? fallback : o.codecs;
}

BenchRecord base_record(const BenchOptions& o, std::string workload, std::string param,
                        std::string value, const std::string& preset, CodecId codec) {
  BenchRecord r;
  r.workload = std::move(workload);
  r.sweep_param = std::move(param);
  r.param_value = std::move(value);
  r.preset = preset;
  r.codec = codec_name(codec);
  r.seed = o.seed;
  return r;
}

void fill_counters(BenchRecord& r, const QueryCounters& q) {
  r.zones_skipped = q.zones_skipped;
  r.pages_decoded = q.pages_decoded;
  r.bytes_read = q.bytes_read;
  r.read_ops = q.read_ops;
  r.rows_decoded = q.rows_decoded;
}

void run_encode_sweep(const BenchOptions& o, const RecordSink& sink) {
  const uint64_t rows = o.rows.value_or(1000000);
  std::vector<LogicalType> types = o.types;
  if (types.empty()) types = {LogicalType::Int64, LogicalType::Float64, LogicalType::Utf8String};
  std::vector<std::string> axes = o.axes;
  if (axes.empty()) axes = encode_sweep_axes();
  const auto presets = presets_or_default(o);
  const auto codecs = codecs_or_default(o, {CodecId::None});
  for (LogicalType type : types) {
    for (const auto& axis : axes) {
      for (const auto& value : encode_sweep_grid(axis)) {
        // Same seed along an axis so points differ only in the swept property.
        const uint64_t seed = splitmix64(o.seed ^ (static_cast<uint64_t>(type) + 1));
        Table table(rows);
        table.add_column("v", generate_column(encode_sweep_column(type, axis, value, rows, seed)));
        for (const auto& preset : presets) {
          for (CodecId codec : codecs) {
            const auto cfg = bench_layout(preset, codec, o.layout_json);
            const SizeMeasurement m = measure_write_scan(table, cfg, o.runs);
            BenchRecord r = base_record(o, logical_type_name(type), axis, value, preset, codec);
            r.file_bytes = m.file_bytes;
            r.write_ns = m.write_ns;
            r.scan_ns = m.scan_ns;
            fill_counters(r, m.scan);
            sink(r);
          }
        }
      }
    }
  }
}

void run_scan_suite(const BenchOptions& o, const RecordSink& sink) {
  const WorkloadSpec spec = o.workload.value_or(workload_preset("core"));
  const uint64_t rows = o.rows.value_or(1000000);
  const uint64_t cols = o.cols.value_or(20);
  const Table table = generate_table(spec, rows, cols, o.seed);
  for (const auto& preset : presets_or_default(o)) {
    for (CodecId codec : codecs_or_default(o, {CodecId::None, CodecId::Lz})) {
      const auto cfg = bench_layout(preset, codec, o.layout_json);
      const SizeMeasurement m = measure_write_scan(table, cfg, o.runs);
      BenchRecord r = base_record(o, spec.name, "codec", codec_name(codec), preset, codec);
      r.file_bytes = m.file_bytes;
      r.write_ns = m.write_ns;
      r.scan_ns = m.scan_ns;
      fill_counters(r, m.scan);
      sink(r);
    }
  }
}

void run_select_suite(const BenchOptions& o, const RecordSink& sink) {
  const uint64_t rows = o.rows.value_or(10000000);
  Table table(rows);
  table.add_column("x", generate_column(select_suite_column(rows, o.seed)));
  const std::vector<double> targets = {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
  std::vector<PredicateSpec> preds;
  for (size_t i = 0; i < targets.size(); ++i) {
    preds.push_back(generate_predicates(table, targets[i], 1, o.seed + i).at(0));
  }
  for (const auto& preset : presets_or_default(o)) {
    for (CodecId codec : codecs_or_default(o, {CodecId::None})) {
      const auto cfg = bench_layout(preset, codec, o.layout_json);
      auto bytes = write_table_to_bytes(table, cfg);
      const uint64_t file_bytes = bytes.size();
      PaxReader reader(std::make_shared<MemorySource>(std::move(bytes)));
      for (size_t i = 0; i < preds.size(); ++i) {
        SelectionResult res;
        const uint64_t ns = median_ns(o.runs, [&] { res = select(reader, preds[i]); });
        BenchRecord r = base_record(o, "clustered-float", "selectivity",
                                    format_double(targets[i]), preset, codec);
        r.file_bytes = file_bytes;
        r.select_ns = ns;
        r.selectivity = rows == 0 ? 0.0 : static_cast<double>(res.popcount) / rows;
        fill_counters(r, res.counters);
        sink(r);
      }
    }
  }
}

void run_bloom_suite(const BenchOptions& o, const RecordSink& sink) {
  const uint64_t rows = o.rows.value_or(10000000);
  Table table(rows);
  table.add_column("k", generate_column(bloom_suite_column(rows, o.seed)));
  const std::vector<double> fpps = {0.3, 0.05, 0.01};
  for (const auto& preset : presets_or_default(o)) {
    for (CodecId codec : codecs_or_default(o, {CodecId::None})) {
      for (BloomGranularity gran : {BloomGranularity::ColumnChunk, BloomGranularity::Page}) {
        for (double fpp : fpps) {
          auto cfg = bench_layout(preset, codec, o.layout_json);
          cfg.bloom = {true, fpp, gran};
          const uint64_t group_rows =
              cfg.row_group_mode == RowGroupMode::FixedRows ? cfg.row_group_rows : rows;
          const auto plan = plan_row_groups(table, cfg);
          const uint64_t first_group = plan.empty() ? group_rows : plan.front();
          const auto key = pick_bloom_key(table.column(0), std::max<uint64_t>(first_group, 1), 30);
          if (!key) fail(ErrorCode::kInvalidConfig, "bloom suite found no qualifying key");
          const PredicateSpec pred = PredicateSpec::eq("k", *key);
          auto bytes = write_table_to_bytes(table, cfg);
          const uint64_t file_bytes = bytes.size();
          PaxReader reader(std::make_shared<MemorySource>(std::move(bytes)));
          SelectionResult res;
          const uint64_t ns = median_ns(o.runs, [&] { res = select(reader, pred); });
          BenchRecord r = base_record(o, "uniform-int",
                                      std::string("fpp@") + bloom_granularity_name(gran),
                                      format_double(fpp), preset, codec);
          r.file_bytes = file_bytes;
          r.select_ns = ns;
          r.selectivity = static_cast<double>(res.popcount) / static_cast<double>(rows);
          fill_counters(r, res.counters);
          sink(r);
        }
      }
    }
  }
}

void run_projection_suite(const BenchOptions& o, const RecordSink& sink) {
  const uint64_t rows = o.rows.value_or(1000);
  const std::vector<size_t> widths = {10, 100, 1000, 4000};
  constexpr size_t kProjected = 10;
  constexpr int kBatch = 20;
  for (size_t width : widths) {
    Table table(rows);
    for (size_t c = 0; c < width; ++c) {
      ColumnConfig cc;
      cc.logical_type = LogicalType::Int64;
      cc.rows = rows;
      cc.ndv_ratio = 0.5;
      cc.seed = splitmix64(o.seed + c);
      table.add_column("c" + std::to_string(c), generate_column(cc));
    }
    std::vector<std::string> projected;
    for (size_t i = 0; i < kProjected; ++i) projected.push_back("c" + std::to_string(i));
    for (const auto& preset : presets_or_default(o)) {
      for (CodecId codec : codecs_or_default(o, {CodecId::None})) {
        const auto cfg = bench_layout(preset, codec, o.layout_json);
        MemorySource source(write_table_to_bytes(table, cfg));
        const std::vector<uint8_t> footer = read_footer_bytes(source);
        uint64_t sink_value = 0;
        // Each footer copy is made just before its timed resolve, as if just
        // read, and the view is dropped after the clock stops.
        std::vector<uint64_t> fast_times, slow_times;
        for (unsigned run = 0; run < o.runs; ++run) {
          for (int i = 0; i < kBatch; ++i) {
            std::vector<uint8_t> copy = footer;
            std::optional<FooterView> view;
            const auto t0 = std::chrono::steady_clock::now();
            view.emplace(std::move(copy));
            for (const auto& name : projected) {
              const size_t c = *view->find_column(name);
              for (size_t g = 0; g < view->num_row_groups(); ++g) {
                sink_value += view->column_meta(g, c).offset;
              }
            }
            fast_times.push_back(static_cast<uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count()));
          }
          slow_times.push_back(median_ns(1, [&] {
            for (int i = 0; i < kBatch; ++i) {
              const FileFooter parsed = parse_footer(footer);
              for (const auto& name : projected) {
                const size_t c = *parsed.find_column(name);
                for (const auto& group : parsed.chunks) sink_value += group[c].offset;
              }
            }
          }));
        }
        std::sort(fast_times.begin(), fast_times.end());
        std::sort(slow_times.begin(), slow_times.end());
        for (int variant = 0; variant < 2; ++variant) {
          BenchRecord r = base_record(o, "int-table", variant == 0 ? "width" : "width-sequential",
                                      std::to_string(width), preset, codec);
          r.file_bytes = source.size();
          r.scan_ns = variant == 0 ? fast_times[fast_times.size() / 2] : slow_times[o.runs / 2] / kBatch;
          r.bytes_read = footer.size();
          sink(r);
        }
        if (sink_value == 1) sink_value = 0;
      }
    }
  }
}

void run_nested_suite(const BenchOptions& o, const RecordSink& sink) {
  const uint64_t records = o.rows.value_or(100000);
  for (size_t depth = 1; depth <= 8; ++depth) {
    const NestedSchema schema = recursive_schema(depth);
    const auto recs = generate_recursive_records(depth, records, o.seed);
    for (NestedModel model : {NestedModel::Dremel, NestedModel::LengthPresence}) {
      uint64_t bytes = 0;
      uint64_t write_ns = 0, scan_ns = 0;
      if (model == NestedModel::Dremel) {
        ShreddedDremel s;
        write_ns = median_ns(o.runs, [&] {
          s = shred_dremel(recs, schema);
          bytes = encoded_size(s).total();
        });
        scan_ns = median_ns(o.runs, [&] { (void)assemble_dremel(s, schema); });
      } else {
        ShreddedLengthPresence s;
        write_ns = median_ns(o.runs, [&] {
          s = shred_length_presence(recs, schema);
          bytes = encoded_size(s).total();
        });
        scan_ns = median_ns(o.runs, [&] { (void)assemble_length_presence(s, schema); });
      }
      BenchRecord r = base_record(o, "recursive", "depth", std::to_string(depth),
                                  nested_model_name(model), CodecId::None);
      r.file_bytes = bytes;
      r.write_ns = write_ns;
      r.scan_ns = scan_ns;
      sink(r);
    }
  }
}

}  // namespace

ColumnConfig select_suite_column(uint64_t rows, uint64_t seed) {
  ColumnConfig c;
  c.logical_type = LogicalType::Float64;
  c.rows = rows;
  c.ndv_ratio = 0.12;
  c.null_ratio = 0.09;
  c.value_range = ValueRangeSpec::of(RangeClass::Medium);
  c.sortedness_target = 1.0;
  c.zipf_s = 1.12;
  c.seed = seed;
  c.clustered = true;
  return c;
}

ColumnConfig bloom_suite_column(uint64_t rows, uint64_t seed) {
  ColumnConfig c;
  c.logical_type = LogicalType::Int64;
  c.rows = rows;
  c.ndv_ratio = 1.0 / 25.0;
  c.null_ratio = 0.0;
  c.value_range = ValueRangeSpec::of(RangeClass::Large);
  c.sortedness_target = 0.0;
  c.zipf_s = 0.0;
  c.seed = seed;
  return c;
}

std::optional<int64_t> pick_bloom_key(const ColumnVector& col, uint64_t row_group_rows,
                                      uint64_t max_matches) {
  if (col.type() != LogicalType::Int64 || col.present_count() == 0 || row_group_rows == 0) {
    return std::nullopt;
  }
  const auto& v = col.ints();
  const size_t groups = (v.size() + row_group_rows - 1) / row_group_rows;
  // (value, row group) pairs sorted by value.
  std::vector<std::pair<int64_t, uint32_t>> seen;
  seen.reserve(col.present_count());
  for (size_t i = 0; i < v.size(); ++i) {
    if (col.is_valid(i)) seen.emplace_back(v[i], static_cast<uint32_t>(i / row_group_rows));
  }
  std::sort(seen.begin(), seen.end());
  const int64_t mid = seen.front().first / 2 + seen.back().first / 2;
  auto it = std::lower_bound(seen.begin(), seen.end(), std::make_pair(mid, uint32_t{0}));
  while (it != seen.end()) {
    auto end = it;
    std::vector<bool> groups_hit(groups, false);
    size_t distinct_groups = 0;
    while (end != seen.end() && end->first == it->first) {
      if (!groups_hit[end->second]) {
        groups_hit[end->second] = true;
        ++distinct_groups;
      }
      ++end;
    }
    if (static_cast<uint64_t>(end - it) <= max_matches && distinct_groups == groups) {
      return it->first;
    }
    it = end;
  }
  return std::nullopt;
}

void run_bench(const BenchOptions& o, const RecordSink& sink) {
  if (o.rows && *o.rows == 0) fail(ErrorCode::kInvalidConfig, "bench rows must be positive");
  if (o.cols && *o.cols == 0) fail(ErrorCode::kInvalidConfig, "bench cols must be positive");
  if (o.runs < 3) fail(ErrorCode::kInvalidConfig, "runs must be at least 3");
  if (o.threads != 1) fail(ErrorCode::kInvalidConfig, "only --threads 1 is supported");
  for (const auto& p : o.presets) (void)bench_layout(p, CodecId::None, o.layout_json);
  for (const auto& a : o.axes) (void)encode_sweep_grid(a);
  if (o.suite == "encode-sweep") return run_encode_sweep(o, sink);
  if (o.suite == "scan") return run_scan_suite(o, sink);
  if (o.suite == "select") return run_select_suite(o, sink);
  if (o.suite == "bloom") return run_bloom_suite(o, sink);
  if (o.suite == "projection") return run_projection_suite(o, sink);
  if (o.suite == "nested") return run_nested_suite(o, sink);
  fail(ErrorCode::kInvalidConfig, "unknown suite '" + o.suite + "'");
}

std::vector<BenchRecord> run_bench(const BenchOptions& o) {
  std::vector<BenchRecord> out;
  run_bench(o, [&](const BenchRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace paxlab
