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

// Acceptance run: one PASS/FAIL line per criterion. Optional arguments pick
// criteria by number, e.g. `acceptance 2 7`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "paxlab/bench.hpp"
#include "paxlab/config.hpp"
#include "paxlab/encoders.hpp"
#include "paxlab/filters.hpp"
#include "paxlab/nested.hpp"
#include "paxlab/pax_file.hpp"
#include "paxlab/predicate.hpp"
#include "paxlab/scan.hpp"
#include "paxlab/stats.hpp"
#include "paxlab/status.hpp"
#include "paxlab/workload.hpp"

namespace {

using namespace paxlab;

constexpr uint64_t kSeed = 42;

// Collects failed checks and a few numbers worth printing.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string str(uint64_t v) { return std::to_string(v); }

uint64_t file_size(const Table& t, const FileLayoutConfig& cfg) { return write_table_to_bytes(t, cfg).size(); }

Table single(const std::string& name, ColumnVector col) {
  Table t(col.size());
  t.add_column(name, std::move(col));
  return t;
}

FileLayoutConfig preset(const std::string& name, CodecId codec = CodecId::None) {
  return bench_layout(name, codec, std::nullopt);
}

// ---- 1: round trip ----

void round_trip(Verdict& v) {
  const std::vector<uint64_t> row_counts = {0, 1, 10000, 1000000};
  const std::vector<EncodingPolicy> policies = {EncodingPolicy::parquet_like(), EncodingPolicy::orc_like(),
                                                EncodingPolicy::plain_only()};
  size_t cases = 0;
  for (const auto& workload : preset_workload_names()) {
    for (uint64_t rows : row_counts) {
      const size_t cols = rows >= 1000000 ? 3 : 20;
      const Table table = generate_table(workload_preset(workload), rows, cols, kSeed + rows);
      std::vector<std::string> names;
      for (size_t c = 0; c < table.column_count(); ++c) names.push_back(table.name(c));
      for (const auto& p : format_preset_names()) {
        for (const auto& policy : policies) {
          for (CodecId codec : {CodecId::None, CodecId::Lz}) {
            FileLayoutConfig cfg = preset(p, codec);
            cfg.encoding_policy = policy;
            auto bytes = write_table_to_bytes(table, cfg);
            PaxReader reader(std::make_shared<MemorySource>(std::move(bytes)));
            const bool same = reader.scan(names) == table;
            v.check(same, workload + " rows=" + str(rows) + " " + p + "/" + policy_style_name(policy.style) + "/" +
                              codec_name(codec));
            ++cases;
          }
        }
      }
    }
  }
  v.note(str(cases) + " cases");
}

// ---- 2: encoding trends ----

std::map<std::string, uint64_t> sweep_sizes(LogicalType type, const std::string& axis, const std::string& layout) {
  std::map<std::string, uint64_t> out;
  for (const auto& value : encode_sweep_grid(axis)) {
    const Table t = single("c0", generate_column(encode_sweep_column(type, axis, value, 1000000, kSeed)));
    out[value] = file_size(t, preset(layout));
  }
  return out;
}

// First grid point whose size is at most 97% of the size at s = 0.
double zipf_onset(const std::map<std::string, uint64_t>& sizes) {
  std::vector<std::pair<double, uint64_t>> pts;
  for (const auto& [k, bytes] : sizes) pts.emplace_back(std::stod(k), bytes);
  std::sort(pts.begin(), pts.end());
  for (const auto& [s, bytes] : pts) {
    if (static_cast<double>(bytes) <= 0.97 * static_cast<double>(pts.front().second)) return s;
  }
  return INFINITY;
}

void encoding_trends(Verdict& v) {
  {
    const auto pq = sweep_sizes(LogicalType::Int64, "value_range", "parquet-like");
    const auto orc = sweep_sizes(LogicalType::Int64, "value_range", "orc-like");
    const auto [lo, hi] = std::minmax_element(pq.begin(), pq.end(),
                                              [](const auto& a, const auto& b) { return a.second < b.second; });
    const double spread = static_cast<double>(hi->second - lo->second) / static_cast<double>(lo->second);
    v.check(spread < 0.05, "(a) parquet-like value-range spread " + fmt("%.3f", spread));
    v.check(orc.at("small") < orc.at("medium") && orc.at("medium") < orc.at("large"),
            "(a) orc-like sizes " + str(orc.at("small")) + "/" + str(orc.at("medium")) + "/" + str(orc.at("large")));
    v.note("(a) pq spread " + fmt("%.4f", spread) + ", orc " + str(orc.at("small")) + "<" + str(orc.at("medium")) +
           "<" + str(orc.at("large")));
  }
  {
    const auto pq = sweep_sizes(LogicalType::Int64, "sortedness", "parquet-like");
    const auto orc = sweep_sizes(LogicalType::Int64, "sortedness", "orc-like");
    size_t points = 0;
    for (const auto& [k, bytes] : orc) {
      if (std::stod(k) < 0.9) continue;
      ++points;
      v.check(bytes < pq.at(k), "(b) sortedness " + k + ": orc " + str(bytes) + " vs parquet " + str(pq.at(k)));
    }
    v.check(points > 0, "(b) no sortedness point >= 0.9");
  }
  {
    const auto pq = sweep_sizes(LogicalType::Float64, "ndv_ratio", "parquet-like");
    const auto orc = sweep_sizes(LogicalType::Float64, "ndv_ratio", "orc-like");
    size_t points = 0;
    for (const auto& [k, bytes] : pq) {
      if (std::stod(k) > 0.01) continue;
      ++points;
      v.check(bytes < orc.at(k), "(c) float ndv " + k + ": parquet " + str(bytes) + " vs orc " + str(orc.at(k)));
    }
    v.check(points > 0, "(c) no ndv point <= 0.01");
  }
  {
    const double pq = zipf_onset(sweep_sizes(LogicalType::Int64, "zipf_s", "parquet-like"));
    const double orc = zipf_onset(sweep_sizes(LogicalType::Int64, "zipf_s", "orc-like"));
    v.check(orc < pq, "(d) zipf onset orc " + fmt("%g", orc) + " vs parquet " + fmt("%g", pq));
    v.note("(d) onset orc s=" + fmt("%g", orc) + " parquet s=" + fmt("%g", pq));
  }
}

// ---- 3: encoder tags ----

void encoder_tags(Verdict& v) {
  const auto eight = rle_bp_runs(rle_bp_encode(std::vector<uint64_t>(8, 5), 3, 8));
  v.check(eight.size() == 1 && eight[0].rle && eight[0].length == 8, "8-run is not one RLE run");
  const auto seven = rle_bp_runs(rle_bp_encode(std::vector<uint64_t>(7, 5), 3, 8));
  v.check(seven.size() == 1 && !seven[0].rle, "7-run is not bitpacked");

  auto only = [](const std::vector<int64_t>& values) {
    const auto runs = orc_runs(orc_encode(values));
    return runs.size() == 1 ? std::optional<OrcRun>(runs[0]) : std::nullopt;
  };
  for (size_t n = 3; n <= 10; ++n) {
    const auto r = only(std::vector<int64_t>(n, 7));
    v.check(r && r->tag == OrcTag::ShortRepeat, str(n) + "-run is not SHORT_REPEAT");
  }
  std::vector<int64_t> mono;
  for (int i = 0; i < 512; ++i) mono.push_back(100 + 3 * i);
  const auto delta = only(mono);
  v.check(delta && delta->tag == OrcTag::Delta, "512 monotonic is not DELTA");
  std::vector<int64_t> outlier;
  for (int i = 0; i < 100; ++i) outlier.push_back(i % 16);
  outlier[50] = 1000000;
  const auto patched = only(outlier);
  v.check(patched && patched->tag == OrcTag::PatchedBase && patched->patches == 1,
          "engineered outlier is not PATCHED_BASE with one patch");
}

// ---- 4: page zone maps ----

void selection_pruning(Verdict& v) {
  constexpr uint64_t kRows = 10000000;
  const Table table = single("x", generate_column(select_suite_column(kRows, kSeed)));
  FileLayoutConfig paged = preset("parquet-like");
  paged.page_rows = 10000;
  FileLayoutConfig grouped = paged;
  grouped.zone_maps.page = false;
  PaxReader with_pages(std::make_shared<MemorySource>(write_table_to_bytes(table, paged)));
  PaxReader groups_only(std::make_shared<MemorySource>(write_table_to_bytes(table, grouped)));
  for (uint64_t run = 0; run < 3; ++run) {
    const PredicateSpec pred = generate_predicates(table, 1e-6, 1, kSeed + run).at(0);
    const Bitmap truth = evaluate_predicate(table.column(0), pred);
    const auto a = select(with_pages, pred);
    const auto b = select(groups_only, pred);
    v.check(a.bits == truth && b.bits == truth, "run " + str(run) + ": bitvector differs from brute force");
    v.check(a.counters.pages_decoded < b.counters.pages_decoded,
            "run " + str(run) + ": pages_decoded " + str(a.counters.pages_decoded) + " vs " +
                str(b.counters.pages_decoded));
    if (run == 0) {
      v.note("matches " + str(truth.count()) + ", pages " + str(a.counters.pages_decoded) + " vs " +
             str(b.counters.pages_decoded));
    }
  }
}

// ---- 5: bloom granularity ----

// False-positive rate over every filter in the file, probing keys absent
// from the column.
double measured_fpp(PaxReader& reader, BloomGranularity gran, const std::vector<int64_t>& probes) {
  uint64_t trials = 0, hits = 0;
  const auto& footer = reader.footer();
  auto probe = [&](const SplitBlockBloomFilter& f) {
    for (int64_t k : probes) hits += f.query(key_digest(k));
    trials += probes.size();
  };
  for (size_t g = 0; g < footer.num_row_groups(); ++g) {
    if (gran == BloomGranularity::ColumnChunk) {
      if (auto f = reader.chunk_bloom(g, 0)) probe(*f);
      continue;
    }
    const size_t pages = reader.page_index(g, 0).pages.size();
    for (size_t p = 0; p < pages; ++p) {
      if (auto f = reader.page_bloom(g, 0, p)) probe(*f);
    }
  }
  return trials == 0 ? -1.0 : static_cast<double>(hits) / static_cast<double>(trials);
}

void bloom_filters(Verdict& v) {
  constexpr uint64_t kRows = 10000000;
  const Table table = single("k", generate_column(bloom_suite_column(kRows, kSeed)));
  FileLayoutConfig base = preset("parquet-like");
  base.page_rows = 10000;
  const auto key = pick_bloom_key(table.column(0), base.row_group_rows, 30);
  if (!key) {
    v.check(false, "no key with at most 30 matches");
    return;
  }
  const PredicateSpec pred = PredicateSpec::eq("k", *key);

  std::unordered_set<int64_t> present(table.column(0).ints().begin(), table.column(0).ints().end());
  std::vector<int64_t> probes;
  Rng rng(kSeed);
  const auto [lo, hi] = std::minmax_element(table.column(0).ints().begin(), table.column(0).ints().end());
  while (probes.size() < 400) {
    const int64_t k = *lo + static_cast<int64_t>(rng.below(static_cast<uint64_t>(*hi - *lo) + 1));
    if (!present.count(k)) probes.push_back(k);
  }

  std::map<std::pair<BloomGranularity, double>, uint64_t> pages;
  for (BloomGranularity gran : {BloomGranularity::Page, BloomGranularity::ColumnChunk}) {
    for (double fpp : {0.3, 0.05, 0.01}) {
      FileLayoutConfig cfg = base;
      cfg.bloom = {true, fpp, gran};
      PaxReader reader(std::make_shared<MemorySource>(write_table_to_bytes(table, cfg)));
      const auto res = select(reader, pred);
      v.check(res.bits == evaluate_predicate(table.column(0), pred), "bitvector differs from brute force");
      pages[{gran, fpp}] = res.counters.pages_decoded;
      const double measured = measured_fpp(reader, gran, probes);
      v.check(measured >= 0.5 * fpp && measured <= 2.0 * fpp,
              std::string(bloom_granularity_name(gran)) + " fpp " + fmt("%g", fpp) + " measured " +
                  fmt("%.4f", measured));
      v.note(std::string(bloom_granularity_name(gran)) + "@" + fmt("%g", fpp) + ": pages " +
             str(res.counters.pages_decoded) + ", fpp " + fmt("%.4f", measured));
    }
  }
  const uint64_t page_hi = pages[{BloomGranularity::Page, 0.3}];
  const uint64_t page_lo = pages[{BloomGranularity::Page, 0.01}];
  v.check(page_lo < page_hi, "page granularity pages " + str(page_lo) + " vs " + str(page_hi));
  const double chunk_hi = static_cast<double>(pages[{BloomGranularity::ColumnChunk, 0.3}]);
  const double chunk_lo = static_cast<double>(pages[{BloomGranularity::ColumnChunk, 0.01}]);
  const double change = std::abs(chunk_hi - chunk_lo) / chunk_hi;
  v.check(change <= 0.05, "column-chunk change " + fmt("%.3f", change));
}

// ---- 6: wide-table metadata ----

void wide_table_metadata(Verdict& v) {
  BenchOptions o;
  o.suite = "projection";
  o.runs = 7;
  o.presets = {"parquet-like"};
  std::map<std::pair<std::string, uint64_t>, uint64_t> ns;
  for (const auto& r : run_bench(o)) ns[{r.sweep_param, std::stoull(r.param_value)}] = r.scan_ns;
  const double fast = static_cast<double>(ns[{"width", 4000}]) / static_cast<double>(std::max<uint64_t>(ns[{"width", 10}], 1));
  const double slow = static_cast<double>(ns[{"width-sequential", 4000}]) /
                      static_cast<double>(std::max<uint64_t>(ns[{"width-sequential", 10}], 1));
  v.check(fast < 2.0, "indexed growth " + fmt("%.2f", fast) + "x");
  v.check(slow > 10.0, "sequential growth " + fmt("%.1f", slow) + "x");
  v.note("indexed " + fmt("%.2f", fast) + "x, sequential " + fmt("%.0f", slow) + "x");
}

// ---- 7: nested ----

void nested_models(Verdict& v) {
  int64_t prev = std::numeric_limits<int64_t>::min();
  std::ostringstream gaps;
  for (size_t d = 1; d <= 8; ++d) {
    const NestedSchema s = recursive_schema(d);
    const auto recs = generate_recursive_records(d, 20000, kSeed + d);
    const auto dremel = shred_dremel(recs, s);
    const auto lp = shred_length_presence(recs, s);
    v.check(assemble_dremel(dremel, s) == recs, "dremel round trip at depth " + str(d));
    v.check(assemble_length_presence(lp, s) == recs, "length-presence round trip at depth " + str(d));
    const auto gap = static_cast<int64_t>(encoded_size(dremel).total()) - static_cast<int64_t>(encoded_size(lp).total());
    v.check(gap > prev, "size gap not increasing at depth " + str(d));
    prev = gap;
    gaps << (d > 1 ? " " : "") << gap;
    const size_t nd = count_physical_columns(s, NestedModel::Dremel);
    const size_t nlp = count_physical_columns(s, NestedModel::LengthPresence);
    v.check(nd == s.leaf_count() && nlp == nd + 2 * (d - 1) && (d == 1 || nlp > nd),
            "column counts at depth " + str(d) + ": " + str(nd) + " vs " + str(nlp));
  }
  v.note("dremel - lp bytes: " + gaps.str());
}

// ---- 8: block compression ----

void block_compression(Verdict& v) {
  ColumnConfig c;
  c.logical_type = LogicalType::Float64;
  c.rows = 1000000;
  c.ndv_ratio = 0.01;
  c.null_ratio = 0.09;
  c.value_range = ValueRangeSpec::of(RangeClass::Medium);
  c.sortedness_target = 0.54;
  c.zipf_s = 0.0;
  c.seed = kSeed;
  const Table table = single("f", generate_column(c));
  for (const std::string p : {"orc-like", "parquet-like"}) {
    const auto plain = measure_write_scan(table, preset(p, CodecId::None), 5);
    const auto lz = measure_write_scan(table, preset(p, CodecId::Lz), 5);
    const double change = 1.0 - static_cast<double>(lz.file_bytes) / static_cast<double>(plain.file_bytes);
    if (p == "orc-like") {
      v.check(change >= 0.20, "orc-like shrink " + fmt("%.3f", change));
    } else {
      v.check(std::abs(change) < 0.10, "parquet-like change " + fmt("%.3f", change));
    }
    v.check(lz.scan_ns > plain.scan_ns, p + " decode with codec " + str(lz.scan_ns) + " ns vs " + str(plain.scan_ns));
    v.note(p + " " + fmt("%.1f%%", 100 * change));
  }
}

// ---- 9: generator fidelity ----

uint64_t capacity(LogicalType type, RangeClass cls) {
  const uint64_t ints = cls == RangeClass::Small ? 1ull << 12 : cls == RangeClass::Medium ? 1ull << 20 : 1ull << 40;
  return type == LogicalType::Float64 ? ints * 100 : ints;
}

void generator_fidelity(Verdict& v) {
  Rng rng(kSeed);
  for (int i = 0; i < 50; ++i) {
    ColumnConfig c;
    c.logical_type = static_cast<LogicalType>(rng.below(4));
    c.rows = 5000 + rng.below(45000);
    c.null_ratio = rng.uniform() * 0.5;
    c.zipf_s = rng.uniform() * 3.0;
    c.seed = rng.next();
    c.value_range = ValueRangeSpec::of(static_cast<RangeClass>(rng.below(3)));
    const double present = 1.0 - c.null_ratio;
    c.ndv_ratio = std::exp(std::log(1e-3) + rng.uniform() * (std::log(present) - std::log(1e-3)));
    if (c.logical_type == LogicalType::Bool) c.ndv_ratio = 2.0 / static_cast<double>(c.rows);
    if (c.logical_type != LogicalType::Utf8String) {
      while (c.ndv_ratio * static_cast<double>(c.rows) > static_cast<double>(capacity(c.logical_type, c.value_range.cls))) {
        c.value_range.cls = static_cast<RangeClass>(static_cast<int>(c.value_range.cls) + 1);
      }
    }
    const double floor = sortedness_floor(c);
    c.sortedness_target = floor + rng.uniform() * (1.0 - floor);
    const ColumnVector col = generate_column(c);
    const std::string tag = "config " + std::to_string(i) + " (" + logical_type_name(c.logical_type) + ")";
    v.check(std::abs(compute_ndv_ratio(col) - c.ndv_ratio) / c.ndv_ratio <= 0.10, tag + " ndv");
    v.check(std::abs(compute_sortedness(col) - c.sortedness_target) <= 0.05, tag + " sortedness");
    v.check(std::abs(compute_null_ratio(col) - c.null_ratio) <= 0.01, tag + " nulls");
  }

  constexpr size_t kCols = 100;
  for (const auto& name : preset_workload_names()) {
    const WorkloadSpec spec = workload_preset(name);
    const Table t = generate_table(spec, 50000, kCols, kSeed);
    std::array<size_t, 4> types{};
    double ndv = 0, nulls = 0, sorted = 0, zipf = 0;
    for (size_t c = 0; c < t.column_count(); ++c) {
      const auto& col = t.column(c);
      ++types[static_cast<size_t>(col.type())];
      ndv += compute_ndv_ratio(col);
      nulls += compute_null_ratio(col);
      sorted += compute_sortedness(col);
      zipf += compute_stats(col).fitted_zipf_s;
    }
    for (size_t k = 0; k < 4; ++k) {
      const double want = spec.type_mix[k] * kCols;
      v.check(std::abs(static_cast<double>(types[k]) - want) <= 1.0,
              name + " type " + str(k) + " count " + str(types[k]) + " vs " + fmt("%.1f", want));
    }
    auto within = [&](const char* what, double sum, double target) {
      const double mean = sum / kCols;
      v.check(std::abs(mean - target) <= 0.15 * target + 1e-12,
              name + " " + what + " mean " + fmt("%.3f", mean) + " vs " + fmt("%.2f", target));
    };
    within("ndv_ratio", ndv, spec.levels.ndv_ratio);
    within("null_ratio", nulls, spec.levels.null_ratio);
    within("sortedness", sorted, spec.levels.sortedness);
    within("zipf_s", zipf, spec.levels.zipf_s);
  }
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Verdict&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "round-trip soundness", 300, round_trip},
      {2, "encoding trends", 600, encoding_trends},
      {3, "encoder rule conformance", 1, encoder_tags},
      {4, "selection pruning", 300, selection_pruning},
      {5, "bloom filter granularity", 300, bloom_filters},
      {6, "wide-table metadata", 180, wide_table_metadata},
      {7, "nested models", 180, nested_models},
      {8, "block compression trade-off", 180, block_compression},
      {9, "generator fidelity", 180, generator_fidelity},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 1 && secs > c.budget_s) v.check(false, "took " + fmt("%.0f", secs) + " s");
    std::string detail;
    for (const auto& n : v.notes()) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s criterion %d %s (%.1f s)%s%s\n", v.passed() ? "PASS" : "FAIL", c.id, c.name, secs,
                detail.empty() ? "" : ": ", detail.c_str());
    for (const auto& f : v.failures()) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    failed += !v.passed();
  }
  return failed == 0 ? 0 : 1;
}
