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

#include "paxlab/scan.hpp"

#include <cmath>

#include "paxlab/filters.hpp"
#include "paxlab/status.hpp"

namespace paxlab {

QueryCounters& QueryCounters::operator+=(const QueryCounters& o) {
  zones_skipped += o.zones_skipped;
  bloom_skipped += o.bloom_skipped;
  pages_decoded += o.pages_decoded;
  rows_decoded += o.rows_decoded;
  bytes_read += o.bytes_read;
  read_ops += o.read_ops;
  return *this;
}

const char* strategy_name(MaterializationStrategy s) {
  return s == MaterializationStrategy::LateMaterialize ? "late-materialize" : "full-scan-then-filter";
}

namespace {

class IoDelta {
 public:
  explicit IoDelta(PaxReader& r) : r_(r), start_(r.stats()) {}
  void finish(QueryCounters& c) const {
    c.bytes_read = r_.stats().bytes_read - start_.bytes_read;
    c.read_ops = r_.stats().read_ops - start_.read_ops;
  }

 private:
  PaxReader& r_;
  IoStats start_;
};

size_t predicate_column(const PaxReader& reader, const PredicateSpec& pred) {
  auto c = reader.footer().find_column(pred.column);
  if (!c) fail(ErrorCode::kInvalidProjection, "no column named '" + pred.column + "'");
  const LogicalType type = reader.footer().column(*c).type;
  if (pred.literal_type() != type ||
      (pred.op == PredicateOp::RangeInclusive && scalar_type(pred.hi) != type)) {
    fail(ErrorCode::kTypeMismatch, std::string("predicate literal is not ") + logical_type_name(type));
  }
  return *c;
}

bool zone_skips(const std::optional<ZoneMap>& z, const PredicateSpec& pred) {
  return z && zone_prune(*z, pred) == PruneDecision::Skip;
}

}  // namespace

SelectionResult select(PaxReader& reader, const PredicateSpec& pred) {
  const size_t c = predicate_column(reader, pred);
  reader.clear_cache();
  IoDelta io(reader);
  const FooterView& f = reader.footer();
  SelectionResult out;
  out.bits = Bitmap(f.total_rows());
  const bool eq = pred.op == PredicateOp::Eq;
  const uint64_t key = eq ? key_digest(pred.lo) : 0;

  if (zone_skips(f.file_zone(c), pred)) {
    out.counters.zones_skipped += 1;
    io.finish(out.counters);
    return out;
  }
  for (size_t g = 0; g < f.num_row_groups(); ++g) {
    const ColumnChunkMeta meta = f.column_meta(g, c);
    if (zone_skips(meta.zone, pred)) {
      out.counters.zones_skipped += 1;
      continue;
    }
    if (eq && meta.bloom_length > 0 && !reader.chunk_bloom(g, c)->query(key)) {
      out.counters.bloom_skipped += 1;
      continue;
    }
    const uint64_t base = f.row_group(g).first_row;
    const PageIndex& index = reader.page_index(g, c);
    for (size_t p = 0; p < index.pages.size(); ++p) {
      const PageEntry& e = index.pages[p];
      if (zone_skips(e.zone, pred)) {
        out.counters.zones_skipped += 1;
        continue;
      }
      if (eq && e.bloom_length > 0 && !reader.page_bloom(g, c, p)->query(key)) {
        out.counters.bloom_skipped += 1;
        continue;
      }
      const ColumnVector page = reader.read_page(g, c, p);
      out.counters.pages_decoded += 1;
      out.counters.rows_decoded += page.size();
      const Bitmap hits = evaluate_predicate(page, pred);
      for (size_t i = 0; i < hits.size(); ++i) {
        if (hits.get(i)) out.bits.set(base + e.first_row + i, true);
      }
    }
  }
  out.popcount = out.bits.count();
  io.finish(out.counters);
  return out;
}

ProjectionResult project_with_bitvector(PaxReader& reader, const Bitmap& bv,
                                        const std::vector<std::string>& projection) {
  const FooterView& f = reader.footer();
  if (bv.size() != f.total_rows()) {
    fail(ErrorCode::kIndexOutOfRange, "bitvector has " + std::to_string(bv.size()) +
                                          " bits, file has " + std::to_string(f.total_rows()) +
                                          " rows");
  }
  const auto cols = reader.resolve_projection(projection);
  reader.clear_cache();
  IoDelta io(reader);
  ProjectionResult out;
  const size_t selected = bv.count();
  out.table = Table(selected);
  for (size_t i = 0; i < cols.size(); ++i) {
    const size_t c = cols[i];
    ColumnVector col(f.column(c).type);
    col.reserve(selected);
    for (size_t g = 0; g < f.num_row_groups(); ++g) {
      const RowGroupMeta rg = f.row_group(g);
      if (bv.count_range(rg.first_row, rg.first_row + rg.rows) == 0) continue;
      const PageIndex& index = reader.page_index(g, c);
      for (size_t p = 0; p < index.pages.size(); ++p) {
        const PageEntry& e = index.pages[p];
        const uint64_t begin = rg.first_row + e.first_row;
        if (bv.count_range(begin, begin + e.rows) == 0) continue;
        const ColumnVector page = reader.read_page(g, c, p);
        out.counters.pages_decoded += 1;
        out.counters.rows_decoded += page.size();
        col.append_all(page.filter(bv.slice(begin, begin + e.rows)));
      }
    }
    out.table.add_column(projection[i], std::move(col));
  }
  io.finish(out.counters);
  return out;
}

MaterializationStrategy choose_strategy(double selectivity_estimate, const ScanConfig& cfg) {
  if (!(selectivity_estimate >= 0.0 && selectivity_estimate <= 1.0)) {
    fail(ErrorCode::kInvalidConfig, "selectivity estimate must be in [0, 1]");
  }
  return selectivity_estimate <= cfg.late_materialize_threshold
             ? MaterializationStrategy::LateMaterialize
             : MaterializationStrategy::FullScanThenFilter;
}

double estimate_selectivity(PaxReader& reader, const PredicateSpec& pred) {
  const size_t c = predicate_column(reader, pred);
  const FooterView& f = reader.footer();
  if (f.total_rows() == 0 || zone_skips(f.file_zone(c), pred)) return 0.0;
  uint64_t rows = 0;
  for (size_t g = 0; g < f.num_row_groups(); ++g) {
    const ColumnChunkMeta meta = f.column_meta(g, c);
    if (zone_skips(meta.zone, pred)) continue;
    if (!f.zone_maps().page) {
      rows += meta.rows;
      continue;
    }
    for (const PageEntry& e : reader.page_index(g, c).pages) {
      if (!zone_skips(e.zone, pred)) rows += e.rows;
    }
  }
  return static_cast<double>(rows) / static_cast<double>(f.total_rows());
}

QueryResult run_query(PaxReader& reader, const PredicateSpec& pred,
                      const std::vector<std::string>& projection, MaterializationStrategy strategy) {
  QueryResult out;
  out.strategy = strategy;
  if (strategy == MaterializationStrategy::LateMaterialize) {
    SelectionResult sel = select(reader, pred);
    ProjectionResult proj = project_with_bitvector(reader, sel.bits, projection);
    out.matches = sel.popcount;
    out.counters = sel.counters;
    out.counters += proj.counters;
    out.table = std::move(proj.table);
    return out;
  }
  const size_t c = predicate_column(reader, pred);
  reader.clear_cache();
  IoDelta io(reader);
  const FooterView& f = reader.footer();
  const auto cols = reader.resolve_projection(projection);
  auto read_all = [&](size_t col) {
    ColumnVector v(f.column(col).type);
    v.reserve(f.total_rows());
    for (size_t g = 0; g < f.num_row_groups(); ++g) {
      for (size_t p = 0; p < reader.page_index(g, col).pages.size(); ++p) {
        ColumnVector page = reader.read_page(g, col, p);
        out.counters.pages_decoded += 1;
        out.counters.rows_decoded += page.size();
        v.append_all(page);
      }
    }
    return v;
  };
  const Bitmap bits = evaluate_predicate(read_all(c), pred);
  out.matches = bits.count();
  out.table = Table(out.matches);
  for (size_t i = 0; i < cols.size(); ++i) {
    out.table.add_column(projection[i], read_all(cols[i]).filter(bits));
  }
  io.finish(out.counters);
  return out;
}

}  // namespace paxlab
