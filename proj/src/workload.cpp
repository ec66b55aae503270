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

#include "paxlab/workload.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include "paxlab/stats.hpp"
#include "paxlab/status.hpp"

namespace paxlab {

uint64_t Rng::below(uint64_t n) {
  if (n == 0) fail(ErrorCode::kInvalidConfig, "Rng::below(0)");
  // Lemire's nearly-divisionless rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < n) {
    const uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * n;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

double Rng::normal(double mean, double stddev) {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ZipfSampler::ZipfSampler(uint64_t distinct, double s) {
  if (distinct == 0) fail(ErrorCode::kInvalidConfig, "zipf needs at least one distinct value");
  if (!(s >= 0.0)) fail(ErrorCode::kInvalidConfig, "zipf exponent must be >= 0");
  cdf_.resize(distinct);
  double total = 0.0;
  for (uint64_t k = 0; k < distinct; ++k) {
    total += std::pow(static_cast<double>(k + 1), -s);
    cdf_[k] = total;
  }
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

uint64_t ZipfSampler::sample(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = static_cast<uint64_t>(it - cdf_.begin());
  return std::min<uint64_t>(idx, cdf_.size() - 1) + 1;
}

double ZipfSampler::probability(uint64_t rank) const {
  if (rank == 0 || rank > cdf_.size()) return 0.0;
  return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

uint64_t sample_zipf(uint64_t distinct, double s, Rng& rng) {
  return ZipfSampler(distinct, s).sample(rng);
}

const char* range_class_name(RangeClass cls) {
  switch (cls) {
    case RangeClass::Small: return "small";
    case RangeClass::Medium: return "medium";
    case RangeClass::Large: return "large";
  }
  return "unknown";
}

std::optional<RangeClass> parse_range_class(std::string_view name) {
  if (name == "small") return RangeClass::Small;
  if (name == "medium") return RangeClass::Medium;
  if (name == "large") return RangeClass::Large;
  return std::nullopt;
}

const char* selectivity_level_name(SelectivityLevel level) {
  switch (level) {
    case SelectivityLevel::Low: return "low";
    case SelectivityLevel::Mid: return "mid";
    case SelectivityLevel::High: return "high";
  }
  return "unknown";
}

std::optional<SelectivityLevel> parse_selectivity_level(std::string_view name) {
  if (name == "low") return SelectivityLevel::Low;
  if (name == "mid") return SelectivityLevel::Mid;
  if (name == "high") return SelectivityLevel::High;
  return std::nullopt;
}

double selectivity_for_level(SelectivityLevel level) {
  switch (level) {
    case SelectivityLevel::Low: return 1e-5;
    case SelectivityLevel::Mid: return 1e-3;
    case SelectivityLevel::High: return 0.1;
  }
  return 1e-3;
}

namespace {

struct PresetRow {
  const char* name;
  std::array<double, 4> mix;  // Integer, Float, String, Bool
  PropertyLevels levels;
  SelectivityLevel selectivity;
};

const std::vector<PresetRow>& preset_rows() {
  static const std::vector<PresetRow> rows = {
      {"core", {0.37, 0.21, 0.41, 0.003}, {0.12, 0.09, RangeClass::Medium, 0.54, 1.12},
       SelectivityLevel::Mid},
      {"bi", {0.46, 0.20, 0.34, 0.002}, {0.08, 0.11, RangeClass::Small, 0.57, 1.10},
       SelectivityLevel::High},
      {"classic", {0.33, 0.06, 0.61, 0.0}, {0.25, 0.09, RangeClass::Large, 0.49, 1.42},
       SelectivityLevel::High},
      {"geo", {0.31, 0.08, 0.61, 0.0}, {0.18, 0.13, RangeClass::Small, 0.45, 0.89},
       SelectivityLevel::Low},
      {"log", {0.22, 0.46, 0.32, 0.0}, {0.08, 0.02, RangeClass::Small, 0.75, 1.26},
       SelectivityLevel::Low},
      {"ml", {0.24, 0.39, 0.37, 0.01}, {0.12, 0.00, RangeClass::Large, 0.30, 1.00},
       SelectivityLevel::Mid},
  };
  return rows;
}

const PresetRow* find_preset(std::string_view name) {
  for (const auto& row : preset_rows()) {
    if (name == row.name) return &row;
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string>& preset_workload_names() {
  static const std::vector<std::string> names = {"core", "bi", "classic", "geo", "log", "ml"};
  return names;
}

WorkloadSpec workload_preset(std::string_view name) {
  const PresetRow* row = find_preset(name);
  if (row == nullptr) fail(ErrorCode::kInvalidConfig, "unknown workload '" + std::string(name) + "'");
  WorkloadSpec spec;
  spec.name = row->name;
  spec.type_mix = row->mix;
  spec.levels = row->levels;
  spec.selectivity_level = row->selectivity;
  if (spec.name == "core") {
    spec.sources = {{"bi", 0.50}, {"classic", 0.21}, {"geo", 0.07}, {"log", 0.07}, {"ml", 0.15}};
  }
  return spec;
}

namespace {

bool is_fraction(double x) { return x >= 0.0 && x <= 1.0; }

uint64_t target_distinct(const ColumnConfig& cfg) {
  return static_cast<uint64_t>(std::llround(cfg.ndv_ratio * static_cast<double>(cfg.rows)));
}

uint64_t target_nulls(const ColumnConfig& cfg) {
  return static_cast<uint64_t>(std::llround(cfg.null_ratio * static_cast<double>(cfg.rows)));
}

struct IntRange {
  int64_t lo;
  int64_t hi;  // inclusive
  uint64_t capacity() const { return static_cast<uint64_t>(hi - lo) + 1; }
};

// Integer domain of an Int64 column, or of a Float64 column in hundredths.
IntRange numeric_domain(const ValueRangeSpec& range, LogicalType type) {
  const double scale = type == LogicalType::Float64 ? 100.0 : 1.0;
  if (range.mean || range.half_width) {
    if (!range.mean || !range.half_width) {
      fail(ErrorCode::kInvalidConfig, "explicit value range needs both mean and half_width");
    }
    if (!(*range.half_width > 0.0)) fail(ErrorCode::kInvalidConfig, "half_width must be positive");
    const double lo = std::ceil((*range.mean - *range.half_width) * scale);
    const double hi = std::floor((*range.mean + *range.half_width) * scale);
    if (!(lo >= -0x1p62 && hi <= 0x1p62) || lo > hi) {
      fail(ErrorCode::kInvalidConfig, "explicit value range is empty or too wide");
    }
    return {static_cast<int64_t>(lo), static_cast<int64_t>(hi)};
  }
  int bits = 20;
  switch (range.cls) {
    case RangeClass::Small: bits = 12; break;
    case RangeClass::Medium: bits = 20; break;
    case RangeClass::Large: bits = 40; break;
  }
  const auto width = static_cast<int64_t>(std::ldexp(scale, bits));
  return {0, width - 1};
}

double string_mean_length(const ValueRangeSpec& range) {
  if (range.mean_len) return *range.mean_len;
  switch (range.cls) {
    case RangeClass::Small: return 8.0;
    case RangeClass::Medium: return 24.0;
    case RangeClass::Large: return 64.0;
  }
  return 24.0;
}

double string_length_stddev(const ValueRangeSpec& range) {
  if (range.len_variance) return std::sqrt(*range.len_variance);
  return string_mean_length(range) / 4.0;
}

uint64_t domain_capacity(const ColumnConfig& cfg) {
  switch (cfg.logical_type) {
    case LogicalType::Int64:
    case LogicalType::Float64: return numeric_domain(cfg.value_range, cfg.logical_type).capacity();
    case LogicalType::Utf8String: return std::numeric_limits<uint64_t>::max();
    case LogicalType::Bool: return 2;
  }
  return 0;
}

// Floyd's sampling of `count` distinct offsets from [0, n), returned sorted.
std::vector<uint64_t> distinct_offsets(uint64_t n, uint64_t count, Rng& rng) {
  std::unordered_set<uint64_t> chosen;
  chosen.reserve(count * 2);
  for (uint64_t j = n - count; j < n; ++j) {
    const uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> string_pool(const ColumnConfig& cfg, uint64_t count, Rng& rng) {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
  size_t suffix_width = 1;
  for (uint64_t cap = 36; cap < count; cap *= 36) ++suffix_width;
  const double mean = string_mean_length(cfg.value_range);
  const double stddev = string_length_stddev(cfg.value_range);
  std::vector<std::string> pool;
  pool.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    const double drawn = std::round(rng.normal(mean, stddev));
    const size_t len = static_cast<size_t>(std::max(drawn, static_cast<double>(suffix_width)));
    std::string s(len, 'a');
    for (size_t c = 0; c + suffix_width < len; ++c) s[c] = kAlphabet[rng.below(36)];
    uint64_t tag = i;
    for (size_t c = 0; c < suffix_width; ++c) {
      s[len - 1 - c] = kAlphabet[tag % 36];
      tag /= 36;
    }
    pool.push_back(std::move(s));
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Adjacent-pair classification of positions (k, k+1) within one block.
struct PairCounts {
  int64_t asc = 0, desc = 0, eq = 0;

  void add(uint32_t a, uint32_t b, int sign) {
    if (a < b) {
      asc += sign;
    } else if (a > b) {
      desc += sign;
    } else {
      eq += sign;
    }
  }
  double score(size_t n) const {
    return block_sortedness(static_cast<size_t>(asc), static_cast<size_t>(desc),
                            static_cast<size_t>(eq), n);
  }
};

// Lowers the sortedness of an ascending block by random pair swaps until
// the score reaches target + 0.01 or the swap budget runs out.
void degrade_block(uint32_t* v, size_t n, double target, Rng& rng) {
  if (n < 3 || target >= 1.0) return;
  PairCounts pc;
  for (size_t k = 0; k + 1 < n; ++k) pc.add(v[k], v[k + 1], 1);
  const double stop = target + 0.01;
  const size_t budget = 8 * n;
  size_t touched[4];
  for (size_t step = 0; step < budget && pc.score(n) > stop; ++step) {
    size_t i = rng.below(n), j = rng.below(n);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    // Pair starts affected by the swap: i-1, i, j-1, j.
    size_t m = 0;
    if (i > 0) touched[m++] = i - 1;
    touched[m++] = i;
    if (j - 1 != i) touched[m++] = j - 1;
    if (j + 1 < n) touched[m++] = j;
    for (size_t t = 0; t < m; ++t) {
      if (touched[t] + 1 < n) pc.add(v[touched[t]], v[touched[t] + 1], -1);
    }
    std::swap(v[i], v[j]);
    for (size_t t = 0; t < m; ++t) {
      if (touched[t] + 1 < n) pc.add(v[touched[t]], v[touched[t] + 1], 1);
    }
  }
}

// Positions into the value-sorted pool, one per present row.
std::vector<uint32_t> present_sequence(const ColumnConfig& cfg, uint64_t distinct,
                                       uint64_t present, Rng& rng) {
  // Zipf rank r maps to a random sorted-pool position.
  std::vector<uint32_t> rank_to_pos(distinct);
  std::iota(rank_to_pos.begin(), rank_to_pos.end(), 0U);
  rng.shuffle(rank_to_pos);

  std::vector<uint32_t> seq;
  seq.reserve(present);
  for (uint64_t r = 0; r < distinct; ++r) seq.push_back(rank_to_pos[r]);
  const ZipfSampler zipf(distinct, cfg.zipf_s);
  for (uint64_t i = distinct; i < present; ++i) seq.push_back(rank_to_pos[zipf.sample(rng) - 1]);
  rng.shuffle(seq);

  if (cfg.clustered) std::sort(seq.begin(), seq.end());
  for (size_t begin = 0; begin < seq.size(); begin += kSortednessBlockSize) {
    const size_t n = std::min<size_t>(kSortednessBlockSize, seq.size() - begin);
    uint32_t* block = seq.data() + begin;
    if (!cfg.clustered) std::sort(block, block + n);
    degrade_block(block, n, cfg.sortedness_target, rng);
  }
  return seq;
}

Bitmap null_mask(uint64_t rows, uint64_t nulls, Rng& rng) {
  Bitmap validity(rows, true);
  // Selection sampling keeps the null set uniform over all subsets.
  uint64_t remaining = nulls;
  for (uint64_t i = 0; i < rows && remaining > 0; ++i) {
    if (rng.below(rows - i) < remaining) {
      validity.set(i, false);
      --remaining;
    }
  }
  return validity;
}

template <typename T>
std::vector<T> scatter(const std::vector<uint32_t>& seq, const std::vector<T>& pool,
                       const Bitmap& validity, T placeholder) {
  std::vector<T> out(validity.size(), placeholder);
  size_t next = 0;
  for (size_t i = 0; i < out.size(); ++i) {
    if (validity.get(i)) out[i] = pool[seq[next++]];
  }
  return out;
}

}  // namespace

void validate(const ColumnConfig& cfg) {
  if (!is_fraction(cfg.ndv_ratio)) fail(ErrorCode::kInvalidConfig, "ndv_ratio must be in [0,1]");
  if (!is_fraction(cfg.null_ratio)) fail(ErrorCode::kInvalidConfig, "null_ratio must be in [0,1]");
  if (!is_fraction(cfg.sortedness_target)) {
    fail(ErrorCode::kInvalidConfig, "sortedness_target must be in [0,1]");
  }
  if (!(cfg.zipf_s >= 0.0) || !std::isfinite(cfg.zipf_s)) {
    fail(ErrorCode::kInvalidConfig, "zipf_s must be finite and >= 0");
  }
  const auto& r = cfg.value_range;
  if (r.mean_len && !(*r.mean_len > 0.0)) fail(ErrorCode::kInvalidConfig, "mean_len must be positive");
  if (r.len_variance && !(*r.len_variance > 0.0)) {
    fail(ErrorCode::kInvalidConfig, "len_variance must be positive");
  }
  if (cfg.rows == 0) return;
  if (cfg.rows > std::numeric_limits<uint32_t>::max()) {
    fail(ErrorCode::kInvalidConfig, "rows exceeds 2^32 - 1");
  }
  const uint64_t distinct = target_distinct(cfg);
  const uint64_t present = cfg.rows - target_nulls(cfg);
  if (distinct < 1) fail(ErrorCode::kInvalidConfig, "ndv_ratio * rows must be >= 1");
  if (distinct > present) {
    fail(ErrorCode::kInvalidConfig, "more distinct values requested than non-null rows");
  }
  if (distinct > domain_capacity(cfg)) {
    fail(ErrorCode::kInvalidConfig, "value range cannot hold " + std::to_string(distinct) +
                                        " distinct " + logical_type_name(cfg.logical_type) +
                                        " values");
  }
}

void validate(const WorkloadSpec& spec) {
  double sum = 0.0;
  for (double f : spec.type_mix) {
    if (!is_fraction(f)) fail(ErrorCode::kInvalidConfig, "type_mix entries must be in [0,1]");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 0.01 + 1e-9) fail(ErrorCode::kInvalidConfig, "type_mix must sum to 1 +- 0.01");
  const auto& lv = spec.levels;
  if (!is_fraction(lv.ndv_ratio) || !is_fraction(lv.null_ratio) || !is_fraction(lv.sortedness)) {
    fail(ErrorCode::kInvalidConfig, "workload property levels must be fractions");
  }
  if (!(lv.zipf_s >= 0.0)) fail(ErrorCode::kInvalidConfig, "workload zipf_s must be >= 0");
  double src_sum = 0.0;
  for (const auto& src : spec.sources) {
    if (find_preset(src.workload) == nullptr || src.workload == "core") {
      fail(ErrorCode::kInvalidConfig, "unknown source workload '" + src.workload + "'");
    }
    if (!(src.fraction >= 0.0)) fail(ErrorCode::kInvalidConfig, "source fraction must be >= 0");
    src_sum += src.fraction;
  }
  if (!spec.sources.empty() && std::abs(src_sum - 1.0) > 0.01 + 1e-9) {
    fail(ErrorCode::kInvalidConfig, "source fractions must sum to 1 +- 0.01");
  }
}

double sortedness_floor(const ColumnConfig& cfg) {
  validate(cfg);
  const uint64_t distinct = target_distinct(cfg);
  const uint64_t present = cfg.rows - target_nulls(cfg);
  if (present < 2 || distinct == 0) return 1.0;
  // Expected per-value counts: one guaranteed copy plus the Zipf share.
  const ZipfSampler zipf(distinct, cfg.zipf_s);
  const double extra = static_cast<double>(present - distinct);
  const double p = static_cast<double>(present);
  double pairs = 0.0;
  for (uint64_t k = 1; k <= distinct; ++k) {
    const double n = 1.0 + extra * zipf.probability(k);
    pairs += n * (n - 1.0);
  }
  const double q = pairs / (p * (p - 1.0));
  // Score of a shuffled block is about q + |asc - desc| / (2 (N/2 - 1)).
  const double n = static_cast<double>(std::min<uint64_t>(present, kSortednessBlockSize));
  const double spread = std::sqrt(2.0 / std::acos(-1.0) * (n - 1.0) * (1.0 - q)) / (n - 2.0);
  return std::min(1.0, q + spread);
}

ColumnVector generate_column(const ColumnConfig& cfg) {
  validate(cfg);
  if (cfg.rows == 0) return ColumnVector(cfg.logical_type);
  // Separate streams: the value pool varies with the range while the row
  // pattern stays fixed for a given seed.
  Rng pool_rng(splitmix64(cfg.seed ^ 0x706f6f6cULL));
  Rng rng(splitmix64(cfg.seed));
  const uint64_t distinct = target_distinct(cfg);
  const uint64_t nulls = target_nulls(cfg);
  const uint64_t present = cfg.rows - nulls;

  // Pool first, so the pool does not depend on the row-level draws.
  std::vector<int64_t> int_pool;
  std::vector<std::string> str_pool;
  std::vector<uint8_t> bool_pool;
  switch (cfg.logical_type) {
    case LogicalType::Int64:
    case LogicalType::Float64: {
      const IntRange dom = numeric_domain(cfg.value_range, cfg.logical_type);
      for (uint64_t off : distinct_offsets(dom.capacity(), distinct, pool_rng)) {
        int_pool.push_back(dom.lo + static_cast<int64_t>(off));
      }
      break;
    }
    case LogicalType::Utf8String: str_pool = string_pool(cfg, distinct, pool_rng); break;
    case LogicalType::Bool:
      bool_pool = distinct == 2 ? std::vector<uint8_t>{0, 1}
                                : std::vector<uint8_t>{static_cast<uint8_t>(pool_rng.below(2))};
      break;
  }

  const std::vector<uint32_t> seq = present_sequence(cfg, distinct, present, rng);
  Bitmap validity = null_mask(cfg.rows, nulls, rng);

  switch (cfg.logical_type) {
    case LogicalType::Int64:
      return ColumnVector::from_int64(scatter<int64_t>(seq, int_pool, validity, 0), validity);
    case LogicalType::Float64: {
      std::vector<double> pool(int_pool.size());
      for (size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<double>(int_pool[i]) / 100.0;
      return ColumnVector::from_double(scatter<double>(seq, pool, validity, 0.0), validity);
    }
    case LogicalType::Utf8String:
      return ColumnVector::from_strings(scatter<std::string>(seq, str_pool, validity, {}),
                                        validity);
    case LogicalType::Bool:
      return ColumnVector::from_bools(scatter<uint8_t>(seq, bool_pool, validity, 0), validity);
  }
  fail(ErrorCode::kInvalidConfig, "unsupported logical type");
}

std::array<size_t, 4> allocate_types(const std::array<double, 4>& mix, size_t cols) {
  const double total = std::accumulate(mix.begin(), mix.end(), 0.0);
  if (!(total > 0.0)) fail(ErrorCode::kInvalidConfig, "type_mix is all zero");
  std::array<size_t, 4> counts{};
  std::array<double, 4> remainder{};
  size_t assigned = 0;
  for (size_t t = 0; t < 4; ++t) {
    const double exact = mix[t] / total * static_cast<double>(cols);
    counts[t] = static_cast<size_t>(std::floor(exact));
    remainder[t] = exact - static_cast<double>(counts[t]);
    assigned += counts[t];
  }
  while (assigned < cols) {
    size_t best = 0;
    for (size_t t = 1; t < 4; ++t) {
      if (remainder[t] > remainder[best]) best = t;
    }
    ++counts[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  return counts;
}

std::vector<ColumnConfig> derive_column_configs(const WorkloadSpec& spec, uint64_t rows,
                                                size_t cols, uint64_t seed) {
  validate(spec);
  if (cols == 0) fail(ErrorCode::kInvalidConfig, "cols must be >= 1");
  Rng rng(splitmix64(seed ^ 0x7461626c65ULL));
  const auto counts = allocate_types(spec.type_mix, cols);
  std::vector<LogicalType> types;
  for (size_t t = 0; t < 4; ++t) types.insert(types.end(), counts[t], static_cast<LogicalType>(t));
  rng.shuffle(types);

  std::vector<ColumnConfig> out;
  out.reserve(cols);
  for (size_t c = 0; c < cols; ++c) {
    PropertyLevels levels = spec.levels;
    if (!spec.sources.empty()) {
      double u = rng.uniform() * std::accumulate(spec.sources.begin(), spec.sources.end(), 0.0,
                                                 [](double a, const auto& s) { return a + s.fraction; });
      const WorkloadSource* pick = &spec.sources.back();
      for (const auto& src : spec.sources) {
        if (u < src.fraction) {
          pick = &src;
          break;
        }
        u -= src.fraction;
      }
      levels = find_preset(pick->workload)->levels;
    }
    ColumnConfig cfg;
    cfg.logical_type = types[c];
    cfg.rows = rows;
    cfg.ndv_ratio = levels.ndv_ratio;
    cfg.null_ratio = levels.null_ratio;
    cfg.value_range = ValueRangeSpec::of(levels.value_range);
    cfg.sortedness_target = levels.sortedness;
    cfg.zipf_s = levels.zipf_s;
    cfg.seed = splitmix64(seed + 0x9e3779b97f4a7c15ULL * (c + 1));

    if (rows > 0) {
      const double r = static_cast<double>(rows);
      const double present = r - static_cast<double>(target_nulls(cfg));
      // Keep at least one distinct value and no more than the non-null rows.
      cfg.ndv_ratio = std::clamp(cfg.ndv_ratio, 1.0 / r, std::max(present, 1.0) / r);
      if (present < 1.0) cfg.null_ratio = (r - 1.0) / r;
      if (cfg.logical_type == LogicalType::Bool) cfg.ndv_ratio = std::min(cfg.ndv_ratio, 2.0 / r);
      while ((cfg.logical_type == LogicalType::Int64 || cfg.logical_type == LogicalType::Float64) &&
             target_distinct(cfg) > domain_capacity(cfg) &&
             cfg.value_range.cls != RangeClass::Large) {
        cfg.value_range.cls = static_cast<RangeClass>(static_cast<int>(cfg.value_range.cls) + 1);
      }
    }
    out.push_back(cfg);
  }
  return out;
}

Table generate_table(const WorkloadSpec& spec, uint64_t rows, size_t cols, uint64_t seed) {
  const auto configs = derive_column_configs(spec, rows, cols, seed);
  Table table(rows);
  const size_t width = std::to_string(cols - 1).size();
  for (size_t c = 0; c < configs.size(); ++c) {
    std::string idx = std::to_string(c);
    idx.insert(0, width - idx.size(), '0');
    table.add_column("c" + idx, generate_column(configs[c]));
  }
  return table;
}

namespace {

struct ValueRun {
  Scalar value;
  size_t count;
};

// Distinct present values in ascending order with their frequencies.
std::vector<ValueRun> sorted_runs(const ColumnVector& col) {
  std::vector<ValueRun> runs;
  auto collect = [&](const auto& values) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    std::vector<T> present;
    present.reserve(col.present_count());
    for (size_t i = 0; i < values.size(); ++i) {
      if (col.is_valid(i)) present.push_back(values[i]);
    }
    if constexpr (std::is_same_v<T, double>) {
      std::erase_if(present, [](double d) { return std::isnan(d); });
    }
    std::sort(present.begin(), present.end());
    for (size_t i = 0; i < present.size();) {
      size_t j = i;
      while (j < present.size() && present[j] == present[i]) ++j;
      if constexpr (std::is_same_v<T, uint8_t>) {
        runs.push_back({Scalar{present[i] != 0}, j - i});
      } else {
        runs.push_back({Scalar{present[i]}, j - i});
      }
      i = j;
    }
  };
  std::visit(collect, col.values());
  return runs;
}

struct Window {
  size_t lo = 0, hi = 0;  // inclusive run indices
  size_t matched = 0;
  double error = std::numeric_limits<double>::infinity();
};

std::optional<Window> pick_window(const std::vector<ValueRun>& runs, double target_rows,
                                  Rng& rng) {
  if (runs.empty()) return std::nullopt;
  std::vector<Window> close;
  Window best;
  auto consider = [&](size_t lo, size_t hi, size_t matched) {
    const double err = std::abs(static_cast<double>(matched) - target_rows);
    if (err < best.error) best = {lo, hi, matched, err};
    if (err <= 0.1 * target_rows) close.push_back({lo, hi, matched, err});
  };
  size_t hi = 0, sum = 0;
  for (size_t lo = 0; lo < runs.size(); ++lo) {
    if (hi < lo) {
      hi = lo;
      sum = 0;
    }
    while (hi < runs.size() && static_cast<double>(sum) < target_rows) sum += runs[hi++].count;
    // Window [lo, hi) reaches the target; [lo, hi - 1) falls short of it.
    consider(lo, hi - 1, sum);
    if (hi - 1 > lo) consider(lo, hi - 2, sum - runs[hi - 1].count);
    sum -= runs[lo].count;
  }
  if (!close.empty()) return close[rng.below(close.size())];
  return best;
}

}  // namespace

std::vector<PredicateSpec> generate_predicates(const Table& table, double target_selectivity,
                                               size_t count, uint64_t seed) {
  if (!(target_selectivity > 0.0 && target_selectivity <= 1.0)) {
    fail(ErrorCode::kInvalidConfig, "target selectivity must be in (0, 1]");
  }
  if (table.column_count() == 0 || table.row_count() == 0) {
    fail(ErrorCode::kInvalidConfig, "predicates need a non-empty table");
  }
  Rng rng(splitmix64(seed ^ 0x70726564ULL));
  const double rows = static_cast<double>(table.row_count());
  const double target_rows = target_selectivity * rows;
  std::vector<std::optional<std::vector<ValueRun>>> cache(table.column_count());
  auto runs_of = [&](size_t c) -> const std::vector<ValueRun>& {
    if (!cache[c]) cache[c] = sorted_runs(table.column(c));
    return *cache[c];
  };

  std::vector<PredicateSpec> out;
  for (size_t p = 0; p < count; ++p) {
    std::vector<size_t> order(table.column_count());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::optional<std::pair<size_t, Window>> chosen;
    for (size_t c : order) {
      const auto win = pick_window(runs_of(c), target_rows, rng);
      if (!win) continue;
      if (!chosen || win->error < chosen->second.error) chosen = std::make_pair(c, *win);
      if (chosen->second.error <= 0.2 * target_rows) break;
    }
    if (!chosen) fail(ErrorCode::kInvalidConfig, "every column is entirely null");
    const auto& [c, win] = *chosen;
    const auto& runs = runs_of(c);
    PredicateSpec pred = win.lo == win.hi
                             ? PredicateSpec::eq(table.name(c), runs[win.lo].value)
                             : PredicateSpec::range(table.name(c), runs[win.lo].value,
                                                    runs[win.hi].value);
    pred.target_selectivity = target_selectivity;
    pred.achieved_selectivity = static_cast<double>(win.matched) / rows;
    out.push_back(std::move(pred));
  }
  return out;
}

}  // namespace paxlab
