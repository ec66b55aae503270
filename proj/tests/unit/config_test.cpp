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

#include "paxlab/config.hpp"
#include "paxlab/status.hpp"
#include "test_support.hpp"

namespace paxlab {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const PaxError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no PaxError thrown";
  return ErrorCode::kIoError;
}

bool same_spec(const WorkloadSpec& a, const WorkloadSpec& b) {
  if (a.name != b.name || a.type_mix != b.type_mix || a.selectivity_level != b.selectivity_level) return false;
  const auto& x = a.levels;
  const auto& y = b.levels;
  if (x.ndv_ratio != y.ndv_ratio || x.null_ratio != y.null_ratio || x.value_range != y.value_range ||
      x.sortedness != y.sortedness || x.zipf_s != y.zipf_s) {
    return false;
  }
  if (a.sources.size() != b.sources.size()) return false;
  for (size_t i = 0; i < a.sources.size(); ++i) {
    if (a.sources[i].workload != b.sources[i].workload || a.sources[i].fraction != b.sources[i].fraction) return false;
  }
  return true;
}

TEST(Config, WorkloadPresetsRoundTrip) {
  for (const auto& name : preset_workload_names()) {
    const WorkloadSpec spec = workload_preset(name);
    EXPECT_TRUE(same_spec(workload_from_json(workload_to_json(spec)), spec)) << name;
  }
}

TEST(Config, WorkloadBaseWithOverride) {
  const WorkloadSpec spec = workload_from_json(R"({"base": "log", "levels": {"zipf_s": 2.0}})");
  EXPECT_DOUBLE_EQ(spec.levels.zipf_s, 2.0);
  EXPECT_DOUBLE_EQ(spec.levels.sortedness, 0.75);
}

TEST(Config, ColumnConfigRoundTripProperty) {
  testing::for_all(91, 50, [](Rng& rng, int) {
    ColumnConfig c;
    c.logical_type = testing::any_type(rng);
    c.rows = 1000 + rng.below(1000000);
    c.null_ratio = rng.uniform() * 0.5;
    c.ndv_ratio = 0.001 + rng.uniform() * 0.4;
    if (c.logical_type == LogicalType::Bool) c.ndv_ratio = 2.0 / c.rows;
    c.sortedness_target = rng.uniform();
    c.zipf_s = rng.uniform() * 3;
    c.seed = rng.next();
    c.clustered = rng.below(2) == 0;
    c.value_range = ValueRangeSpec::of(RangeClass::Large);
    if (rng.below(2) == 0) {
      c.value_range.mean = rng.uniform() * 100;
      c.value_range.half_width = 1e7 + rng.uniform() * 1e7;
    }
    const ColumnConfig back = column_config_from_json(column_config_to_json(c));
    EXPECT_EQ(column_config_to_json(back), column_config_to_json(c));
    EXPECT_EQ(back.seed, c.seed);
    EXPECT_EQ(back.ndv_ratio, c.ndv_ratio);
  });
}

TEST(Config, LayoutPresetsRoundTrip) {
  for (const auto& name : format_preset_names()) {
    const FileLayoutConfig base = *format_preset(name);
    FileLayoutConfig other = FileLayoutConfig::plain();
    apply_layout_overrides(other, layout_to_json(base));
    EXPECT_EQ(other, base) << name;
  }
  EXPECT_FALSE(format_preset("arrow").has_value());
}

TEST(Config, PartialLayoutOverride) {
  FileLayoutConfig cfg = FileLayoutConfig::parquet_like();
  apply_layout_overrides(cfg, R"({"page_rows": 10000, "bloom": {"enabled": true, "fpp": 0.01}})");
  EXPECT_EQ(cfg.page_rows, 10000u);
  EXPECT_TRUE(cfg.bloom.enabled);
  EXPECT_DOUBLE_EQ(cfg.bloom.fpp, 0.01);
  EXPECT_EQ(cfg.encoding_policy.style, PolicyStyle::ParquetLike);
}

TEST(Config, RejectsMalformedAndUnknown) {
  FileLayoutConfig cfg;
  EXPECT_EQ(code_of([&] { apply_layout_overrides(cfg, "{not json"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { apply_layout_overrides(cfg, R"({"page_rowz": 5})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { apply_layout_overrides(cfg, R"({"page_rows": -5})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { apply_layout_overrides(cfg, R"({"codec": "brotli"})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { workload_from_json(R"({"base": "oltp"})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { column_config_from_json(R"({"type": "decimal"})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { workload_from_json(R"({"type_mix": {"int64": 0.5}})"); }), ErrorCode::kInvalidConfig);
}

TEST(Config, RunConfigFields) {
  const RunConfig rc = run_config_from_json(
      R"({"workload": "bi", "rows": 500, "cols": 4, "seed": 9, "preset": "orc-like", "codec": "lz",
          "layout": {"page_rows": 100}})");
  ASSERT_TRUE(rc.workload.has_value());
  EXPECT_EQ(rc.workload->name, "bi");
  EXPECT_EQ(rc.rows, 500u);
  EXPECT_EQ(rc.cols, 4u);
  EXPECT_EQ(rc.seed, 9u);
  EXPECT_EQ(rc.preset, "orc-like");
  EXPECT_EQ(rc.codec, CodecId::Lz);
  ASSERT_TRUE(rc.layout.has_value());
  FileLayoutConfig cfg = FileLayoutConfig::orc_like();
  apply_layout_overrides(cfg, *rc.layout);
  EXPECT_EQ(cfg.page_rows, 100u);
  EXPECT_EQ(code_of([] { run_config_from_json(R"({"preset": "parquet-like", "extra": 1})"); }),
            ErrorCode::kInvalidConfig);
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { read_text_file("/nonexistent/paxlab.json"); }), ErrorCode::kIoError);
}

}  // namespace
}  // namespace paxlab
