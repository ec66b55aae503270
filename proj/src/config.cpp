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

#include "paxlab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "paxlab/status.hpp"

namespace paxlab {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::kInvalidConfig, what); }

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const char* where) {
  if (!j.is_object()) bad(std::string(where) + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) bad(std::string("unknown key '") + k + "' in " + where);
  }
}

double num(const json& j, const char* key) {
  if (!j.is_number()) bad(std::string("'") + key + "' must be a number");
  return j.get<double>();
}

uint64_t count(const json& j, const char* key) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<int64_t>() >= 0)) {
    bad(std::string("'") + key + "' must be a non-negative integer");
  }
  return j.get<uint64_t>();
}

bool flag(const json& j, const char* key) {
  if (!j.is_boolean()) bad(std::string("'") + key + "' must be true or false");
  return j.get<bool>();
}

std::string str(const json& j, const char* key) {
  if (!j.is_string()) bad(std::string("'") + key + "' must be a string");
  return j.get<std::string>();
}

template <typename T, typename Parse>
T parse_enum(const json& j, const char* key, Parse parse) {
  const std::string s = str(j, key);
  auto v = parse(s);
  if (!v) bad(std::string("unknown ") + key + " '" + s + "'");
  return *v;
}

json levels_json(const PropertyLevels& l) {
  return json{{"ndv_ratio", l.ndv_ratio},
              {"null_ratio", l.null_ratio},
              {"value_range", range_class_name(l.value_range)},
              {"sortedness", l.sortedness},
              {"zipf_s", l.zipf_s}};
}

void read_levels(const json& j, PropertyLevels& l) {
  only_keys(j, {"ndv_ratio", "null_ratio", "value_range", "sortedness", "zipf_s"}, "levels");
  if (j.contains("ndv_ratio")) l.ndv_ratio = num(j["ndv_ratio"], "ndv_ratio");
  if (j.contains("null_ratio")) l.null_ratio = num(j["null_ratio"], "null_ratio");
  if (j.contains("value_range")) {
    l.value_range = parse_enum<RangeClass>(j["value_range"], "value_range", parse_range_class);
  }
  if (j.contains("sortedness")) l.sortedness = num(j["sortedness"], "sortedness");
  if (j.contains("zipf_s")) l.zipf_s = num(j["zipf_s"], "zipf_s");
}

json workload_json(const WorkloadSpec& s) {
  json mix = json::object();
  for (size_t t = 0; t < 4; ++t) mix[logical_type_name(static_cast<LogicalType>(t))] = s.type_mix[t];
  json sources = json::array();
  for (const auto& src : s.sources) sources.push_back({{"workload", src.workload}, {"fraction", src.fraction}});
  return json{{"name", s.name},
              {"type_mix", mix},
              {"levels", levels_json(s.levels)},
              {"selectivity_level", selectivity_level_name(s.selectivity_level)},
              {"sources", sources}};
}

WorkloadSpec workload_of(const json& j) {
  if (j.is_string()) return workload_preset(j.get<std::string>());
  only_keys(j, {"base", "name", "type_mix", "levels", "selectivity_level", "sources"}, "workload");
  WorkloadSpec s;
  if (j.contains("base")) s = workload_preset(str(j["base"], "base"));
  if (j.contains("name")) s.name = str(j["name"], "name");
  if (j.contains("type_mix")) {
    const json& m = j["type_mix"];
    only_keys(m, {"int64", "float64", "string", "bool"}, "type_mix");
    if (!j.contains("base")) s.type_mix = {0, 0, 0, 0};
    for (size_t t = 0; t < 4; ++t) {
      const char* k = logical_type_name(static_cast<LogicalType>(t));
      if (m.contains(k)) s.type_mix[t] = num(m[k], k);
    }
  }
  if (j.contains("levels")) read_levels(j["levels"], s.levels);
  if (j.contains("selectivity_level")) {
    s.selectivity_level = parse_enum<SelectivityLevel>(j["selectivity_level"], "selectivity_level",
                                                       parse_selectivity_level);
  }
  if (j.contains("sources")) {
    if (!j["sources"].is_array()) bad("'sources' must be an array");
    s.sources.clear();
    for (const json& e : j["sources"]) {
      only_keys(e, {"workload", "fraction"}, "sources entry");
      if (!e.contains("workload") || !e.contains("fraction")) bad("sources entries need workload and fraction");
      s.sources.push_back({str(e["workload"], "workload"), num(e["fraction"], "fraction")});
    }
  }
  validate(s);
  return s;
}

json column_json(const ColumnConfig& c) {
  json range{{"class", range_class_name(c.value_range.cls)}};
  if (c.value_range.mean) range["mean"] = *c.value_range.mean;
  if (c.value_range.half_width) range["half_width"] = *c.value_range.half_width;
  if (c.value_range.mean_len) range["mean_len"] = *c.value_range.mean_len;
  if (c.value_range.len_variance) range["len_variance"] = *c.value_range.len_variance;
  return json{{"type", logical_type_name(c.logical_type)},
              {"rows", c.rows},
              {"ndv_ratio", c.ndv_ratio},
              {"null_ratio", c.null_ratio},
              {"value_range", range},
              {"sortedness", c.sortedness_target},
              {"zipf_s", c.zipf_s},
              {"seed", c.seed},
              {"clustered", c.clustered}};
}

ColumnConfig column_of(const json& j) {
  only_keys(j, {"type", "rows", "ndv_ratio", "null_ratio", "value_range", "sortedness", "zipf_s", "seed",
                "clustered"},
            "column");
  ColumnConfig c;
  if (j.contains("type")) c.logical_type = parse_enum<LogicalType>(j["type"], "type", parse_logical_type);
  if (j.contains("rows")) c.rows = count(j["rows"], "rows");
  if (j.contains("ndv_ratio")) c.ndv_ratio = num(j["ndv_ratio"], "ndv_ratio");
  if (j.contains("null_ratio")) c.null_ratio = num(j["null_ratio"], "null_ratio");
  if (j.contains("value_range")) {
    const json& r = j["value_range"];
    if (r.is_string()) {
      c.value_range = ValueRangeSpec::of(parse_enum<RangeClass>(r, "value_range", parse_range_class));
    } else {
      only_keys(r, {"class", "mean", "half_width", "mean_len", "len_variance"}, "value_range");
      if (r.contains("class")) c.value_range.cls = parse_enum<RangeClass>(r["class"], "class", parse_range_class);
      if (r.contains("mean")) c.value_range.mean = num(r["mean"], "mean");
      if (r.contains("half_width")) c.value_range.half_width = num(r["half_width"], "half_width");
      if (r.contains("mean_len")) c.value_range.mean_len = num(r["mean_len"], "mean_len");
      if (r.contains("len_variance")) c.value_range.len_variance = num(r["len_variance"], "len_variance");
    }
  }
  if (j.contains("sortedness")) c.sortedness_target = num(j["sortedness"], "sortedness");
  if (j.contains("zipf_s")) c.zipf_s = num(j["zipf_s"], "zipf_s");
  if (j.contains("seed")) c.seed = count(j["seed"], "seed");
  if (j.contains("clustered")) c.clustered = flag(j["clustered"], "clustered");
  validate(c);
  return c;
}

json layout_json(const FileLayoutConfig& c) {
  return json{
      {"row_group_mode", c.row_group_mode == RowGroupMode::FixedRows ? "rows" : "bytes"},
      {"row_group_rows", c.row_group_rows},
      {"row_group_bytes", c.row_group_bytes},
      {"page_rows", c.page_rows},
      {"zone_maps", {{"file", c.zone_maps.file}, {"row_group", c.zone_maps.row_group}, {"page", c.zone_maps.page}}},
      {"zone_placement", zone_placement_name(c.zone_placement)},
      {"bloom",
       {{"enabled", c.bloom.enabled}, {"fpp", c.bloom.fpp}, {"granularity", bloom_granularity_name(c.bloom.granularity)}}},
      {"codec", codec_name(c.codec)},
      {"encoding",
       {{"style", policy_style_name(c.encoding_policy.style)},
        {"dict_size_limit_bytes", c.encoding_policy.dict_size_limit_bytes},
        {"ndv_ratio_threshold", c.encoding_policy.ndv_ratio_threshold},
        {"rle_min_run", c.encoding_policy.rle_min_run}}},
      {"align_compression_to_page", c.align_compression_to_page},
      {"compression_unit_bytes", c.compression_unit_bytes}};
}

void apply_layout(FileLayoutConfig& c, const json& j) {
  only_keys(j, {"row_group_mode", "row_group_rows", "row_group_bytes", "page_rows", "zone_maps", "zone_placement",
                "bloom", "codec", "encoding", "align_compression_to_page", "compression_unit_bytes"},
            "layout");
  if (j.contains("row_group_mode")) {
    const std::string m = str(j["row_group_mode"], "row_group_mode");
    if (m == "rows") {
      c.row_group_mode = RowGroupMode::FixedRows;
    } else if (m == "bytes") {
      c.row_group_mode = RowGroupMode::FixedBytes;
    } else {
      bad("row_group_mode must be 'rows' or 'bytes'");
    }
  }
  if (j.contains("row_group_rows")) c.row_group_rows = count(j["row_group_rows"], "row_group_rows");
  if (j.contains("row_group_bytes")) c.row_group_bytes = count(j["row_group_bytes"], "row_group_bytes");
  if (j.contains("page_rows")) c.page_rows = count(j["page_rows"], "page_rows");
  if (j.contains("zone_maps")) {
    const json& z = j["zone_maps"];
    only_keys(z, {"file", "row_group", "page"}, "zone_maps");
    if (z.contains("file")) c.zone_maps.file = flag(z["file"], "file");
    if (z.contains("row_group")) c.zone_maps.row_group = flag(z["row_group"], "row_group");
    if (z.contains("page")) c.zone_maps.page = flag(z["page"], "page");
  }
  if (j.contains("zone_placement")) {
    const std::string p = str(j["zone_placement"], "zone_placement");
    if (p == "centralized") {
      c.zone_placement = ZonePlacement::CentralizedFooter;
    } else if (p == "per-row-group") {
      c.zone_placement = ZonePlacement::PerRowGroup;
    } else {
      bad("zone_placement must be 'centralized' or 'per-row-group'");
    }
  }
  if (j.contains("bloom")) {
    const json& b = j["bloom"];
    only_keys(b, {"enabled", "fpp", "granularity"}, "bloom");
    if (b.contains("enabled")) c.bloom.enabled = flag(b["enabled"], "enabled");
    if (b.contains("fpp")) c.bloom.fpp = num(b["fpp"], "fpp");
    if (b.contains("granularity")) {
      const std::string g = str(b["granularity"], "granularity");
      if (g == "column-chunk") {
        c.bloom.granularity = BloomGranularity::ColumnChunk;
      } else if (g == "page") {
        c.bloom.granularity = BloomGranularity::Page;
      } else {
        bad("bloom granularity must be 'column-chunk' or 'page'");
      }
    }
  }
  if (j.contains("codec")) c.codec = parse_enum<CodecId>(j["codec"], "codec", parse_codec);
  if (j.contains("encoding")) {
    const json& e = j["encoding"];
    only_keys(e, {"style", "dict_size_limit_bytes", "ndv_ratio_threshold", "rle_min_run"}, "encoding");
    if (e.contains("style")) c.encoding_policy.style = parse_enum<PolicyStyle>(e["style"], "style", parse_policy_style);
    if (e.contains("dict_size_limit_bytes")) {
      c.encoding_policy.dict_size_limit_bytes = count(e["dict_size_limit_bytes"], "dict_size_limit_bytes");
    }
    if (e.contains("ndv_ratio_threshold")) {
      c.encoding_policy.ndv_ratio_threshold = num(e["ndv_ratio_threshold"], "ndv_ratio_threshold");
    }
    if (e.contains("rle_min_run")) {
      const uint64_t r = count(e["rle_min_run"], "rle_min_run");
      if (r > UINT32_MAX) bad("rle_min_run too large");
      c.encoding_policy.rle_min_run = static_cast<uint32_t>(r);
    }
  }
  if (j.contains("align_compression_to_page")) {
    c.align_compression_to_page = flag(j["align_compression_to_page"], "align_compression_to_page");
  }
  if (j.contains("compression_unit_bytes")) {
    c.compression_unit_bytes = count(j["compression_unit_bytes"], "compression_unit_bytes");
  }
}

}  // namespace

std::string workload_to_json(const WorkloadSpec& spec) { return workload_json(spec).dump(2); }

WorkloadSpec workload_from_json(std::string_view text) { return workload_of(parse(text)); }

std::string column_config_to_json(const ColumnConfig& cfg) { return column_json(cfg).dump(2); }

ColumnConfig column_config_from_json(std::string_view text) { return column_of(parse(text)); }

std::string layout_to_json(const FileLayoutConfig& cfg) { return layout_json(cfg).dump(2); }

void apply_layout_overrides(FileLayoutConfig& cfg, std::string_view text) {
  FileLayoutConfig next = cfg;
  apply_layout(next, parse(text));
  validate(next);
  cfg = next;
}

const std::vector<std::string>& format_preset_names() {
  static const std::vector<std::string> names = {"parquet-like", "orc-like", "plain"};
  return names;
}

std::optional<FileLayoutConfig> format_preset(std::string_view name) {
  if (name == "parquet-like") return FileLayoutConfig::parquet_like();
  if (name == "orc-like") return FileLayoutConfig::orc_like();
  if (name == "plain") return FileLayoutConfig::plain();
  return std::nullopt;
}

RunConfig run_config_from_json(std::string_view text) {
  const json j = parse(text);
  only_keys(j, {"workload", "column", "rows", "cols", "seed", "preset", "codec", "layout"}, "config");
  RunConfig rc;
  if (j.contains("workload")) rc.workload = workload_of(j["workload"]);
  if (j.contains("column")) rc.column = column_of(j["column"]);
  if (j.contains("rows")) rc.rows = count(j["rows"], "rows");
  if (j.contains("cols")) rc.cols = count(j["cols"], "cols");
  if (j.contains("seed")) rc.seed = count(j["seed"], "seed");
  if (j.contains("preset")) {
    rc.preset = str(j["preset"], "preset");
    if (!format_preset(*rc.preset)) bad("unknown preset '" + *rc.preset + "'");
  }
  if (j.contains("codec")) rc.codec = parse_enum<CodecId>(j["codec"], "codec", parse_codec);
  if (j.contains("layout")) {
    // Key and type checks only; the preset is not known yet.
    FileLayoutConfig probe;
    apply_layout(probe, j["layout"]);
    rc.layout = j["layout"].dump();
  }
  return rc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIoError, "cannot read '" + path + "'");
  return ss.str();
}

}  // namespace paxlab
