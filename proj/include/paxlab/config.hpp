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
#include <optional>
#include <string>
#include <string_view>

#include "paxlab/pax_file.hpp"
#include "paxlab/workload.hpp"

namespace paxlab {

// JSON documents for generation and layout parameters; the layout is
// documented in docs/config-schema.md. Malformed documents, unknown keys
// and out-of-range values raise InvalidConfig.

std::string workload_to_json(const WorkloadSpec& spec);
// Accepts a full spec or {"base": "<preset>", ...overrides}.
WorkloadSpec workload_from_json(std::string_view json);

std::string column_config_to_json(const ColumnConfig& cfg);
ColumnConfig column_config_from_json(std::string_view json);

std::string layout_to_json(const FileLayoutConfig& cfg);
// Applies the keys present in `json` on top of `cfg`.
void apply_layout_overrides(FileLayoutConfig& cfg, std::string_view json);

// FormatPreset lookup: "parquet-like", "orc-like", "plain".
std::optional<FileLayoutConfig> format_preset(std::string_view name);
const std::vector<std::string>& format_preset_names();

// The bench CLI's --config payload.
struct RunConfig {
  std::optional<WorkloadSpec> workload;
  std::optional<ColumnConfig> column;
  std::optional<uint64_t> rows;
  std::optional<uint64_t> cols;
  std::optional<uint64_t> seed;
  std::optional<std::string> preset;
  std::optional<CodecId> codec;
  // Raw layout overrides, applied after the preset is chosen.
  std::optional<std::string> layout;
};

RunConfig run_config_from_json(std::string_view json);

std::string read_text_file(const std::string& path);

}  // namespace paxlab
