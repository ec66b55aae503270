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

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "paxlab/column.hpp"
#include "paxlab/stats.hpp"

namespace paxlab {

enum class CsvHeader : uint8_t { Auto, Present, Absent };

// RFC 4180 text. Each column is typed by sniffing its non-empty fields:
// Int64 if all parse as integers, else Float64 if all parse as numbers,
// else Utf8String. An unquoted empty field is null. In Auto mode the first
// row is a header when some numeric column has a non-numeric first field;
// all-string files are read without one. Columns without a header are
// named c0, c1, ...
// Empty input, ragged rows and unterminated quotes raise DecodeError.
Table read_csv(std::string_view text, CsvHeader header = CsvHeader::Auto);

struct ColumnProfile {
  std::string name;
  LogicalType type = LogicalType::Int64;
  uint64_t rows = 0;
  ColumnStats stats;
  // Strings only.
  std::optional<double> mean_byte_length;
};

std::vector<ColumnProfile> profile_table(const Table& table);

// A .paxb file (detected by magic) or CSV.
Table load_analyze_input(const std::string& path, CsvHeader header = CsvHeader::Auto);

// Header: column,type,rows,ndv_ratio,null_ratio,sortedness,fitted_zipf_s,
// skew_category,min,max,mean_byte_length. Absent values are empty fields.
void write_profiles_csv(const std::vector<ColumnProfile>& profiles, std::ostream& out);

// Quotes a field when it holds a comma, quote or line break.
std::string csv_escape(std::string_view field);
// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace paxlab
