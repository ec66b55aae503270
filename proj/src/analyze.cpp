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

#include "paxlab/analyze.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>

#include "paxlab/pax_file.hpp"
#include "paxlab/status.hpp"

namespace paxlab {

namespace {

struct Field {
  std::string text;
  bool quoted = false;
};

using Row = std::vector<Field>;

std::vector<Row> parse_rows(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  Field field;
  bool in_quotes = false;
  bool field_started = false;
  size_t line = 1;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field = Field{};
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    // A blank line carries no data.
    if (!(row.size() == 1 && row[0].text.empty() && !row[0].quoted)) rows.push_back(std::move(row));
    row.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.text.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.text.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) {
          fail(ErrorCode::kDecodeError, "stray quote on line " + std::to_string(line));
        }
        in_quotes = true;
        field.quoted = true;
        field_started = true;
        break;
      case ',': end_field(); break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_row();
        ++line;
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        if (field.quoted) {
          fail(ErrorCode::kDecodeError, "text after closing quote on line " + std::to_string(line));
        }
        field.text.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) fail(ErrorCode::kDecodeError, "unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

bool parses_int(std::string_view s, int64_t* out = nullptr) {
  int64_t v = 0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || first == s.data() + s.size()) return false;
  if (out != nullptr) *out = v;
  return true;
}

bool parses_double(std::string_view s, double* out = nullptr) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || first == s.data() + s.size()) return false;
  if (out != nullptr) *out = v;
  return true;
}

bool is_null(const Field& f) { return f.text.empty() && !f.quoted; }

LogicalType sniff(const std::vector<Row>& rows, size_t begin, size_t col, bool* any_value) {
  bool all_int = true, all_num = true;
  *any_value = false;
  for (size_t r = begin; r < rows.size(); ++r) {
    const Field& f = rows[r][col];
    if (is_null(f)) continue;
    *any_value = true;
    if (all_int && !parses_int(f.text)) all_int = false;
    if (all_num && !parses_double(f.text)) all_num = false;
    if (!all_num) break;
  }
  if (all_int) return LogicalType::Int64;
  if (all_num) return LogicalType::Float64;
  return LogicalType::Utf8String;
}

bool detect_header(const std::vector<Row>& rows) {
  if (rows.size() < 2) return false;
  for (size_t c = 0; c < rows[0].size(); ++c) {
    bool any = false;
    const LogicalType t = sniff(rows, 1, c, &any);
    if (!any || t == LogicalType::Utf8String) continue;
    const Field& head = rows[0][c];
    if (is_null(head)) continue;
    if (!parses_double(head.text)) return true;
  }
  return false;
}

}  // namespace

Table read_csv(std::string_view text, CsvHeader header) {
  std::vector<Row> rows = parse_rows(text);
  if (rows.empty()) fail(ErrorCode::kDecodeError, "empty CSV input");
  const size_t ncols = rows[0].size();
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) {
      fail(ErrorCode::kDecodeError, "row " + std::to_string(r + 1) + " has " +
                                        std::to_string(rows[r].size()) + " fields, expected " +
                                        std::to_string(ncols));
    }
  }
  const bool has_header =
      header == CsvHeader::Present || (header == CsvHeader::Auto && detect_header(rows));
  const size_t begin = has_header ? 1 : 0;
  if (begin >= rows.size()) fail(ErrorCode::kDecodeError, "CSV has no data rows");

  Table table(rows.size() - begin);
  for (size_t c = 0; c < ncols; ++c) {
    bool any = false;
    const LogicalType type = sniff(rows, begin, c, &any);
    ColumnVector col(type);
    col.reserve(rows.size() - begin);
    for (size_t r = begin; r < rows.size(); ++r) {
      const Field& f = rows[r][c];
      if (is_null(f)) {
        col.append_null();
        continue;
      }
      switch (type) {
        case LogicalType::Int64: {
          int64_t v = 0;
          parses_int(f.text, &v);
          col.append(Scalar{v});
          break;
        }
        case LogicalType::Float64: {
          double v = 0.0;
          parses_double(f.text, &v);
          col.append(Scalar{v});
          break;
        }
        default: col.append(Scalar{f.text});
      }
    }
    std::string name = has_header ? rows[0][c].text : "c" + std::to_string(c);
    if (name.empty()) name = "c" + std::to_string(c);
    table.add_column(std::move(name), std::move(col));
  }
  return table;
}

std::vector<ColumnProfile> profile_table(const Table& table) {
  std::vector<ColumnProfile> out;
  out.reserve(table.column_count());
  for (size_t c = 0; c < table.column_count(); ++c) {
    const ColumnVector& col = table.column(c);
    ColumnProfile p;
    p.name = table.name(c);
    p.type = col.type();
    p.rows = col.size();
    if (col.empty()) {
      out.push_back(std::move(p));
      continue;
    }
    p.stats = compute_stats(col);
    if (col.type() == LogicalType::Utf8String && col.present_count() > 0) {
      double total = 0.0;
      const auto& s = col.strings();
      for (size_t i = 0; i < col.size(); ++i) {
        if (col.is_valid(i)) total += static_cast<double>(s[i].size());
      }
      p.mean_byte_length = total / static_cast<double>(col.present_count());
    }
    out.push_back(std::move(p));
  }
  return out;
}

Table load_analyze_input(const std::string& path, CsvHeader header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open '" + path + "'");
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() == 4 && std::memcmp(magic, kPaxMagic, 4) == 0) {
    in.close();
    PaxReader reader(std::make_shared<FileSource>(path));
    std::vector<std::string> names;
    for (size_t c = 0; c < reader.footer().num_columns(); ++c) {
      names.push_back(reader.footer().column(c).name);
    }
    if (names.empty()) return Table(reader.footer().total_rows());
    return reader.scan(names);
  }
  in.clear();
  in.seekg(0);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kIoError, "read failed on '" + path + "'");
  return read_csv(text, header);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

namespace {

std::string scalar_field(const std::optional<Scalar>& v) {
  if (!v) return "";
  if (const double* d = std::get_if<double>(&*v)) return format_double(*d);
  return csv_escape(scalar_to_string(*v));
}

}  // namespace

void write_profiles_csv(const std::vector<ColumnProfile>& profiles, std::ostream& out) {
  out << "column,type,rows,ndv_ratio,null_ratio,sortedness,fitted_zipf_s,skew_category,min,max,"
         "mean_byte_length\n";
  for (const auto& p : profiles) {
    out << csv_escape(p.name) << ',' << logical_type_name(p.type) << ',' << p.rows << ',';
    if (p.rows == 0) {
      out << ",,,,,,,\n";
      continue;
    }
    out << format_double(p.stats.ndv_ratio) << ',' << format_double(p.stats.null_ratio) << ',';
    if (p.stats.sortedness) out << format_double(*p.stats.sortedness);
    out << ',' << format_double(p.stats.fitted_zipf_s) << ','
        << skew_category_name(p.stats.skew_category) << ',' << scalar_field(p.stats.min) << ','
        << scalar_field(p.stats.max) << ',';
    if (p.mean_byte_length) out << format_double(*p.mean_byte_length);
    out << '\n';
  }
}

}  // namespace paxlab
