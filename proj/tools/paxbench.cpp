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

// paxbench: workload generation, profiling and benchmark sweeps over the
// paxlab C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paxlab/paxlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int exit_code(pax_status s) {
  switch (s) {
    case PAX_OK: return kExitOk;
    case PAX_IO_ERROR: return kExitIo;
    case PAX_INTERNAL: return kExitInternal;
    default: return kExitConfig;
  }
}

int report(pax_status s) {
  if (s != PAX_OK) std::cerr << "paxbench: " << pax_last_error() << "\n";
  return exit_code(s);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return !in.bad();
}

// Output goes to --out when given, else stdout.
class Output {
 public:
  bool open(const std::string& path) {
    if (path.empty() || path == "-") return true;
    file_.open(path, std::ios::binary | std::ios::trunc);
    return static_cast<bool>(file_);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool finish() {
    stream().flush();
    return static_cast<bool>(stream());
  }

 private:
  std::ofstream file_;
};

struct GenerateArgs {
  std::string workload, preset, codec, out, config;
  uint64_t rows = 0, cols = 0, seed = 0;
};

int run_generate(CLI::App& cmd, const GenerateArgs& a) {
  std::string config_text;
  if (!a.config.empty() && !read_file(a.config, config_text)) {
    std::cerr << "paxbench: cannot read config '" << a.config << "'\n";
    return kExitIo;
  }
  pax_generate_request req{};
  req.workload = cmd.count("--workload") ? a.workload.c_str() : nullptr;
  req.has_rows = cmd.count("--rows") ? 1 : 0;
  req.rows = a.rows;
  req.has_cols = cmd.count("--cols") ? 1 : 0;
  req.cols = a.cols;
  req.has_seed = cmd.count("--seed") ? 1 : 0;
  req.seed = a.seed;
  req.preset = cmd.count("--preset") ? a.preset.c_str() : nullptr;
  req.codec = cmd.count("--codec") ? a.codec.c_str() : nullptr;
  req.config_json = a.config.empty() ? nullptr : config_text.c_str();
  req.out_path = a.out.c_str();
  pax_generate_result res{};
  const pax_status s = pax_generate(&req, &res);
  if (s != PAX_OK) return report(s);
  std::cout << "file_bytes,write_ns\n" << res.file_bytes << ',' << res.write_ns << "\n";
  return kExitOk;
}

struct AnalyzeArgs {
  std::string input, out, header = "auto";
};

int run_analyze(const AnalyzeArgs& a) {
  pax_csv_header header = PAX_CSV_HEADER_AUTO;
  if (a.header == "yes") header = PAX_CSV_HEADER_PRESENT;
  if (a.header == "no") header = PAX_CSV_HEADER_ABSENT;
  char* csv = nullptr;
  const pax_status s = pax_analyze(a.input.c_str(), header, &csv);
  if (s != PAX_OK) return report(s);
  Output out;
  if (!out.open(a.out)) {
    pax_string_free(csv);
    std::cerr << "paxbench: cannot write '" << a.out << "'\n";
    return kExitIo;
  }
  out.stream() << csv;
  pax_string_free(csv);
  return out.finish() ? kExitOk : kExitIo;
}

struct BenchArgs {
  std::string suite, out, config, workload;
  std::vector<std::string> presets, codecs, axes, types;
  uint64_t seed = 0, rows = 0, cols = 0;
  unsigned runs = 3, threads = 1;
};

void emit_row(const char* row, void* user) {
  auto* os = static_cast<std::ostream*>(user);
  *os << row << '\n';
  os->flush();
}

int run_bench_cmd(CLI::App& cmd, const BenchArgs& a) {
  pax_bench_options* opts = nullptr;
  pax_status s = pax_bench_options_create(a.suite.c_str(), &opts);
  if (s != PAX_OK) return report(s);
  std::unique_ptr<pax_bench_options, decltype(&pax_bench_options_free)> guard(
      opts, &pax_bench_options_free);

  if (!a.config.empty()) {
    std::string text;
    if (!read_file(a.config, text)) {
      std::cerr << "paxbench: cannot read config '" << a.config << "'\n";
      return kExitIo;
    }
    if ((s = pax_bench_apply_config(opts, text.c_str())) != PAX_OK) return report(s);
  }
  if (!a.presets.empty()) pax_bench_clear_presets(opts);
  for (const auto& p : a.presets) {
    if ((s = pax_bench_add_preset(opts, p.c_str())) != PAX_OK) return report(s);
  }
  if (!a.codecs.empty()) pax_bench_clear_codecs(opts);
  for (const auto& c : a.codecs) {
    if ((s = pax_bench_add_codec(opts, c.c_str())) != PAX_OK) return report(s);
  }
  for (const auto& x : a.axes) {
    if ((s = pax_bench_add_axis(opts, x.c_str())) != PAX_OK) return report(s);
  }
  for (const auto& t : a.types) {
    if ((s = pax_bench_add_type(opts, t.c_str())) != PAX_OK) return report(s);
  }
  if (cmd.count("--seed") && (s = pax_bench_set_seed(opts, a.seed)) != PAX_OK) return report(s);
  if (cmd.count("--rows") && (s = pax_bench_set_rows(opts, a.rows)) != PAX_OK) return report(s);
  if (cmd.count("--cols") && (s = pax_bench_set_cols(opts, a.cols)) != PAX_OK) return report(s);
  if ((s = pax_bench_set_runs(opts, a.runs)) != PAX_OK) return report(s);
  if ((s = pax_bench_set_threads(opts, a.threads)) != PAX_OK) return report(s);
  if (cmd.count("--workload") &&
      (s = pax_bench_set_workload(opts, a.workload.c_str())) != PAX_OK) {
    return report(s);
  }

  Output out;
  if (!out.open(a.out)) {
    std::cerr << "paxbench: cannot write '" << a.out << "'\n";
    return kExitIo;
  }
  out.stream() << pax_bench_csv_header() << '\n';
  s = pax_bench_run(opts, &emit_row, &out.stream());
  const bool flushed = out.finish();
  if (s != PAX_OK) return report(s);
  return flushed ? kExitOk : kExitIo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paxlab benchmark harness"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a workload table and write a .paxb file");
  generate->add_option("--workload", gen.workload, "Workload preset or JSON spec (default core)");
  generate->add_option("--rows", gen.rows, "Row count (default 1000000)");
  generate->add_option("--cols", gen.cols, "Column count (default 20)");
  generate->add_option("--seed", gen.seed, "Generator seed (default 42)");
  generate->add_option("--preset", gen.preset, "parquet-like | orc-like | plain");
  generate->add_option("--codec", gen.codec, "none | lz");
  generate->add_option("--config", gen.config, "Run config JSON file");
  generate->add_option("--out", gen.out, "Output file")->required();

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Profile each column of a CSV or .paxb file");
  analyze->add_option("--input", an.input, "CSV or .paxb file")->required();
  analyze->add_option("--out", an.out, "Output CSV (default stdout)");
  analyze->add_option("--header", an.header, "CSV header row: auto | yes | no")
      ->check(CLI::IsMember({"auto", "yes", "no"}));

  BenchArgs b;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and emit CSV");
  bench->add_option("--suite", b.suite,
                    "encode-sweep | scan | select | bloom | projection | nested")
      ->required();
  bench->add_option("--preset", b.presets, "Format preset (repeatable)");
  bench->add_option("--codec", b.codecs, "Codec (repeatable)");
  bench->add_option("--seed", b.seed, "Seed (default 42)");
  bench->add_option("--rows", b.rows, "Rows, or records for the nested suite");
  bench->add_option("--cols", b.cols, "Columns (scan suite)");
  bench->add_option("--workload", b.workload, "Workload preset or JSON spec (scan suite)");
  bench->add_option("--axis", b.axes, "encode-sweep axis filter (repeatable)");
  bench->add_option("--type", b.types, "encode-sweep type filter (repeatable)");
  bench->add_option("--runs", b.runs, "Timed runs per configuration, at least 3");
  bench->add_option("--threads", b.threads, "Row-group decode threads (only 1)");
  bench->add_option("--config", b.config, "Run config JSON file");
  bench->add_option("--out", b.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (generate->parsed()) return run_generate(*generate, gen);
  if (analyze->parsed()) return run_analyze(an);
  return run_bench_cmd(*bench, b);
}
