// Copyright 2026 The socmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "socmine/socmine.hpp"

namespace socmine::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kData = 2;
inline constexpr int kIncomplete = 3;

inline constexpr const char* kTimeoutEnv = "SOCMINE_TIMEOUT_MS";

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw UsageError("failed writing '" + path + "'");
}

// "<dir>/<stem>.<miner><ext>" for mine --miner all.
inline std::string per_miner_path(const std::string& out, const std::string& miner) {
  const std::filesystem::path p(out);
  auto name = p.stem().string() + "." + miner + p.extension().string();
  return (p.parent_path() / name).string();
}

// Splits repeated "[miner.]key=value" flags across the selected miners.
inline std::map<std::string, MinerParams> assign_miner_args(const std::vector<std::string>& args,
                                                            const std::vector<std::string>& miners) {
  std::map<std::string, MinerParams> out;
  for (const auto& m : miners) out[m];
  for (const auto& arg : args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--miner-arg expects name=value, got '" + arg + "'");
    auto key = arg.substr(0, eq);
    const auto value = arg.substr(eq + 1);
    if (const auto dot = key.find('.'); dot != std::string::npos) {
      const auto miner = key.substr(0, dot);
      if (!out.contains(miner)) throw UsageError("--miner-arg for unselected miner '" + miner + "'");
      out[miner][key.substr(dot + 1)] = value;
      continue;
    }
    bool used = false;
    for (const auto& m : miners) {
      const auto& keys = miner_param_keys(m);
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) continue;
      out[m][key] = value;
      used = true;
    }
    if (!used) throw UsageError("no selected miner accepts parameter '" + key + "'");
  }
  return out;
}

inline std::vector<std::string> select_miners(const std::string& spec) {
  if (spec == "all") return miner_names();
  std::vector<std::string> out;
  std::stringstream ss(spec);
  for (std::string name; std::getline(ss, name, ',');) {
    if (!is_miner(name)) throw UsageError("unknown miner '" + name + "'");
    out.push_back(name);
  }
  if (out.empty()) throw UsageError("no miners selected");
  return out;
}

inline void apply_gen_config(GenConfig& cfg, const std::string& text) {
  socmine::detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto line = socmine::detail::trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    const auto key = socmine::detail::trim(line.substr(0, eq));
    const auto value = socmine::detail::trim(line.substr(eq + 1));
    if (key == "mode") {
      cfg.mode = parse_gen_mode(value);
      return;
    }
    const auto num = socmine::detail::parse_number<std::uint64_t>(value);
    if (!num) throw ParseError(line_no, "bad value for '" + std::string(key) + "'");
    if (key == "traces") cfg.n_traces = *num;
    else if (key == "reps_min") cfg.reps_min = *num;
    else if (key == "reps_max") cfg.reps_max = *num;
    else if (key == "max_active") cfg.max_active = *num;
    else if (key == "max_step_width") cfg.max_step_width = *num;
    else if (key == "seed") cfg.seed = *num;
    else throw ParseError(line_no, "unknown generator key '" + std::string(key) + "'");
  });
}

inline std::chrono::milliseconds default_timeout() {
  if (const char* env = std::getenv(kTimeoutEnv)) {
    if (auto ms = socmine::detail::parse_number<std::int64_t>(env); ms && *ms > 0)
      return std::chrono::milliseconds(*ms);
    throw UsageError(std::string(kTimeoutEnv) + " must be a positive integer");
  }
  return std::chrono::hours(2);
}

}  // namespace detail

/// Runs one command. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SoC trace benchmark generation, specification mining and evaluation", "socmine"};
  app.require_subcommand(1, 1);

  // generate
  std::string pool_path, gen_config, out_path, mode = "SNI";
  GenConfig gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic corpus from a pattern pool");
  generate->add_option("--pool", pool_path, "Pattern pool file")->required();
  generate->add_option("--config", gen_config, "key=value generator config file");
  auto* mode_opt = generate->add_option("--mode", mode, "SNI, SI or MI");
  auto* traces_opt = generate->add_option("--traces", gen.n_traces, "Number of traces");
  auto* rmin_opt = generate->add_option("--reps-min", gen.reps_min, "Minimum repetitions per pattern");
  auto* rmax_opt = generate->add_option("--reps-max", gen.reps_max, "Maximum repetitions per pattern");
  auto* active_opt = generate->add_option("--max-active", gen.max_active, "Concurrent instances (SI, MI)");
  auto* width_opt = generate->add_option("--max-step-width", gen.max_step_width, "Events per step (MI)");
  auto* seed_opt = generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--out", out_path, "Output corpus")->required();

  // convert
  std::string in_path, format = "canonical", separator = "- - - -", flatten_name = "none", field_map_path;
  std::uint64_t flatten_seed = 0;
  bool monitor_log = false;
  auto* convert = app.add_subcommand("convert", "Convert a corpus or monitor log to another format");
  convert->add_option("--in", in_path, "Input file")->required();
  convert->add_option("--out", out_path, "Output file")->required();
  convert->add_option("--format", format, "canonical, itemset_dash, line_per_event or space_separated");
  convert->add_option("--separator", separator, "Trace separator line for line_per_event");
  convert->add_option("--flatten", flatten_name, "none, ascending_id, capture_order or random");
  convert->add_option("--flatten-seed", flatten_seed, "Seed for --flatten random");
  convert->add_flag("--monitor-log", monitor_log, "Input is a delimiter-separated monitor log");
  convert->add_option("--field-map", field_map_path, "key=value column map for --monitor-log");

  // mine
  std::string miner = "all";
  std::vector<std::string> miner_args;
  auto* mine = app.add_subcommand("mine", "Run one miner (or all) over a corpus");
  mine->add_option("--miner", miner, "seqpat, alternating, episode, ltl, flow or all")->required();
  mine->add_option("--in", in_path, "Input corpus")->required();
  mine->add_option("--out", out_path, "Output file (per-miner suffix with --miner all)")->required();
  mine->add_option("--miner-arg", miner_args, "[miner.]name=value, repeatable");
  mine->add_option("--flatten", flatten_name, "ascending_id, capture_order or random");
  mine->add_option("--flatten-seed", flatten_seed, "Seed for --flatten random");

  // eval
  std::string mined_path, gt_path, report_path, label;
  auto* eval = app.add_subcommand("eval", "Score a mined pattern file against ground truth");
  eval->add_option("--mined", mined_path, "Miner output file")->required();
  eval->add_option("--gt", gt_path, "Ground-truth pool file")->required();
  eval->add_option("--in", in_path, "Corpus, for event names and vocabulary checks");
  eval->add_option("--miner", label, "Miner label for the report");
  eval->add_option("--report", report_path, "CSV report file");

  // bench
  std::string miners_spec = "all";
  std::int64_t timeout_ms = 0;
  std::size_t max_patterns = BenchOptions{}.max_patterns;
  auto* bench = app.add_subcommand("bench", "Run and score miners against ground truth");
  bench->add_option("--in", in_path, "Input corpus")->required();
  bench->add_option("--gt", gt_path, "Ground-truth pool file")->required();
  bench->add_option("--miners", miners_spec, "Comma-separated miners or all");
  bench->add_option("--miner-arg", miner_args, "[miner.]name=value, repeatable");
  bench->add_option("--report", report_path, "CSV report file");
  bench->add_option("--timeout-ms", timeout_ms, std::string("Per-miner timeout (default ") + kTimeoutEnv +
                                                    " or 2 hours)");
  bench->add_option("--max-patterns", max_patterns, "Pattern-count guard per miner");
  bench->add_option("--flatten", flatten_name, "ascending_id, capture_order or random");
  bench->add_option("--flatten-seed", flatten_seed, "Seed for --flatten random");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "socmine: " << e.what() << '\n';
    return kUsage;
  }

  auto flatten_policy = [&](const char* fallback) {
    const auto name = flatten_name == "none" ? std::string(fallback) : flatten_name;
    return FlattenPolicy::parse(name, flatten_seed);
  };

  try {
    if (generate->parsed()) {
      GenConfig cfg;
      if (!gen_config.empty()) detail::apply_gen_config(cfg, detail::read_file(gen_config));
      if (*mode_opt) cfg.mode = parse_gen_mode(mode);
      if (*traces_opt) cfg.n_traces = gen.n_traces;
      if (*rmin_opt) cfg.reps_min = gen.reps_min;
      if (*rmax_opt) cfg.reps_max = gen.reps_max;
      if (*active_opt) cfg.max_active = gen.max_active;
      if (*width_opt) cfg.max_step_width = gen.max_step_width;
      if (*seed_opt) cfg.seed = gen.seed;
      const auto pool = parse_pool(detail::read_file(pool_path));
      detail::write_file(out_path, emit(generate_detailed(pool, cfg).corpus, ExportFormat::canonical()));
      return kOk;
    }

    if (convert->parsed()) {
      const auto text = detail::read_file(in_path);
      Corpus corpus;
      if (monitor_log) {
        const auto map = field_map_path.empty() ? FieldMap{} : FieldMap::parse(detail::read_file(field_map_path));
        corpus = ingest_monitor_log(text, map);
      } else {
        corpus = parse_canonical(text);
      }
      corpus.validate();
      if (flatten_name != "none") corpus = flatten(corpus, FlattenPolicy::parse(flatten_name, flatten_seed));
      ExportFormat fmt;
      if (format == "canonical") fmt = ExportFormat::canonical();
      else if (format == "itemset_dash") fmt = ExportFormat::itemset_dash();
      else if (format == "line_per_event") fmt = ExportFormat::line_per_event(separator);
      else if (format == "space_separated") fmt = ExportFormat::space_separated();
      else throw UsageError("unknown format '" + format + "'");
      if (!corpus.flattened() && (fmt.kind == ExportFormat::Kind::line_per_event ||
                                  fmt.kind == ExportFormat::Kind::space_separated))
        throw DataError("corpus has multi-event steps; pass --flatten for format " + format);
      detail::write_file(out_path, emit(corpus, fmt));
      return kOk;
    }

    if (mine->parsed()) {
      const auto miners = detail::select_miners(miner);
      const auto params = detail::assign_miner_args(miner_args, miners);
      auto corpus = parse_canonical(detail::read_file(in_path));
      corpus.validate();
      corpus = flatten(corpus, flatten_policy("ascending_id"));
      for (const auto& m : miners) {
        const auto result = run_miner(m, corpus, params.at(m));
        for (const auto& note : result.notes) err << "socmine: " << m << ": " << note << '\n';
        detail::write_file(miner == "all" ? detail::per_miner_path(out_path, m) : out_path, result.text);
      }
      return kOk;
    }

    if (eval->parsed()) {
      const auto pool = parse_pool(detail::read_file(gt_path));
      std::optional<Corpus> corpus;
      if (!in_path.empty()) {
        corpus = parse_canonical(detail::read_file(in_path));
        check_vocabulary(*corpus, pool);
      }
      const auto seqs = parse_mined_output(detail::read_file(mined_path), corpus ? &corpus->vocabulary : nullptr);
      std::vector<MinedPattern> patterns;
      for (const auto& s : seqs) patterns.push_back(MinedPattern{s, 0, std::nullopt, {}});
      const auto name = label.empty() ? std::filesystem::path(mined_path).stem().string() : label;
      const auto corpus_name = in_path.empty() ? std::string("-") : std::filesystem::path(in_path).stem().string();
      const std::vector<EvalReport> reports{summarize(name, corpus_name, std::move(patterns), pool)};
      out << format_table(reports);
      if (!report_path.empty()) detail::write_file(report_path, format_csv(reports));
      return kOk;
    }

    if (bench->parsed()) {
      const auto miners = detail::select_miners(miners_spec);
      auto params = detail::assign_miner_args(miner_args, miners);
      const auto corpus = parse_canonical(detail::read_file(in_path));
      const auto pool = parse_pool(detail::read_file(gt_path));
      BenchOptions options;
      options.timeout = timeout_ms > 0 ? std::chrono::milliseconds(timeout_ms) : detail::default_timeout();
      options.max_patterns = max_patterns;
      options.flatten = flatten_policy("ascending_id");
      options.corpus_label = std::filesystem::path(in_path).stem().string();
      std::vector<MinerSpec> specs;
      for (const auto& m : miners) specs.push_back(MinerSpec{m, params[m], std::nullopt, {}});
      const auto reports = run_benchmark(corpus, pool, specs, options);
      out << format_table(reports);
      if (!report_path.empty()) detail::write_file(report_path, format_csv(reports));
      const bool incomplete = std::any_of(reports.begin(), reports.end(),
                                          [](const EvalReport& r) { return r.incomplete(); });
      return incomplete ? kIncomplete : kOk;
    }
  } catch (const UsageError& e) {
    err << "socmine: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "socmine: " << e.what() << '\n';
    return kData;
  } catch (const Error& e) {
    err << "socmine: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace socmine::cli
