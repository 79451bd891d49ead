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

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "socmine/error.hpp"
#include "socmine/miners.hpp"
#include "socmine/trace_io.hpp"
#include "socmine/trace_model.hpp"

namespace socmine {

struct Score {
  double precision = 0.0;
  double recall = 0.0;
};

/// Exact-sequence precision and recall. Duplicate mined sequences count once;
/// an empty mined set scores (0, 0).
inline Score score(std::span<const Sequence> mined, const PatternPool& gt) {
  const std::set<Sequence> distinct(mined.begin(), mined.end());
  std::set<Sequence> truth;
  for (const auto& p : gt) truth.insert(p.sequence);
  if (distinct.empty()) return {};
  std::size_t hits = 0;
  for (const auto& m : distinct) hits += truth.contains(m);
  return {static_cast<double>(hits) / static_cast<double>(distinct.size()),
          static_cast<double>(hits) / static_cast<double>(truth.size())};
}

inline Score score(const std::vector<MinedPattern>& mined, const PatternPool& gt) {
  std::vector<Sequence> seqs;
  seqs.reserve(mined.size());
  for (const auto& m : mined) seqs.push_back(m.sequence);
  return score(seqs, gt);
}

enum class RunStatus { complete, timeout, memory_guard, error };

inline std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::complete: return "complete";
    case RunStatus::timeout: return "timeout";
    case RunStatus::memory_guard: return "memory_guard";
    case RunStatus::error: return "error";
  }
  return "?";
}

struct EvalReport {
  std::string miner;
  std::string corpus;
  std::size_t n_patterns = 0;
  std::size_t n_binary = 0;
  double precision = 0.0;
  double recall = 0.0;
  std::int64_t runtime_ms = 0;
  std::map<std::size_t, std::size_t> length_histogram;
  RunStatus status = RunStatus::complete;
  std::string note;
  std::vector<MinedPattern> patterns;  // what was scored

  bool incomplete() const noexcept { return status != RunStatus::complete; }
};

/// A miner to benchmark. `run` overrides the registry lookup by name.
struct MinerSpec {
  std::string name;
  MinerParams params;
  std::optional<std::chrono::milliseconds> timeout;
  std::function<MinerOutput(const Corpus&, std::stop_token)> run;
};

struct BenchOptions {
  std::chrono::milliseconds timeout = std::chrono::hours(2);
  std::size_t max_patterns = 5'000'000;
  FlattenPolicy flatten = FlattenPolicy::ascending_id();
  std::string corpus_label = "corpus";
};

/// Throws DataError when a ground-truth pattern uses an id the corpus
/// vocabulary does not define.
inline void check_vocabulary(const Corpus& corpus, const PatternPool& gt) {
  for (const auto& p : gt)
    for (auto e : p.sequence)
      if (!corpus.vocabulary.contains(e))
        throw DataError("ground-truth event " + std::to_string(e) + " is outside the corpus vocabulary of size " +
                        std::to_string(corpus.vocabulary.size()));
}

inline EvalReport summarize(std::string miner, std::string corpus, std::vector<MinedPattern> patterns,
                            const PatternPool& gt) {
  EvalReport r;
  r.miner = std::move(miner);
  r.corpus = std::move(corpus);
  r.n_patterns = patterns.size();
  for (const auto& p : patterns) {
    ++r.length_histogram[p.sequence.size()];
    if (p.sequence.size() == 2) ++r.n_binary;
  }
  const auto s = score(patterns, gt);
  r.precision = s.precision;
  r.recall = s.recall;
  r.patterns = std::move(patterns);
  return r;
}

/// Runs the miners one after another, each alone on a worker thread under
/// its timeout. A miner that times out is asked to stop and joined before the
/// next one starts; it is reported with status timeout, as are guard trips
/// (memory_guard) and miner errors (error). Those never abort the run.
inline std::vector<EvalReport> run_benchmark(const Corpus& corpus, const PatternPool& gt,
                                             const std::vector<MinerSpec>& miners,
                                             const BenchOptions& options = {}) {
  if (miners.empty()) throw UsageError("no miners selected");
  corpus.validate();
  check_vocabulary(corpus, gt);
  for (const auto& m : miners)
    if (!m.run) (void)detail::ParamReader{m.name, m.params};  // unknown miner or key
  const auto flat = flatten(corpus, options.flatten);

  std::vector<EvalReport> reports;
  for (const auto& spec : miners) {
    using Clock = std::chrono::steady_clock;
    std::promise<MinerOutput> result;
    auto future = result.get_future();
    Clock::duration elapsed{};
    std::jthread worker([&](std::stop_token stop) {
      const auto start = Clock::now();
      try {
        auto out = spec.run ? spec.run(flat, stop)
                            : run_miner(spec.name, flat, spec.params, options.max_patterns, stop);
        elapsed = Clock::now() - start;
        result.set_value(std::move(out));
      } catch (...) {
        elapsed = Clock::now() - start;
        result.set_exception(std::current_exception());
      }
    });

    const auto timeout = spec.timeout.value_or(options.timeout);
    EvalReport report;
    if (future.wait_for(timeout) == std::future_status::timeout) {
      worker.request_stop();
      worker.join();
      report = summarize(spec.name, options.corpus_label, {}, gt);
      report.status = RunStatus::timeout;
      report.runtime_ms = timeout.count();
      report.note = "stopped after " + std::to_string(timeout.count()) + " ms";
      reports.push_back(std::move(report));
      continue;
    }
    worker.join();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    try {
      auto out = future.get();
      report = summarize(spec.name, options.corpus_label, std::move(out.patterns), gt);
      for (const auto& n : out.notes) report.note += (report.note.empty() ? "" : "; ") + n;
    } catch (const PatternLimitExceeded& e) {
      report = summarize(spec.name, options.corpus_label, e.partial(), gt);
      report.status = RunStatus::memory_guard;
      report.note = e.what();
    } catch (const Cancelled& e) {
      report = summarize(spec.name, options.corpus_label, {}, gt);
      report.status = RunStatus::timeout;
      report.note = e.what();
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      report = summarize(spec.name, options.corpus_label, {}, gt);
      report.status = RunStatus::error;
      report.note = e.what();
    }
    report.runtime_ms = ms;
    reports.push_back(std::move(report));
  }
  return reports;
}

namespace detail {
inline std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}
}  // namespace detail

/// Machine-readable report: one row per miner run, ratios with 4 decimals.
inline std::string format_csv(const std::vector<EvalReport>& reports, bool header = true) {
  std::ostringstream out;
  if (header) out << "miner,corpus,n_patterns,n_binary,precision,recall,runtime_ms,status\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& r : reports)
    out << detail::csv_field(r.miner) << ',' << detail::csv_field(r.corpus) << ',' << r.n_patterns << ','
        << r.n_binary << ',' << r.precision << ',' << r.recall << ',' << r.runtime_ms << ','
        << to_string(r.status) << '\n';
  return out.str();
}

inline std::string format_table(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "miner" << std::setw(14) << "corpus" << std::right << std::setw(9)
      << "#pat" << std::setw(7) << "#bin" << std::setw(8) << "prec" << std::setw(8) << "recall"
      << std::setw(10) << "RT(ms)" << "  " << std::left << std::setw(13) << "status" << "lengths\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& r : reports) {
    std::string lengths;
    for (const auto& [len, count] : r.length_histogram)
      lengths += (lengths.empty() ? "" : " ") + std::to_string(len) + ":" + std::to_string(count);
    out << std::left << std::setw(12) << r.miner << std::setw(14) << r.corpus << std::right << std::setw(9)
        << r.n_patterns << std::setw(7) << r.n_binary << std::setw(8) << r.precision << std::setw(8)
        << r.recall << std::setw(10) << r.runtime_ms << "  " << std::left << std::setw(13)
        << to_string(r.status) << lengths << '\n';
    if (!r.note.empty()) out << "    note: " << r.note << '\n';
  }
  return out.str();
}

}  // namespace socmine
