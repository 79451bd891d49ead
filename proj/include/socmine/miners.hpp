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
#include <cstdint>
#include <map>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "socmine/error.hpp"
#include "socmine/miner_alternating.hpp"
#include "socmine/miner_episode.hpp"
#include "socmine/miner_flow.hpp"
#include "socmine/miner_ltl.hpp"
#include "socmine/miner_seqpat.hpp"
#include "socmine/trace_io.hpp"
#include "socmine/trace_model.hpp"

namespace socmine {

/// name=value parameters for one miner; missing keys take the miner defaults.
using MinerParams = std::map<std::string, std::string>;

struct MinerOutput {
  std::vector<MinedPattern> patterns;  // what the evaluator scores
  std::string text;                    // native output format
  std::vector<std::string> notes;
};

inline const std::vector<std::string>& miner_names() {
  static const std::vector<std::string> names{"seqpat", "alternating", "episode", "ltl", "flow"};
  return names;
}

inline bool is_miner(std::string_view name) {
  const auto& n = miner_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

/// Accepted parameter keys per miner.
inline const std::vector<std::string>& miner_param_keys(std::string_view miner) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> keys{
      {"seqpat", {"min_support", "max_len", "max_patterns"}},
      {"alternating", {"k", "min_rate", "chains"}},
      {"episode", {"window", "min_support", "min_confidence", "max_len"}},
      {"ltl", {}},
      {"flow", {"min_support", "min_confidence", "max_chain_len"}},
  };
  auto it = keys.find(miner);
  if (it == keys.end()) throw UsageError("unknown miner '" + std::string(miner) + "'");
  return it->second;
}

namespace detail {

class ParamReader {
 public:
  ParamReader(std::string_view miner, const MinerParams& params) : miner_(miner), params_(params) {
    const auto& keys = miner_param_keys(miner);
    for (const auto& [k, _] : params)
      if (std::find(keys.begin(), keys.end(), k) == keys.end())
        throw UsageError("miner '" + miner_ + "' has no parameter '" + k + "'");
  }

  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    auto v = parse_number<std::uint64_t>(it->second);
    if (!v) throw UsageError(miner_ + "." + key + ": expected a non-negative integer, got '" + it->second + "'");
    return *v;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    auto v = parse_number<double>(it->second);
    if (!v) throw UsageError(miner_ + "." + key + ": expected a number, got '" + it->second + "'");
    return *v;
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw UsageError(miner_ + "." + key + ": expected true or false");
  }

  bool has(const std::string& key) const { return params_.contains(key); }

 private:
  std::string miner_;
  const MinerParams& params_;
};

}  // namespace detail

/// Runs one miner on a flattened corpus. `max_patterns` bounds the number of
/// patterns a miner may hold; exceeding it throws PatternLimitExceeded.
inline MinerOutput run_miner(std::string_view miner, const Corpus& corpus, const MinerParams& params,
                             std::optional<std::size_t> max_patterns = std::nullopt,
                             std::stop_token stop = {}) {
  const detail::ParamReader p(miner, params);
  MinerOutput out;

  if (miner == "seqpat") {
    SeqpatConfig cfg;
    cfg.min_support = p.get_uint("min_support", 1);
    // max_len=0 lifts the length cap.
    if (const auto len = p.get_uint("max_len", 4); len != 0) cfg.max_len = len;
    cfg.max_patterns = p.has("max_patterns") ? std::optional<std::size_t>(p.get_uint("max_patterns", 0))
                                             : max_patterns;
    out.patterns = mine_frequent(corpus, cfg, stop);
    out.text = emit_seqpat(out.patterns);
  } else if (miner == "alternating") {
    const auto k = p.get_uint("k", 10);
    const auto props = mine_alternating(corpus, k, p.get_double("min_rate", 1.0), stop);
    const auto chains = p.get_bool("chains", true) ? chain(props) : std::vector<AlternatingChain>{};
    for (const auto& prop : props) {
      MinedPattern m{{prop.x, prop.y}, prop.conforming, std::nullopt, {}};
      m.extra["satisfaction_rate"] = prop.satisfaction_rate;
      out.patterns.push_back(std::move(m));
    }
    for (const auto& c : chains) out.patterns.push_back(MinedPattern{c.events, 0, std::nullopt, {{"chain", 1.0}}});
    out.text = emit_alternating(props, chains);
  } else if (miner == "episode") {
    EpisodeConfig cfg;
    cfg.window_w = p.get_uint("window", 4);
    cfg.min_support = p.get_uint("min_support", 1);
    cfg.min_confidence = p.get_double("min_confidence", 1.0);
    // max_len=0 lifts the length cap.
    if (const auto len = p.get_uint("max_len", 4); len != 0) cfg.max_len = len;
    cfg.max_patterns = max_patterns;
    out.patterns = mine_episodes(corpus, cfg, stop);
    out.text = emit_episodes(out.patterns);
    if (window_covers_all_traces(corpus, cfg.window_w))
      out.notes.push_back("window exceeds every trace; each trace is a single window");
  } else if (miner == "ltl") {
    const auto instances = mine_follows(corpus, stop);
    std::vector<std::uint64_t> traces_with(corpus.vocabulary.size(), 0);
    for (const auto& t : corpus.traces) {
      std::vector<bool> seen(corpus.vocabulary.size(), false);
      for (const auto& s : t) seen[s.front()] = true;
      for (std::size_t e = 0; e < seen.size(); ++e) traces_with[e] += seen[e];
    }
    for (const auto& f : instances) out.patterns.push_back(MinedPattern{{f.x, f.y}, traces_with[f.x], std::nullopt, {}});
    out.text = emit_follows(instances, corpus.vocabulary);
  } else if (miner == "flow") {
    FlowConfig cfg;
    cfg.min_support = p.get_uint("min_support", 1);
    cfg.min_confidence = p.get_double("min_confidence", 1.0);
    cfg.max_chain_len = p.get_uint("max_chain_len", 6);
    const auto rules = mine_binary_rules(corpus, cfg, stop);
    out.patterns = chain_rules(rules, corpus, cfg, stop);
    out.text = emit_flow(rules, out.patterns);
  }

  if (max_patterns && out.patterns.size() > *max_patterns) {
    out.patterns.resize(*max_patterns);
    throw PatternLimitExceeded(*max_patterns, std::move(out.patterns));
  }
  return out;
}

/// Recovers event sequences from any miner's native output, or from a pool
/// file. Flow rule statistics ("a -> b [sup=..]") are skipped. Names in
/// follows lines are resolved through `vocab`.
inline std::vector<Sequence> parse_mined_output(std::string_view text, const Vocabulary* vocab = nullptr) {
  std::vector<Sequence> out;
  auto resolve = [&](std::size_t line_no, std::string_view tok) -> EventId {
    if (auto id = detail::parse_number<EventId>(tok)) return *id;
    if (vocab)
      if (auto id = vocab->lookup(tok)) return *id;
    throw ParseError(line_no, "unknown event '" + std::string(tok) + "'");
  };

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') return;
    Sequence seq;
    if (line.starts_with("G(x -> XF y):")) {
      const auto x = line.find(" x=");
      const auto y = line.find(" y=");
      if (x == std::string_view::npos || y == std::string_view::npos || y < x)
        throw ParseError(line_no, "malformed follows instance");
      seq.push_back(resolve(line_no, detail::trim(line.substr(x + 3, y - x - 3))));
      seq.push_back(resolve(line_no, detail::trim(line.substr(y + 3))));
    } else if (line.find("->") != std::string_view::npos) {
      if (line.find("[sup=") != std::string_view::npos) return;
      if (auto r = line.find(" rate="); r != std::string_view::npos) line = line.substr(0, r);
      std::size_t pos = 0;
      while (true) {
        const auto arrow = line.find("->", pos);
        seq.push_back(resolve(line_no, detail::trim(line.substr(pos, arrow == std::string_view::npos ? arrow : arrow - pos))));
        if (arrow == std::string_view::npos) break;
        pos = arrow + 2;
      }
    } else {
      for (auto tok : detail::split_ws(line)) {
        if (tok.front() == '#' || tok.front() == '[') break;
        if (tok == "-1" || tok == "-2") continue;
        seq.push_back(resolve(line_no, tok));
      }
    }
    if (!seq.empty()) out.push_back(std::move(seq));
  });
  return out;
}

/// Pool file: one pattern per line, space-separated ids, '#' comments.
inline PatternPool parse_pool(std::string_view text) {
  std::vector<GroundTruthPattern> patterns;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') return;
    Sequence seq;
    for (auto tok : detail::split_ws(line)) {
      auto id = detail::parse_number<EventId>(tok);
      if (!id) throw ParseError(line_no, "bad event id '" + std::string(tok) + "'");
      seq.push_back(*id);
    }
    try {
      patterns.emplace_back(std::move(seq));
    } catch (const DataError& e) {
      throw ParseError(line_no, e.what());
    }
  });
  return PatternPool(std::move(patterns));
}

inline std::string emit_pool(const PatternPool& pool) {
  std::string out;
  for (const auto& p : pool) {
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + std::to_string(p.sequence[i]);
    out += '\n';
  }
  return out;
}

}  // namespace socmine
