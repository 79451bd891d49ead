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
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "socmine/error.hpp"
#include "socmine/trace_model.hpp"

namespace socmine {

/// a => later b. support counts a-occurrences with a later b in the same
/// trace; confidence divides by all a-occurrences, corpus-wide.
struct BinaryRule {
  EventId a = 0;
  EventId b = 0;
  std::uint64_t support = 0;
  double confidence = 0.0;

  friend bool operator==(const BinaryRule&, const BinaryRule&) = default;
};

struct FlowConfig {
  std::uint64_t min_support = 1;
  double min_confidence = 1.0;
  std::size_t max_chain_len = 6;

  void validate() const {
    if (min_support == 0) throw UsageError("min_support must be at least 1");
    if (!(min_confidence > 0.0 && min_confidence <= 1.0))
      throw UsageError("min_confidence must lie in (0, 1]");
    if (max_chain_len < 2) throw UsageError("max_chain_len must be at least 2");
  }
};

inline std::vector<BinaryRule> mine_binary_rules(const Corpus& corpus, const FlowConfig& cfg,
                                                 std::stop_token stop = {}) {
  cfg.validate();
  const auto n = corpus.vocabulary.size();
  std::vector<std::uint64_t> matched(n * n, 0);
  std::vector<std::uint64_t> total(n, 0);
  std::vector<std::vector<std::size_t>> positions(n);
  std::vector<EventId> present;

  for (const auto& trace : corpus.traces) {
    if (stop.stop_requested()) throw Cancelled();
    const auto seq = event_sequence(trace);
    for (auto e : present) positions[e].clear();
    present.clear();
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (positions[seq[i]].empty()) present.push_back(seq[i]);
      positions[seq[i]].push_back(i);
    }
    for (auto a : present) {
      const auto& pa = positions[a];
      total[a] += pa.size();
      for (auto b : present) {
        if (a == b) continue;
        // a-occurrences strictly before the last b have a later b.
        const auto last_b = positions[b].back();
        matched[a * n + b] += static_cast<std::uint64_t>(
            std::lower_bound(pa.begin(), pa.end(), last_b) - pa.begin());
      }
    }
  }

  std::vector<BinaryRule> out;
  for (EventId a = 0; a < n; ++a) {
    if (total[a] == 0) continue;
    for (EventId b = 0; b < n; ++b) {
      const auto m = matched[a * n + b];
      if (a == b || m < cfg.min_support) continue;
      const double conf = static_cast<double>(m) / static_cast<double>(total[a]);
      if (conf + 1e-12 >= cfg.min_confidence) out.push_back({a, b, m, conf});
    }
  }
  return out;
}

/// Chains rules breadth-wise: p grows to p + [c] when (p.last, c) is a rule and
/// p + [c] is a subsequence of at least min_support traces. Returns every
/// pattern that could not grow (length >= 3) plus each rule that does not
/// appear as an adjacent pair inside one of them. Supports are supporting-trace
/// counts; rules keep their matched count under extra["rule_support"].
inline std::vector<MinedPattern> chain_rules(const std::vector<BinaryRule>& rules, const Corpus& corpus,
                                             const FlowConfig& cfg, std::stop_token stop = {}) {
  cfg.validate();
  const auto seqs = corpus.sequences();
  std::map<EventId, std::vector<EventId>> succ;
  for (const auto& r : rules) succ[r.a].push_back(r.b);
  for (auto& [_, v] : succ) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::vector<MinedPattern> out;
  std::set<std::pair<EventId, EventId>> absorbed;
  std::vector<std::pair<Sequence, std::uint64_t>> level;
  for (const auto& r : rules) {
    Sequence p{r.a, r.b};
    level.emplace_back(p, sequence_support(seqs, p));
  }

  while (!level.empty()) {
    std::vector<std::pair<Sequence, std::uint64_t>> next;
    for (const auto& [p, sup] : level) {
      if (stop.stop_requested()) throw Cancelled();
      bool grew = false;
      if (p.size() < cfg.max_chain_len) {
        auto it = succ.find(p.back());
        if (it != succ.end())
          for (auto c : it->second) {
            auto q = p;
            q.push_back(c);
            const auto s = sequence_support(seqs, q);
            if (s < cfg.min_support) continue;
            grew = true;
            next.emplace_back(std::move(q), s);
          }
      }
      if (!grew && p.size() >= 3) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i) absorbed.emplace(p[i], p[i + 1]);
        out.push_back(MinedPattern{p, sup, std::nullopt, {}});
      }
    }
    level = std::move(next);
  }

  for (const auto& r : rules) {
    if (absorbed.contains({r.a, r.b})) continue;
    Sequence p{r.a, r.b};
    MinedPattern m{p, sequence_support(seqs, p), r.confidence, {}};
    m.extra["rule_support"] = static_cast<double>(r.support);
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.sequence < r.sequence; });
  return out;
}

/// Rules as "a -> b [sup=s conf=c]", then patterns as "e1 e2 ... ek [sup=s]".
inline std::string emit_flow(const std::vector<BinaryRule>& rules, const std::vector<MinedPattern>& patterns) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  for (const auto& r : rules)
    out << r.a << " -> " << r.b << " [sup=" << r.support << " conf=" << r.confidence << "]\n";
  for (const auto& p : patterns) {
    for (auto e : p.sequence) out << e << ' ';
    out << "[sup=" << p.support << "]\n";
  }
  return out.str();
}

}  // namespace socmine
