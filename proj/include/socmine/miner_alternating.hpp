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
#include <sstream>
#include <stop_token>
#include <string>
#include <vector>

#include "socmine/error.hpp"
#include "socmine/trace_model.hpp"

namespace socmine {

/// Pair (x, y) whose {x,y}-projection of a sub-trace should match (x y)*.
struct AlternatingProperty {
  EventId x = 0;
  EventId y = 0;
  double satisfaction_rate = 0.0;
  std::size_t conforming = 0;   // sub-traces matching (x y)*
  std::size_t total = 0;        // sub-traces examined
  std::size_t non_vacuous = 0;  // sub-traces where x or y occurs

  friend bool operator==(const AlternatingProperty&, const AlternatingProperty&) = default;
};

struct AlternatingChain {
  std::vector<EventId> events;
  friend bool operator==(const AlternatingChain&, const AlternatingChain&) = default;
};

namespace detail {

// Three-state recognizer for (x y)*: 0 = accepting / expecting x,
// 1 = expecting y, 2 = rejected.
inline std::uint8_t alternation_step(std::uint8_t state, bool is_x) {
  if (state == 2) return 2;
  if (is_x) return state == 0 ? 1 : 2;
  return state == 1 ? 0 : 2;
}

/// [begin, end) step ranges of k near-equal contiguous parts; the remainder
/// goes to the first parts.
inline std::vector<std::pair<std::size_t, std::size_t>> partition_bounds(std::size_t n, std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(k);
  const auto base = n / k;
  const auto rem = n % k;
  std::size_t begin = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const auto len = base + (j < rem ? 1 : 0);
    out.emplace_back(begin, begin + len);
    begin += len;
  }
  return out;
}

inline void check_rate(double min_rate) {
  if (!(min_rate > 0.0 && min_rate <= 1.0)) throw UsageError("min_rate must lie in (0, 1]");
}

}  // namespace detail

/// Scans every sub-trace of every trace for the pair (x, y).
inline AlternatingProperty scan_pair_detail(const Corpus& corpus, EventId x, EventId y,
                                            std::size_t k_partitions) {
  if (x == y) throw UsageError("alternating pair needs x != y");
  if (k_partitions == 0) throw UsageError("k_partitions must be at least 1");
  AlternatingProperty prop{x, y};
  for (const auto& trace : corpus.traces) {
    const auto seq = event_sequence(trace);
    for (auto [begin, end] : detail::partition_bounds(seq.size(), k_partitions)) {
      std::uint8_t state = 0;
      bool seen = false;
      for (auto i = begin; i < end && state != 2; ++i) {
        if (seq[i] != x && seq[i] != y) continue;
        seen = true;
        state = detail::alternation_step(state, seq[i] == x);
      }
      ++prop.total;
      if (seen) ++prop.non_vacuous;
      if (state == 0) ++prop.conforming;
    }
  }
  prop.satisfaction_rate =
      prop.total == 0 ? 1.0 : static_cast<double>(prop.conforming) / static_cast<double>(prop.total);
  return prop;
}

/// Fraction of sub-traces conforming to (x y)*. An empty projection conforms.
inline double scan_pair(const Corpus& corpus, EventId x, EventId y, std::size_t k_partitions) {
  return scan_pair_detail(corpus, x, y, k_partitions).satisfaction_rate;
}

/// Every ordered pair of distinct occurring events with rate >= min_rate and
/// at least one non-vacuous sub-trace. Sorted by rate descending, then (x, y).
///
/// All pairs are scanned in one pass per sub-trace: each event advances the
/// recognizers of the pairs it participates in.
inline std::vector<AlternatingProperty> mine_alternating(const Corpus& corpus, std::size_t k_partitions,
                                                         double min_rate, std::stop_token stop = {}) {
  if (k_partitions == 0) throw UsageError("k_partitions must be at least 1");
  detail::check_rate(min_rate);
  const auto seqs = corpus.sequences();

  std::vector<std::int64_t> index(corpus.vocabulary.size(), -1);
  std::vector<EventId> events;
  for (const auto& s : seqs)
    for (auto e : s)
      if (index[e] < 0) {
        index[e] = 0;
        events.push_back(e);
      }
  std::sort(events.begin(), events.end());
  for (std::size_t i = 0; i < events.size(); ++i) index[events[i]] = static_cast<std::int64_t>(i);

  const auto m = events.size();
  std::vector<std::uint8_t> state(m * m);
  std::vector<std::uint8_t> occurs(m);
  std::vector<std::uint32_t> conforming(m * m, 0);
  std::vector<std::uint32_t> non_vacuous(m * m, 0);
  std::size_t total = 0;

  for (const auto& seq : seqs) {
    if (stop.stop_requested()) throw Cancelled();
    for (auto [begin, end] : detail::partition_bounds(seq.size(), k_partitions)) {
      std::fill(state.begin(), state.end(), 0);
      std::fill(occurs.begin(), occurs.end(), 0);
      for (auto i = begin; i < end; ++i) {
        const auto a = static_cast<std::size_t>(index[seq[i]]);
        occurs[a] = 1;
        for (std::size_t b = 0; b < m; ++b) {
          if (b == a) continue;
          auto& as_x = state[a * m + b];
          as_x = detail::alternation_step(as_x, true);
          auto& as_y = state[b * m + a];
          as_y = detail::alternation_step(as_y, false);
        }
      }
      ++total;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          if (a == b) continue;
          if (state[a * m + b] == 0) ++conforming[a * m + b];
          if (occurs[a] || occurs[b]) ++non_vacuous[a * m + b];
        }
    }
  }

  std::vector<AlternatingProperty> out;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b || non_vacuous[a * m + b] == 0) continue;
      const double rate = static_cast<double>(conforming[a * m + b]) / static_cast<double>(total);
      if (rate + 1e-12 < min_rate) continue;
      out.push_back({events[a], events[b], rate, conforming[a * m + b], total, non_vacuous[a * m + b]});
    }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    if (l.satisfaction_rate != r.satisfaction_rate) return l.satisfaction_rate > r.satisfaction_rate;
    return std::pair(l.x, l.y) < std::pair(r.x, r.y);
  });
  return out;
}

/// Maximal simple paths of at least three events in the graph whose edges are
/// the given properties. A path stops before revisiting an event. Sorted
/// lexicographically.
inline std::vector<AlternatingChain> chain(const std::vector<AlternatingProperty>& props) {
  std::map<EventId, std::vector<EventId>> succ;
  std::map<EventId, std::vector<EventId>> pred;
  for (const auto& p : props) {
    succ[p.x].push_back(p.y);
    pred[p.y].push_back(p.x);
    succ.try_emplace(p.y);
    pred.try_emplace(p.x);
  }
  for (auto& [_, v] : succ) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::vector<AlternatingChain> out;
  std::vector<EventId> path;
  auto on_path = [&](EventId e) { return std::find(path.begin(), path.end(), e) != path.end(); };

  auto dfs = [&](auto&& self) -> void {
    bool extended = false;
    for (auto next : succ[path.back()]) {
      if (on_path(next)) continue;
      extended = true;
      path.push_back(next);
      self(self);
      path.pop_back();
    }
    if (extended || path.size() < 3) return;
    const auto& in = pred[path.front()];
    if (std::any_of(in.begin(), in.end(), [&](EventId e) { return !on_path(e); })) return;
    out.push_back({path});
  };

  for (const auto& [start, _] : succ) {
    path.assign(1, start);
    dfs(dfs);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return l.events < r.events; });
  return out;
}

/// "x -> y rate=r" per property, then "x -> y -> z" per chain.
inline std::string emit_alternating(const std::vector<AlternatingProperty>& props,
                                    const std::vector<AlternatingChain>& chains) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  for (const auto& p : props) out << p.x << " -> " << p.y << " rate=" << p.satisfaction_rate << '\n';
  for (const auto& c : chains) {
    for (std::size_t i = 0; i < c.events.size(); ++i) out << (i ? " -> " : "") << c.events[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace socmine
