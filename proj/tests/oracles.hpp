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

// Brute-force reference implementations used only by the tests. They share
// no code with the miners beyond the data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "socmine/trace_model.hpp"

namespace socmine::testing {

/// The worked-example trace: ({1,3}, 1, 2, 5, 1, 5, 6, 2, 4, 6, 2).
inline Trace example_trace() {
  return Trace{Step{1, 3}, Step{1}, Step{2}, Step{5}, Step{1}, Step{5},
               Step{6},    Step{2}, Step{4}, Step{6}, Step{2}};
}

/// Hand-flattened worked example, {1,3} expanded as 1 then 3.
inline Sequence example_flat_sequence() { return {1, 3, 1, 2, 5, 1, 5, 6, 2, 4, 6, 2}; }

inline Corpus example_corpus() { return Corpus{Vocabulary::synthetic(7), {example_trace()}, "example"}; }

inline Corpus example_flat_corpus() {
  return Corpus{Vocabulary::synthetic(7), {single_event_trace(example_flat_sequence())}, "example-flat"};
}

inline PatternPool flows_pool() { return PatternPool{{1, 2}, {1, 5, 6, 2}, {3, 4}, {3, 5, 6, 4}}; }

inline Corpus corpus_of(std::vector<Sequence> seqs, std::size_t vocab = 0) {
  Corpus c;
  EventId max = 0;
  for (const auto& s : seqs) {
    for (auto e : s) max = std::max(max, e);
    c.traces.push_back(single_event_trace(s));
  }
  c.vocabulary = Vocabulary::synthetic(std::max<std::size_t>(vocab, max + 1));
  return c;
}

/// Random flattened corpus: 1..max_traces traces of 0..max_len events over
/// an alphabet of `vocab` ids.
inline std::vector<Sequence> random_sequences(std::mt19937& rng, std::size_t max_traces, std::size_t max_len,
                                              std::size_t vocab) {
  std::uniform_int_distribution<std::size_t> n_traces(1, max_traces);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<EventId> event(0, static_cast<EventId>(vocab - 1));
  std::vector<Sequence> out(n_traces(rng));
  for (auto& s : out) {
    s.resize(len(rng));
    for (auto& e : s) e = event(rng);
  }
  return out;
}

inline bool naive_contains(const Sequence& seq, const Sequence& pat) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < seq.size() && j < pat.size(); ++i)
    if (seq[i] == pat[j]) ++j;
  return j == pat.size();
}

inline std::set<EventId> alphabet_of(const std::vector<Sequence>& seqs) {
  std::set<EventId> out;
  for (const auto& s : seqs) out.insert(s.begin(), s.end());
  return out;
}

/// Every subsequence of every trace with its supporting-trace count.
inline std::map<Sequence, std::uint64_t> oracle_seqpat(const std::vector<Sequence>& seqs,
                                                       std::uint64_t min_support, std::size_t max_len) {
  std::map<Sequence, std::uint64_t> counts;
  for (const auto& s : seqs) {
    std::set<Sequence> mine;
    const std::size_t n = s.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Sequence sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) sub.push_back(s[i]);
      if (sub.size() <= max_len) mine.insert(sub);
    }
    for (const auto& sub : mine) ++counts[sub];
  }
  std::erase_if(counts, [&](const auto& kv) { return kv.second < min_support; });
  return counts;
}

struct OracleAlternating {
  EventId x, y;
  std::size_t conforming, total, non_vacuous;
};

/// Regex check of each sub-trace projection against (xy)*.
inline std::vector<OracleAlternating> oracle_alternating(const std::vector<Sequence>& seqs, std::size_t k,
                                                         double min_rate) {
  static const std::regex alternation("(xy)*");
  const auto alphabet = alphabet_of(seqs);
  std::vector<OracleAlternating> out;
  for (auto x : alphabet)
    for (auto y : alphabet) {
      if (x == y) continue;
      OracleAlternating r{x, y, 0, 0, 0};
      for (const auto& s : seqs) {
        // Part j gets floor(n/k) steps, plus one for the first n%k parts.
        std::size_t begin = 0;
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t len = s.size() / k + (j < s.size() % k ? 1 : 0);
          std::string projection;
          for (std::size_t i = begin; i < begin + len; ++i) {
            if (s[i] == x) projection += 'x';
            if (s[i] == y) projection += 'y';
          }
          begin += len;
          ++r.total;
          if (!projection.empty()) ++r.non_vacuous;
          if (std::regex_match(projection, alternation)) ++r.conforming;
        }
      }
      const double rate = static_cast<double>(r.conforming) / static_cast<double>(r.total);
      if (r.non_vacuous > 0 && rate + 1e-12 >= min_rate) out.push_back(r);
    }
  return out;
}

/// Window count by slicing every window and testing containment.
inline std::uint64_t oracle_window_count(const Sequence& s, const Sequence& ep, std::size_t w) {
  if (s.size() < w) return naive_contains(s, ep) ? 1 : 0;
  std::uint64_t n = 0;
  for (std::size_t start = 0; start + w <= s.size(); ++start) {
    Sequence window(s.begin() + static_cast<std::ptrdiff_t>(start),
                    s.begin() + static_cast<std::ptrdiff_t>(start + w));
    if (naive_contains(window, ep)) ++n;
  }
  return n;
}

struct OracleEpisode {
  Sequence episode;
  std::uint64_t support;
  double confidence;
};

/// Enumerates every episode of length 2..max_len over the occurring alphabet.
inline std::vector<OracleEpisode> oracle_episodes(const std::vector<Sequence>& seqs, std::size_t w,
                                                  std::uint64_t min_support, double min_confidence,
                                                  std::size_t max_len) {
  const auto alphabet = alphabet_of(seqs);
  auto support = [&](const Sequence& ep) {
    std::uint64_t total = 0;
    for (const auto& s : seqs) total += oracle_window_count(s, ep, w);
    return total;
  };
  std::vector<OracleEpisode> out;
  std::vector<Sequence> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Sequence> next;
    for (const auto& base : frontier)
      for (auto a : alphabet) {
        auto ep = base;
        ep.push_back(a);
        next.push_back(ep);
      }
    for (const auto& ep : next) {
      if (ep.size() < 2) continue;
      const auto s = support(ep);
      if (s < min_support) continue;
      const auto prefix = support(Sequence(ep.begin(), ep.end() - 1));
      const double conf = static_cast<double>(s) / static_cast<double>(prefix);
      if (conf + 1e-12 >= min_confidence) out.push_back({ep, s, conf});
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.episode < r.episode; });
  return out;
}

/// For every x occurrence, look for a strictly later y.
inline bool oracle_follows_holds(const std::vector<Sequence>& seqs, EventId x, EventId y) {
  for (const auto& s : seqs)
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != x) continue;
      bool answered = false;
      for (std::size_t j = i + 1; j < s.size() && !answered; ++j) answered = s[j] == y;
      if (!answered) return false;
    }
  return true;
}

inline std::vector<std::pair<EventId, EventId>> oracle_follows(const std::vector<Sequence>& seqs,
                                                               std::size_t vocab) {
  const auto occurring = alphabet_of(seqs);
  std::vector<std::pair<EventId, EventId>> out;
  for (EventId x = 0; x < vocab; ++x)
    for (EventId y = 0; y < vocab; ++y)
      if (x != y && occurring.contains(x) && oracle_follows_holds(seqs, x, y)) out.emplace_back(x, y);
  return out;
}

struct OracleRule {
  EventId a, b;
  std::uint64_t matched, total;
};

/// Forward-response rules by scanning ahead from every a-occurrence.
inline std::vector<OracleRule> oracle_rules(const std::vector<Sequence>& seqs, std::uint64_t min_support,
                                            double min_confidence) {
  const auto alphabet = alphabet_of(seqs);
  std::vector<OracleRule> out;
  for (auto a : alphabet)
    for (auto b : alphabet) {
      if (a == b) continue;
      OracleRule r{a, b, 0, 0};
      for (const auto& s : seqs)
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i] != a) continue;
          ++r.total;
          if (std::find(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end(), b) != s.end()) ++r.matched;
        }
      const double conf = static_cast<double>(r.matched) / static_cast<double>(r.total);
      if (r.matched >= min_support && conf + 1e-12 >= min_confidence) out.push_back(r);
    }
  return out;
}

inline std::uint64_t oracle_trace_support(const std::vector<Sequence>& seqs, const Sequence& p) {
  std::uint64_t n = 0;
  for (const auto& s : seqs) n += naive_contains(s, p);
  return n;
}

/// Enumerates every rule-linked sequence up to max_len whose prefixes all
/// reach min_support traces, then keeps the non-extendable ones (length >= 3)
/// plus the rules that are not adjacent pairs inside them.
inline std::set<Sequence> oracle_flow_patterns(const std::vector<Sequence>& seqs, std::uint64_t min_support,
                                               double min_confidence, std::size_t max_len) {
  const auto rules = oracle_rules(seqs, min_support, min_confidence);
  std::set<std::pair<EventId, EventId>> edges;
  for (const auto& r : rules) edges.emplace(r.a, r.b);
  const auto alphabet = alphabet_of(seqs);

  auto valid = [&](const Sequence& p) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!edges.contains({p[i], p[i + 1]})) return false;
    for (std::size_t len = 3; len <= p.size(); ++len)
      if (oracle_trace_support(seqs, Sequence(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(len))) <
          min_support)
        return false;
    return true;
  };

  std::set<Sequence> all;
  std::vector<Sequence> frontier;
  for (const auto& [a, b] : edges) frontier.push_back({a, b});
  all.insert(frontier.begin(), frontier.end());
  for (std::size_t len = 3; len <= max_len; ++len) {
    std::vector<Sequence> next;
    for (const auto& base : frontier)
      for (auto c : alphabet) {
        auto p = base;
        p.push_back(c);
        if (valid(p)) next.push_back(p);
      }
    all.insert(next.begin(), next.end());
    frontier = std::move(next);
  }

  std::set<Sequence> out;
  std::set<std::pair<EventId, EventId>> absorbed;
  for (const auto& p : all) {
    if (p.size() < 3) continue;
    bool extendable = false;
    if (p.size() < max_len)
      for (auto c : alphabet) {
        auto q = p;
        q.push_back(c);
        extendable = extendable || all.contains(q);
      }
    if (extendable) continue;
    out.insert(p);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) absorbed.emplace(p[i], p[i + 1]);
  }
  for (const auto& [a, b] : edges)
    if (!absorbed.contains({a, b})) out.insert(Sequence{a, b});
  return out;
}

}  // namespace socmine::testing
