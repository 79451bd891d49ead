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
#include <optional>
#include <sstream>
#include <stop_token>
#include <string>
#include <vector>

#include "socmine/error.hpp"
#include "socmine/miner_seqpat.hpp"
#include "socmine/trace_model.hpp"

namespace socmine {

struct EpisodeConfig {
  std::size_t window_w = 4;  // steps
  std::uint64_t min_support = 1;  // containing windows, summed over traces
  double min_confidence = 1.0;
  std::size_t max_len = 4;
  std::optional<std::size_t> max_patterns;  // guard on frequent episodes kept

  void validate() const {
    if (window_w == 0) throw UsageError("window_w must be positive");
    if (max_len == 0) throw UsageError("max_len must be positive");
    if (max_len >= 2 && window_w < 2)
      throw UsageError("window_w must be at least 2 to observe episodes of length 2 or more");
    if (min_support == 0) throw UsageError("min_support must be at least 1");
    if (!(min_confidence > 0.0 && min_confidence <= 1.0))
      throw UsageError("min_confidence must lie in (0, 1]");
    if (max_patterns && *max_patterns == 0) throw UsageError("max_patterns must be positive");
  }
};

namespace detail {

// Sorted step positions of every event of one flattened trace.
class PositionIndex {
 public:
  PositionIndex(std::span<const EventId> seq, std::size_t alphabet)
      : length_(seq.size()), positions_(alphabet) {
    for (std::size_t i = 0; i < seq.size(); ++i) positions_[seq[i]].push_back(i);
  }

  std::size_t length() const noexcept { return length_; }

  const std::vector<std::size_t>& positions(EventId e) const {
    static const std::vector<std::size_t> kEmpty;
    return e < positions_.size() ? positions_[e] : kEmpty;
  }

  /// First position of e at or after `from`, if any.
  std::optional<std::size_t> next(EventId e, std::size_t from) const {
    const auto& p = positions(e);
    auto it = std::lower_bound(p.begin(), p.end(), from);
    if (it == p.end()) return std::nullopt;
    return *it;
  }

  /// Containing windows of width w for `episode`. Every window start s whose
  /// next occurrence of episode[0] is q shares the greedy embedding from q.
  std::uint64_t window_support(std::span<const EventId> episode, std::size_t w) const {
    if (episode.empty() || episode.size() > w) return 0;
    if (length_ < w) return embed_end(episode, 0) ? 1 : 0;
    const auto last_start = length_ - w;
    std::uint64_t count = 0;
    std::size_t lo = 0;  // first window start not yet attributed to an occurrence
    for (auto q : positions(episode[0])) {
      if (lo > last_start) break;
      const auto end = embed_end(episode, q);
      if (!end) break;
      // Starts in [lo, q] see q as the next occurrence of episode[0].
      const auto first = std::max(lo, *end + 1 >= w ? *end + 1 - w : 0);
      const auto last = std::min(q, last_start);
      if (first <= last) count += last - first + 1;
      lo = q + 1;
    }
    return count;
  }

 private:
  // Position of the last event of the leftmost embedding starting at or after `from`.
  std::optional<std::size_t> embed_end(std::span<const EventId> episode, std::size_t from) const {
    std::size_t pos = from;
    std::size_t last = 0;
    for (auto e : episode) {
      auto hit = next(e, pos);
      if (!hit) return std::nullopt;
      last = *hit;
      pos = *hit + 1;
    }
    return last;
  }

  std::size_t length_;
  std::vector<std::vector<std::size_t>> positions_;
};

}  // namespace detail

/// Number of width-w sliding windows (stride 1) of a flattened trace that
/// contain `episode` as a subsequence. A trace shorter than w is one window.
inline std::uint64_t episode_support(std::span<const EventId> trace, std::span<const EventId> episode,
                                     std::size_t window_w) {
  if (window_w == 0) throw UsageError("window_w must be positive");
  EventId alphabet = 0;
  for (auto e : trace) alphabet = std::max(alphabet, e + 1);
  return detail::PositionIndex(trace, alphabet).window_support(episode, window_w);
}

/// True when no trace reaches the window width, i.e. every trace is a single window.
inline bool window_covers_all_traces(const Corpus& corpus, std::size_t window_w) {
  return std::all_of(corpus.traces.begin(), corpus.traces.end(),
                     [&](const Trace& t) { return t.size() < window_w; });
}

/// Level-wise episode mining. Frequent episodes grow by one trailing event;
/// an episode of length >= 2 is reported when its support and its confidence
/// support(e) / support(prefix(e)) pass the thresholds. Sorted lexicographically.
inline std::vector<MinedPattern> mine_episodes(const Corpus& corpus, const EpisodeConfig& cfg,
                                               std::stop_token stop = {}) {
  cfg.validate();
  const auto seqs = corpus.sequences();
  const auto alphabet = corpus.vocabulary.size();
  std::vector<detail::PositionIndex> indexes;
  indexes.reserve(seqs.size());
  for (const auto& s : seqs) indexes.emplace_back(s, alphabet);

  auto support = [&](std::span<const EventId> ep) {
    std::uint64_t total = 0;
    for (const auto& idx : indexes) total += idx.window_support(ep, cfg.window_w);
    return total;
  };

  struct Frequent {
    Sequence episode;
    std::uint64_t support;
  };
  std::vector<Frequent> level;
  for (EventId e = 0; e < alphabet; ++e) {
    const Sequence ep{e};
    if (auto s = support(ep); s >= cfg.min_support) level.push_back({ep, s});
  }
  std::vector<EventId> singles;
  for (const auto& f : level) singles.push_back(f.episode.front());

  std::size_t kept = level.size();
  std::vector<MinedPattern> out;
  for (std::size_t len = 1; len < cfg.max_len && !level.empty(); ++len) {
    std::vector<Frequent> next;
    for (const auto& f : level) {
      if (stop.stop_requested()) throw Cancelled();
      for (auto a : singles) {
        auto ep = f.episode;
        ep.push_back(a);
        const auto s = support(ep);
        if (s < cfg.min_support) continue;
        const double conf = static_cast<double>(s) / static_cast<double>(f.support);
        if (conf + 1e-12 >= cfg.min_confidence) out.push_back(MinedPattern{ep, s, conf, {}});
        next.push_back({std::move(ep), s});
        if (cfg.max_patterns && ++kept > *cfg.max_patterns) {
          std::sort(out.begin(), out.end(),
                    [](const auto& l, const auto& r) { return l.sequence < r.sequence; });
          throw PatternLimitExceeded(*cfg.max_patterns, std::move(out));
        }
      }
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.sequence < r.sequence; });
  return out;
}

/// "e1 e2 ... #SUP n #CONF c" per episode.
inline std::string emit_episodes(const std::vector<MinedPattern>& episodes) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  for (const auto& p : episodes) {
    for (auto e : p.sequence) out << e << ' ';
    out << "#SUP " << p.support << " #CONF " << p.confidence.value_or(0.0) << '\n';
  }
  return out.str();
}

}  // namespace socmine
