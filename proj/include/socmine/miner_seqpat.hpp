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

#include <cstdint>
#include <optional>
#include <sstream>
#include <stop_token>
#include <string>
#include <vector>

#include "socmine/error.hpp"
#include "socmine/trace_model.hpp"

namespace socmine {

// Thrown when a miner produces more patterns than its configured guard allows.
// Carries whatever was found before the guard tripped.
class PatternLimitExceeded : public Error {
 public:
  PatternLimitExceeded(std::size_t limit, std::vector<MinedPattern> partial)
      : Error("pattern limit of " + std::to_string(limit) + " exceeded"),
        partial_(std::move(partial)) {}

  const std::vector<MinedPattern>& partial() const noexcept { return partial_; }

 private:
  std::vector<MinedPattern> partial_;
};

struct SeqpatConfig {
  std::uint64_t min_support = 1;  // supporting traces
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> max_patterns;

  void validate(std::size_t n_traces) const {
    if (min_support == 0) throw UsageError("min_support must be at least 1");
    if (min_support > n_traces)
      throw UsageError("min_support " + std::to_string(min_support) + " exceeds the " +
                       std::to_string(n_traces) + " traces in the corpus");
    if (max_len && *max_len == 0) throw UsageError("max_len must be positive");
    if (max_patterns && *max_patterns == 0) throw UsageError("max_patterns must be positive");
  }
};

namespace detail {

class PrefixSpan {
 public:
  PrefixSpan(const std::vector<Sequence>& seqs, std::size_t alphabet, const SeqpatConfig& cfg,
             std::stop_token stop)
      : seqs_(seqs), cfg_(cfg), stop_(stop), counts_(alphabet, 0), stamp_(alphabet, kNoStamp) {}

  std::vector<MinedPattern> run() {
    std::vector<Projection> db;
    db.reserve(seqs_.size());
    for (std::uint32_t t = 0; t < seqs_.size(); ++t) db.push_back({t, 0});
    grow(db);
    return std::move(out_);
  }

 private:
  // A projected sequence: the suffix of trace `trace` starting at `offset`.
  struct Projection {
    std::uint32_t trace;
    std::uint32_t offset;
  };
  static constexpr std::size_t kNoStamp = static_cast<std::size_t>(-1);

  void grow(const std::vector<Projection>& db) {
    if (stop_.stop_requested()) throw Cancelled();

    // Count each item at most once per projected sequence.
    std::vector<EventId> seen;
    for (std::size_t i = 0; i < db.size(); ++i) {
      const auto& s = seqs_[db[i].trace];
      for (std::size_t p = db[i].offset; p < s.size(); ++p) {
        const auto e = s[p];
        if (stamp_[e] == stamp_base_ + i) continue;
        stamp_[e] = stamp_base_ + i;
        if (counts_[e]++ == 0) seen.push_back(e);
      }
    }
    stamp_base_ += db.size();

    std::vector<std::pair<EventId, std::uint64_t>> frequent;
    for (auto e : seen)
      if (counts_[e] >= cfg_.min_support) frequent.emplace_back(e, counts_[e]);
    for (auto e : seen) counts_[e] = 0;
    std::sort(frequent.begin(), frequent.end());

    for (const auto& [item, support] : frequent) {
      prefix_.push_back(item);
      out_.push_back(MinedPattern{prefix_, support, std::nullopt, {}});
      if (cfg_.max_patterns && out_.size() > *cfg_.max_patterns) {
        out_.pop_back();
        throw PatternLimitExceeded(*cfg_.max_patterns, std::move(out_));
      }
      if (!cfg_.max_len || prefix_.size() < *cfg_.max_len) {
        std::vector<Projection> next;
        next.reserve(support);
        for (const auto& proj : db) {
          const auto& s = seqs_[proj.trace];
          for (std::size_t p = proj.offset; p < s.size(); ++p) {
            if (s[p] == item) {
              next.push_back({proj.trace, static_cast<std::uint32_t>(p + 1)});
              break;
            }
          }
        }
        grow(next);
      }
      prefix_.pop_back();
    }
  }

  const std::vector<Sequence>& seqs_;
  const SeqpatConfig& cfg_;
  std::stop_token stop_;
  std::vector<std::uint64_t> counts_;
  // counts_ is all zero between levels. stamp_[e] == stamp_base_ + i marks e
  // as counted for projection i of the current level.
  std::vector<std::size_t> stamp_;
  std::size_t stamp_base_ = 0;
  Sequence prefix_;
  std::vector<MinedPattern> out_;
};

}  // namespace detail

/// Frequent sequential patterns by pattern growth over pseudo-projected
/// databases. Support counts supporting traces. Output is sorted
/// lexicographically by event sequence.
inline std::vector<MinedPattern> mine_frequent(const Corpus& corpus, const SeqpatConfig& cfg,
                                               std::stop_token stop = {}) {
  cfg.validate(corpus.traces.size());
  const auto seqs = corpus.sequences();
  return detail::PrefixSpan(seqs, corpus.vocabulary.size(), cfg, stop).run();
}

/// One line per pattern: "1 -1 2 -1 #SUP: 3".
inline std::string emit_seqpat(const std::vector<MinedPattern>& patterns) {
  std::ostringstream out;
  for (const auto& p : patterns) {
    for (auto e : p.sequence) out << e << " -1 ";
    out << "#SUP: " << p.support << '\n';
  }
  return out.str();
}

}  // namespace socmine
