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

/// Instance of G(x -> X(F(y))): every x is strictly later followed by a y.
struct FollowsInstance {
  EventId x = 0;
  EventId y = 0;
  bool vacuous = false;  // x never occurs

  friend bool operator==(const FollowsInstance&, const FollowsInstance&) = default;
};

struct Counterexample {
  std::size_t trace = 0;
  std::size_t step = 0;  // position of the x with no later y
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct FollowsVerdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;
};

/// Walks each trace keeping the earliest x not yet answered by a y; a pending
/// x at the end of a trace is the first violation in that trace.
inline FollowsVerdict check_instance(const Corpus& corpus, EventId x, EventId y) {
  if (x == y) throw UsageError("follows instance needs x != y");
  for (std::size_t t = 0; t < corpus.traces.size(); ++t) {
    const auto seq = event_sequence(corpus.traces[t]);
    std::optional<std::size_t> pending;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] == y) pending.reset();
      else if (seq[i] == x && !pending) pending = i;
    }
    if (pending) return {false, Counterexample{t, *pending}};
  }
  return {true, std::nullopt};
}

/// All non-vacuous instances over distinct vocabulary events, in (x, y)
/// order. One scan per trace records the last position of every event; the
/// instance holds on a trace iff x is absent or last(x) < last(y).
inline std::vector<FollowsInstance> mine_follows(const Corpus& corpus, std::stop_token stop = {}) {
  const auto n = corpus.vocabulary.size();
  std::vector<std::uint8_t> holds(n * n, 1);
  std::vector<std::uint8_t> occurs(n, 0);
  constexpr auto kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> last(n);
  std::vector<EventId> present;

  for (const auto& trace : corpus.traces) {
    if (stop.stop_requested()) throw Cancelled();
    const auto seq = event_sequence(trace);
    std::fill(last.begin(), last.end(), kAbsent);
    present.clear();
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (last[seq[i]] == kAbsent) present.push_back(seq[i]);
      last[seq[i]] = i;
    }
    for (auto x : present) {
      occurs[x] = 1;
      for (EventId y = 0; y < n; ++y)
        if (last[y] == kAbsent || last[y] < last[x]) holds[x * n + y] = 0;
    }
  }

  std::vector<FollowsInstance> out;
  for (EventId x = 0; x < n; ++x) {
    if (!occurs[x]) continue;
    for (EventId y = 0; y < n; ++y)
      if (x != y && holds[x * n + y]) out.push_back({x, y, false});
  }
  return out;
}

/// "G(x -> XF y): x=<name> y=<name>" per instance.
inline std::string emit_follows(const std::vector<FollowsInstance>& instances, const Vocabulary& vocab) {
  std::ostringstream out;
  for (const auto& f : instances)
    out << "G(x -> XF y): x=" << vocab.name(f.x) << " y=" << vocab.name(f.y) << '\n';
  return out.str();
}

}  // namespace socmine
