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
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "socmine/error.hpp"

namespace socmine {

/// Dense index into a Vocabulary.
using EventId = std::uint32_t;

/// One IP-to-IP communication action, rendered as "source:destination:command".
struct Message {
  std::string source;
  std::string destination;
  std::string command;

  /// Throws DataError when a component is empty or contains ':' or whitespace.
  static Message make(std::string source, std::string destination, std::string command) {
    for (const auto* part : {&source, &destination, &command}) {
      if (part->empty()) throw DataError("message component is empty");
      if (part->find_first_of(": \t\r\n") != std::string::npos)
        throw DataError("message component '" + *part + "' contains ':' or whitespace");
    }
    return Message{std::move(source), std::move(destination), std::move(command)};
  }

  /// Parses "src:dst:cmd".
  static Message parse(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos)
      throw DataError("message '" + std::string(text) + "' is not of the form src:dst:cmd");
    return make(std::string(text.substr(0, first)),
                std::string(text.substr(first + 1, second - first - 1)),
                std::string(text.substr(second + 1)));
  }

  std::string render() const { return source + ":" + destination + ":" + command; }

  friend bool operator==(const Message&, const Message&) = default;
};

/// Ordered list of unique messages; position is the EventId.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Vocabulary of n generated names "ip:bus:m<i>".
  static Vocabulary synthetic(std::size_t n) {
    Vocabulary v;
    for (std::size_t i = 0; i < n; ++i)
      v.add(Message::make("ip", "bus", "m" + std::to_string(i)));
    return v;
  }

  /// Appends a new message. Throws DataError on duplicates.
  EventId add(Message m) {
    auto key = m.render();
    if (index_.contains(key)) throw DataError("duplicate vocabulary entry '" + key + "'");
    const auto id = static_cast<EventId>(entries_.size());
    index_.emplace(std::move(key), id);
    entries_.push_back(std::move(m));
    return id;
  }

  /// Returns the id of m, adding it first if needed.
  EventId intern(const Message& m) {
    if (auto id = lookup(m.render())) return *id;
    return add(m);
  }

  std::optional<EventId> lookup(std::string_view rendered) const {
    auto it = index_.find(std::string(rendered));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(EventId id) const noexcept { return id < entries_.size(); }
  const Message& at(EventId id) const { return entries_.at(id); }
  std::string name(EventId id) const { return at(id).render(); }
  const std::vector<Message>& entries() const noexcept { return entries_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Message> entries_;
  std::unordered_map<std::string, EventId> index_;
};

/// Events captured at one timestamp, kept in capture order.
class Step {
 public:
  Step(std::initializer_list<EventId> events) : Step(std::vector<EventId>(events)) {}

  /// Throws DataError when empty or when an event repeats.
  explicit Step(std::vector<EventId> events) : events_(std::move(events)) {
    if (events_.empty()) throw DataError("step must contain at least one event");
    auto sorted = events_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DataError("duplicate event within a step");
  }

  std::span<const EventId> events() const noexcept { return events_; }
  std::size_t width() const noexcept { return events_.size(); }
  EventId front() const noexcept { return events_.front(); }
  bool contains(EventId e) const {
    return std::find(events_.begin(), events_.end(), e) != events_.end();
  }

  friend bool operator==(const Step&, const Step&) = default;

 private:
  std::vector<EventId> events_;
};

using Trace = std::vector<Step>;

/// Trace with one step per listed event.
inline Trace single_event_trace(std::span<const EventId> events) {
  Trace t;
  t.reserve(events.size());
  for (auto e : events) t.push_back(Step{e});
  return t;
}

inline Trace single_event_trace(std::initializer_list<EventId> events) {
  return single_event_trace(std::span<const EventId>(events.begin(), events.size()));
}

inline bool is_single_event(const Trace& trace) {
  return std::all_of(trace.begin(), trace.end(), [](const Step& s) { return s.width() == 1; });
}

/// Event sequence of a single-event trace. Throws UsageError otherwise.
inline std::vector<EventId> event_sequence(const Trace& trace) {
  std::vector<EventId> out;
  out.reserve(trace.size());
  for (const auto& s : trace) {
    if (s.width() != 1) throw UsageError("trace is not flattened (step of width " +
                                         std::to_string(s.width()) + ")");
    out.push_back(s.front());
  }
  return out;
}

struct Corpus {
  Vocabulary vocabulary;
  std::vector<Trace> traces;
  std::string provenance;

  /// Throws DataError when a trace references an id outside the vocabulary.
  void validate() const {
    for (std::size_t t = 0; t < traces.size(); ++t)
      for (const auto& step : traces[t])
        for (auto e : step.events())
          if (!vocabulary.contains(e))
            throw DataError("trace " + std::to_string(t) + " references event " +
                            std::to_string(e) + " outside the vocabulary of size " +
                            std::to_string(vocabulary.size()));
  }

  bool flattened() const {
    return std::all_of(traces.begin(), traces.end(), is_single_event);
  }

  /// Event sequences of every trace. Throws UsageError if not flattened.
  std::vector<std::vector<EventId>> sequences() const {
    std::vector<std::vector<EventId>> out;
    out.reserve(traces.size());
    for (const auto& t : traces) out.push_back(event_sequence(t));
    return out;
  }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

using Sequence = std::vector<EventId>;

struct GroundTruthPattern {
  Sequence sequence;

  explicit GroundTruthPattern(Sequence seq) : sequence(std::move(seq)) {
    if (sequence.size() < 2) throw DataError("ground-truth pattern needs at least two events");
  }
  GroundTruthPattern(std::initializer_list<EventId> seq) : GroundTruthPattern(Sequence(seq)) {}

  std::size_t size() const noexcept { return sequence.size(); }
  friend bool operator==(const GroundTruthPattern&, const GroundTruthPattern&) = default;
};

class PatternPool {
 public:
  /// Throws DataError when empty or when two patterns are equal.
  explicit PatternPool(std::vector<GroundTruthPattern> patterns) : patterns_(std::move(patterns)) {
    if (patterns_.empty()) throw DataError("pattern pool is empty");
    for (std::size_t i = 0; i < patterns_.size(); ++i)
      for (std::size_t j = i + 1; j < patterns_.size(); ++j)
        if (patterns_[i] == patterns_[j])
          throw DataError("pattern pool entries " + std::to_string(i) + " and " +
                          std::to_string(j) + " are identical");
  }
  PatternPool(std::initializer_list<GroundTruthPattern> patterns)
      : PatternPool(std::vector<GroundTruthPattern>(patterns)) {}

  const std::vector<GroundTruthPattern>& patterns() const noexcept { return patterns_; }
  std::size_t size() const noexcept { return patterns_.size(); }
  const GroundTruthPattern& operator[](std::size_t i) const { return patterns_[i]; }
  auto begin() const { return patterns_.begin(); }
  auto end() const { return patterns_.end(); }

  EventId max_event() const {
    EventId m = 0;
    for (const auto& p : patterns_)
      m = std::max(m, *std::max_element(p.sequence.begin(), p.sequence.end()));
    return m;
  }

 private:
  std::vector<GroundTruthPattern> patterns_;
};

/// A miner's output pattern. Tool-specific statistics go into `extra`.
struct MinedPattern {
  Sequence sequence;
  std::uint64_t support = 0;
  std::optional<double> confidence;
  std::map<std::string, double> extra;

  friend bool operator==(const MinedPattern&, const MinedPattern&) = default;
};

/// Each step intersected with `keep`; emptied steps are dropped.
inline Trace project(const Trace& trace, std::span<const EventId> keep) {
  Trace out;
  std::vector<EventId> kept;
  for (const auto& step : trace) {
    kept.clear();
    for (auto e : step.events())
      if (std::find(keep.begin(), keep.end(), e) != keep.end()) kept.push_back(e);
    if (!kept.empty()) out.emplace_back(kept);
  }
  return out;
}

inline Trace project(const Trace& trace, std::initializer_list<EventId> keep) {
  return project(trace, std::span<const EventId>(keep.begin(), keep.size()));
}

/// Strictly increasing indices of the steps containing e.
inline std::vector<std::size_t> occurrences(const Trace& trace, EventId e) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (trace[i].contains(e)) out.push_back(i);
  return out;
}

/// True iff `pattern` embeds order-preservingly in `sequence`.
inline bool contains_subsequence(std::span<const EventId> sequence, std::span<const EventId> pattern) {
  std::size_t matched = 0;
  for (auto e : sequence) {
    if (matched == pattern.size()) break;
    if (e == pattern[matched]) ++matched;
  }
  return matched == pattern.size();
}

/// Number of sequences containing `pattern`.
inline std::uint64_t sequence_support(std::span<const Sequence> sequences,
                                      std::span<const EventId> pattern) {
  std::uint64_t n = 0;
  for (const auto& s : sequences)
    if (contains_subsequence(s, pattern)) ++n;
  return n;
}

}  // namespace socmine
