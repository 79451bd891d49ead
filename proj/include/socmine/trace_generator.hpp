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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socmine/error.hpp"
#include "socmine/random.hpp"
#include "socmine/trace_model.hpp"

namespace socmine {

/// Generation regimes: single-event non-interleaved, single-event
/// interleaved, multi-event interleaved.
enum class GenMode { SNI, SI, MI };

inline std::string_view to_string(GenMode m) {
  switch (m) {
    case GenMode::SNI: return "SNI";
    case GenMode::SI: return "SI";
    case GenMode::MI: return "MI";
  }
  return "?";
}

inline GenMode parse_gen_mode(std::string_view s) {
  if (s == "SNI") return GenMode::SNI;
  if (s == "SI") return GenMode::SI;
  if (s == "MI") return GenMode::MI;
  throw UsageError("unknown generation mode '" + std::string(s) + "' (expected SNI, SI or MI)");
}

struct GenConfig {
  GenMode mode = GenMode::SNI;
  std::size_t n_traces = 100;
  std::size_t reps_min = 1;
  std::size_t reps_max = 5;
  std::size_t max_active = 3;      // SI and MI
  std::size_t max_step_width = 3;  // MI
  std::uint64_t seed = 0;

  void validate() const {
    if (n_traces == 0) throw UsageError("n_traces must be positive");
    if (reps_min == 0 || reps_max == 0) throw UsageError("repetition bounds must be positive");
    if (reps_min > reps_max) throw UsageError("reps_min exceeds reps_max");
    if (max_active == 0) throw UsageError("max_active must be positive");
    if (max_step_width == 0) throw UsageError("max_step_width must be positive");
    if (mode == GenMode::MI && max_step_width == 1)
      throw UsageError("MI mode with max_step_width = 1 degenerates to SI");
  }
};

/// Generated corpus plus the bookkeeping the generator used to build it.
struct GeneratedCorpus {
  Corpus corpus;
  // Per trace: pool indices of the scheduled instances, in start order.
  std::vector<std::vector<std::size_t>> schedules;
  // Per trace (MI only): some step offered two or more distinct next events.
  std::vector<bool> multi_event_admissible;
};

namespace detail {

struct InFlight {
  std::size_t pattern;
  std::size_t pos = 0;
};

inline std::vector<std::size_t> draw_schedule(const PatternPool& pool, const GenConfig& cfg, Rng& rng) {
  std::vector<std::size_t> schedule;
  for (std::size_t p = 0; p < pool.size(); ++p) {
    const auto reps = uniform_between(rng, cfg.reps_min, cfg.reps_max);
    schedule.insert(schedule.end(), reps, p);
  }
  shuffle(std::span<std::size_t>(schedule), rng);
  return schedule;
}

inline Trace emit_atomic(const PatternPool& pool, const std::vector<std::size_t>& schedule) {
  Trace trace;
  for (auto p : schedule)
    for (auto e : pool[p].sequence) trace.push_back(Step{e});
  return trace;
}

inline Trace emit_interleaved(const PatternPool& pool, const std::vector<std::size_t>& schedule,
                              const GenConfig& cfg, Rng& rng, bool& admissible) {
  Trace trace;
  std::vector<InFlight> active;  // slot order = position in this vector
  std::size_t next_pending = 0;
  std::vector<std::size_t> slots;
  std::vector<EventId> step;
  const bool multi = cfg.mode == GenMode::MI;

  auto next_event = [&](const InFlight& f) { return pool[f.pattern].sequence[f.pos]; };

  while (next_pending < schedule.size() || !active.empty()) {
    while (active.size() < cfg.max_active && next_pending < schedule.size())
      active.push_back(InFlight{schedule[next_pending++]});

    if (!multi) {
      auto& f = active[uniform_below(rng, active.size())];
      trace.push_back(Step{next_event(f)});
      ++f.pos;
    } else {
      // One candidate slot per distinct offered id: the lowest slot offering it.
      slots.clear();
      for (std::size_t i = 0; i < active.size(); ++i) {
        const auto e = next_event(active[i]);
        if (std::none_of(slots.begin(), slots.end(), [&](std::size_t s) { return next_event(active[s]) == e; }))
          slots.push_back(i);
      }
      const auto cap = std::min(cfg.max_step_width, slots.size());
      // The first step that can hold two events does, so every trace that
      // admits a wide step gets one.
      const auto width = uniform_between(rng, (cap >= 2 && !admissible) ? 2 : 1, cap);
      if (cap >= 2) admissible = true;
      for (std::size_t i = 0; i < width; ++i)
        std::swap(slots[i], slots[i + uniform_below(rng, slots.size() - i)]);
      slots.resize(width);
      std::sort(slots.begin(), slots.end());

      step.clear();
      for (auto s : slots) {
        step.push_back(next_event(active[s]));
        ++active[s].pos;
      }
      trace.emplace_back(step);
    }
    std::erase_if(active, [&](const InFlight& f) { return f.pos == pool[f.pattern].size(); });
  }
  return trace;
}

}  // namespace detail

/// Builds cfg.n_traces traces. Trace i uses its own RNG stream seeded with
/// seed ^ i, so output does not depend on generation order.
inline GeneratedCorpus generate_detailed(const PatternPool& pool, const GenConfig& cfg) {
  cfg.validate();
  GeneratedCorpus out;
  out.corpus.vocabulary = Vocabulary::synthetic(static_cast<std::size_t>(pool.max_event()) + 1);
  out.corpus.provenance = "generated mode=" + std::string(to_string(cfg.mode)) +
                          " traces=" + std::to_string(cfg.n_traces) +
                          " seed=" + std::to_string(cfg.seed);
  for (std::size_t t = 0; t < cfg.n_traces; ++t) {
    Rng rng(cfg.seed ^ static_cast<std::uint64_t>(t));
    auto schedule = detail::draw_schedule(pool, cfg, rng);
    bool admissible = false;
    auto trace = cfg.mode == GenMode::SNI
                     ? detail::emit_atomic(pool, schedule)
                     : detail::emit_interleaved(pool, schedule, cfg, rng, admissible);
    out.corpus.traces.push_back(std::move(trace));
    out.schedules.push_back(std::move(schedule));
    out.multi_event_admissible.push_back(admissible);
  }
  return out;
}

inline Corpus generate(const PatternPool& pool, const GenConfig& cfg) {
  return generate_detailed(pool, cfg).corpus;
}

/// Segments a single-event trace into consecutive pool patterns. Returns the
/// pool indices in order, or nullopt when no segmentation exists. When several
/// segmentations exist the one preferring earlier pool entries wins.
inline std::optional<std::vector<std::size_t>> greedy_parse(const Trace& trace, const PatternPool& pool) {
  const auto seq = event_sequence(trace);
  const auto n = seq.size();
  constexpr auto kNone = static_cast<std::size_t>(-1);
  // choice[i]: pattern starting at i that leads to a full parse of seq[i..].
  std::vector<std::size_t> choice(n + 1, kNone);
  std::vector<bool> ok(n + 1, false);
  ok[n] = true;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t p = 0; p < pool.size(); ++p) {
      const auto& pat = pool[p].sequence;
      if (i + pat.size() > n || !ok[i + pat.size()]) continue;
      if (std::equal(pat.begin(), pat.end(), seq.begin() + static_cast<std::ptrdiff_t>(i))) {
        ok[i] = true;
        choice[i] = p;
        break;
      }
    }
  }
  if (!ok[0]) return std::nullopt;
  std::vector<std::size_t> parsed;
  for (std::size_t i = 0; i < n; i += pool[choice[i]].size()) parsed.push_back(choice[i]);
  return parsed;
}

}  // namespace socmine
