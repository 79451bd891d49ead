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
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "socmine/error.hpp"
#include "socmine/random.hpp"
#include "socmine/trace_model.hpp"

namespace socmine {

/// Order given to the events of one multi-event step when it is expanded.
struct FlattenPolicy {
  enum class Kind { ascending_id, capture_order, random };
  Kind kind = Kind::ascending_id;
  std::uint64_t seed = 0;  // random only

  static FlattenPolicy ascending_id() { return {Kind::ascending_id, 0}; }
  static FlattenPolicy capture_order() { return {Kind::capture_order, 0}; }
  static FlattenPolicy random(std::uint64_t seed) { return {Kind::random, seed}; }

  static FlattenPolicy parse(std::string_view name, std::uint64_t seed = 0) {
    if (name == "ascending_id") return ascending_id();
    if (name == "capture_order") return capture_order();
    if (name == "random") return random(seed);
    throw UsageError("unknown flatten policy '" + std::string(name) + "'");
  }
};

struct ExportFormat {
  enum class Kind { canonical, itemset_dash, line_per_event, space_separated };
  Kind kind = Kind::canonical;
  std::string separator_line;  // line_per_event only

  static ExportFormat canonical() { return {Kind::canonical, {}}; }
  static ExportFormat itemset_dash() { return {Kind::itemset_dash, {}}; }
  static ExportFormat space_separated() { return {Kind::space_separated, {}}; }
  static ExportFormat line_per_event(std::string separator) {
    if (separator.empty()) throw UsageError("line_per_event needs a nonempty separator line");
    if (separator.find('\n') != std::string::npos)
      throw UsageError("separator line must not contain a newline");
    return {Kind::line_per_event, std::move(separator)};
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = nl + 1;
  }
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Reads the canonical text format:
///
///   # comment
///   provenance <free text>          (optional)
///   event <id> <src:dst:cmd>        (ids dense from 0, before any trace data)
///   trace                           (starts a trace)
///   <id or name> ...                (one step)
///
/// A file without event declarations gets a generated vocabulary covering the
/// largest id used. Step lines before the first "trace" form an implicit trace.
inline Corpus parse_canonical(std::string_view text) {
  Corpus corpus;
  bool declared = false;
  bool in_body = false;
  EventId max_id = 0;
  bool any_event = false;
  std::vector<EventId> step;

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto tokens = detail::split_ws(line);
    const auto head = tokens.front();

    if (head == "provenance") {
      corpus.provenance = std::string(detail::trim(line.substr(head.size())));
      return;
    }
    if (head == "event") {
      if (in_body) throw ParseError(line_no, "event declaration after trace data");
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'event <id> <src:dst:cmd>'");
      auto id = detail::parse_number<EventId>(tokens[1]);
      if (!id) throw ParseError(line_no, "bad event id '" + std::string(tokens[1]) + "'");
      if (*id != corpus.vocabulary.size())
        throw ParseError(line_no, "event ids must be dense and ascending; expected " +
                                      std::to_string(corpus.vocabulary.size()));
      try {
        corpus.vocabulary.add(Message::parse(tokens[2]));
      } catch (const DataError& e) {
        throw ParseError(line_no, e.what());
      }
      declared = true;
      return;
    }
    if (head == "trace") {
      if (tokens.size() != 1) throw ParseError(line_no, "unexpected text after 'trace'");
      in_body = true;
      corpus.traces.emplace_back();
      return;
    }

    if (!in_body) {
      in_body = true;
      corpus.traces.emplace_back();
    }
    step.clear();
    for (auto tok : tokens) {
      EventId id = 0;
      if (auto num = detail::parse_number<EventId>(tok)) {
        id = *num;
        if (declared && !corpus.vocabulary.contains(id))
          throw ParseError(line_no, "event id " + std::to_string(id) + " is not declared");
      } else if (auto named = corpus.vocabulary.lookup(tok)) {
        id = *named;
      } else {
        throw ParseError(line_no, "unknown event '" + std::string(tok) + "'");
      }
      if (std::find(step.begin(), step.end(), id) != step.end())
        throw ParseError(line_no, "event " + std::to_string(id) + " repeated within a step");
      step.push_back(id);
      max_id = any_event ? std::max(max_id, id) : id;
      any_event = true;
    }
    corpus.traces.back().emplace_back(step);
  });

  if (!declared && any_event)
    corpus.vocabulary = Vocabulary::synthetic(static_cast<std::size_t>(max_id) + 1);
  return corpus;
}

/// Renders a corpus. Single-event formats throw UsageError on a step of width > 1.
inline std::string emit(const Corpus& corpus, const ExportFormat& fmt) {
  std::ostringstream out;
  auto require_single = [](const Trace& t) {
    if (!is_single_event(t))
      throw UsageError("format requires single-event steps; flatten the corpus first");
  };

  switch (fmt.kind) {
    case ExportFormat::Kind::canonical: {
      if (corpus.provenance.find('\n') != std::string::npos)
        throw UsageError("provenance must be a single line");
      if (!corpus.provenance.empty()) out << "provenance " << corpus.provenance << '\n';
      const auto& entries = corpus.vocabulary.entries();
      for (std::size_t i = 0; i < entries.size(); ++i)
        out << "event " << i << ' ' << entries[i].render() << '\n';
      for (const auto& trace : corpus.traces) {
        out << "trace\n";
        for (const auto& step : trace) {
          bool first = true;
          for (auto e : step.events()) {
            out << (first ? "" : " ") << e;
            first = false;
          }
          out << '\n';
        }
      }
      break;
    }
    case ExportFormat::Kind::itemset_dash:
      for (const auto& trace : corpus.traces) {
        for (std::size_t i = 0; i < trace.size(); ++i) {
          if (i) out << " -1 ";
          bool first = true;
          for (auto e : trace[i].events()) {
            out << (first ? "" : " ") << e;
            first = false;
          }
        }
        out << (trace.empty() ? "-2\n" : " -2\n");
      }
      break;
    case ExportFormat::Kind::line_per_event:
      for (const auto& trace : corpus.traces) {
        require_single(trace);
        for (const auto& step : trace) out << step.front() << '\n';
        out << fmt.separator_line << '\n';
      }
      break;
    case ExportFormat::Kind::space_separated:
      for (const auto& trace : corpus.traces) {
        require_single(trace);
        for (std::size_t i = 0; i < trace.size(); ++i) out << (i ? " " : "") << trace[i].front();
        out << '\n';
      }
      break;
  }
  return out.str();
}

/// Expands every multi-event step into consecutive single-event steps.
inline Trace flatten(const Trace& trace, const FlattenPolicy& policy) {
  Trace out;
  out.reserve(trace.size());
  Rng rng(policy.seed);
  std::vector<EventId> events;
  for (const auto& step : trace) {
    if (step.width() == 1) {
      out.push_back(step);
      continue;
    }
    events.assign(step.events().begin(), step.events().end());
    switch (policy.kind) {
      case FlattenPolicy::Kind::ascending_id: std::sort(events.begin(), events.end()); break;
      case FlattenPolicy::Kind::capture_order: break;
      case FlattenPolicy::Kind::random: shuffle(std::span<EventId>(events), rng); break;
    }
    for (auto e : events) out.push_back(Step{e});
  }
  return out;
}

/// Flattens every trace; with a random policy trace i uses seed ^ i.
inline Corpus flatten(const Corpus& corpus, const FlattenPolicy& policy) {
  Corpus out{corpus.vocabulary, {}, corpus.provenance};
  out.traces.reserve(corpus.traces.size());
  for (std::size_t t = 0; t < corpus.traces.size(); ++t) {
    auto p = policy;
    p.seed ^= static_cast<std::uint64_t>(t);
    out.traces.push_back(flatten(corpus.traces[t], p));
  }
  return out;
}

/// Column layout of a delimiter-separated monitor log. Columns are 0-based.
struct FieldMap {
  char delimiter = ',';
  std::size_t timestamp = 0;
  std::size_t source = 1;
  std::size_t destination = 2;
  std::size_t command = 3;
  bool header = false;  // skip the first non-comment line

  /// Parses "key=value" lines: delimiter, timestamp, source, destination,
  /// command, header. "tab" and "space" name those delimiters.
  static FieldMap parse(std::string_view text) {
    FieldMap map;
    detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
      const auto line = detail::trim(raw);
      if (line.empty() || line.front() == '#') return;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
      const auto key = detail::trim(line.substr(0, eq));
      const auto value = detail::trim(line.substr(eq + 1));
      auto column = [&]() {
        auto v = detail::parse_number<std::size_t>(value);
        if (!v) throw ParseError(line_no, "bad column index '" + std::string(value) + "'");
        return *v;
      };
      if (key == "delimiter") {
        if (value == "tab") map.delimiter = '\t';
        else if (value == "space") map.delimiter = ' ';
        else if (value.size() == 1) map.delimiter = value.front();
        else throw ParseError(line_no, "delimiter must be a single character, 'tab' or 'space'");
      } else if (key == "timestamp") map.timestamp = column();
      else if (key == "source") map.source = column();
      else if (key == "destination") map.destination = column();
      else if (key == "command") map.command = column();
      else if (key == "header") map.header = value == "true" || value == "1";
      else throw ParseError(line_no, "unknown field map key '" + std::string(key) + "'");
    });
    return map;
  }
};

/// Builds a one-trace corpus from a monitor log. Consecutive lines with the
/// same timestamp fold into one step; a repeated event within one timestamp
/// is recorded once.
inline Corpus ingest_monitor_log(std::string_view text, const FieldMap& map) {
  Corpus corpus;
  corpus.provenance = "monitor-log";
  Trace trace;
  std::vector<EventId> step;
  std::optional<double> current;
  bool header_pending = map.header;
  const auto needed = std::max({map.timestamp, map.source, map.destination, map.command});

  auto close_step = [&] {
    if (!step.empty()) trace.emplace_back(step);
    step.clear();
  };

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') return;
    if (header_pending) {
      header_pending = false;
      return;
    }
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto d = line.find(map.delimiter, pos);
      fields.push_back(detail::trim(line.substr(pos, d == std::string_view::npos ? d : d - pos)));
      if (d == std::string_view::npos) break;
      pos = d + 1;
    }
    if (map.delimiter == ' ' || map.delimiter == '\t')
      std::erase_if(fields, [](std::string_view f) { return f.empty(); });
    if (fields.size() <= needed)
      throw ParseError(line_no, "expected at least " + std::to_string(needed + 1) + " fields, got " +
                                    std::to_string(fields.size()));
    auto ts = detail::parse_number<double>(fields[map.timestamp]);
    if (!ts) throw ParseError(line_no, "bad timestamp '" + std::string(fields[map.timestamp]) + "'");
    if (current && *ts < *current) throw ParseError(line_no, "timestamp goes backwards");
    if (!current || *ts != *current) close_step();
    current = ts;
    EventId id = 0;
    try {
      id = corpus.vocabulary.intern(Message::make(std::string(fields[map.source]),
                                                  std::string(fields[map.destination]),
                                                  std::string(fields[map.command])));
    } catch (const DataError& e) {
      throw ParseError(line_no, e.what());
    }
    if (std::find(step.begin(), step.end(), id) == step.end()) step.push_back(id);
  });
  close_step();
  corpus.traces.push_back(std::move(trace));
  return corpus;
}

}  // namespace socmine
