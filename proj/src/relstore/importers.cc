// Copyright 2026 The agq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "agq/relstore.h"

namespace agq {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string line_error(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

}  // namespace

Time parse_seconds(std::string_view text, std::int64_t resolution) {
  if (resolution <= 0) throw StoreError("resolution must be positive");
  std::string_view whole = text, frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
  }
  auto all_digits = [](std::string_view s) {
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  if (whole.empty() || !all_digits(whole) || !all_digits(frac)) {
    throw StoreError("malformed time '" + std::string(text) + "'");
  }
  std::int64_t ticks = *parse_int(whole) * resolution;
  if (!frac.empty()) {
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::int64_t scaled = *parse_int(frac) * resolution;
    if (scaled % scale != 0) {
      throw StoreError("time '" + std::string(text) +
                       "' is not representable at resolution " +
                       std::to_string(resolution));
    }
    ticks += scaled / scale;
  }
  return Time(ticks);
}

std::vector<SegmentLine> parse_segment_lines(std::string_view text) {
  std::vector<SegmentLine> out;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = split_ws(lines[i]);
    if (fields.empty()) continue;
    if (fields.size() != 3) {
      throw StoreError(line_error(i + 1, "expected 'start end token'"));
    }
    auto start = parse_int(fields[0]);
    auto end = parse_int(fields[1]);
    if (!start || !end) {
      throw StoreError(line_error(i + 1, "malformed sample offset"));
    }
    if (*end < *start) {
      throw StoreError(line_error(i + 1, "end precedes start"));
    }
    out.push_back({Time(*start), Time(*end), std::string(fields[2])});
  }
  return out;
}

std::vector<TurnLine> parse_turn_lines(std::string_view text,
                                       std::int64_t resolution) {
  std::vector<TurnLine> out;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    if (!std::isdigit(static_cast<unsigned char>(line.front()))) {
      // Wrapped continuation of the previous turn's text.
      if (out.empty()) {
        throw StoreError(line_error(i + 1, "continuation before any turn"));
      }
      std::string& prev = out.back().text;
      if (!prev.empty()) prev += ' ';
      prev += line;
      continue;
    }
    std::size_t sp1 = line.find_first_of(" \t");
    if (sp1 == std::string_view::npos) {
      throw StoreError(line_error(i + 1, "expected 'start end speaker: text'"));
    }
    std::string_view rest = trim(line.substr(sp1));
    std::size_t sp2 = rest.find_first_of(" \t");
    if (sp2 == std::string_view::npos) {
      throw StoreError(line_error(i + 1, "expected 'start end speaker: text'"));
    }
    std::string_view start_text = line.substr(0, sp1);
    std::string_view end_text = rest.substr(0, sp2);
    rest = trim(rest.substr(sp2));
    std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw StoreError(line_error(i + 1, "missing ':' after speaker"));
    }
    std::string_view speaker = rest.substr(0, colon);
    if (speaker.empty() || split_ws(speaker).size() != 1 ||
        speaker != trim(speaker)) {
      throw StoreError(line_error(i + 1, "malformed speaker"));
    }
    TurnLine turn;
    try {
      turn.start = parse_seconds(start_text, resolution);
      turn.end = parse_seconds(end_text, resolution);
    } catch (const StoreError& e) {
      throw StoreError(line_error(i + 1, e.what()));
    }
    if (!(turn.start < turn.end)) {
      throw StoreError(line_error(i + 1, "turn end must follow its start"));
    }
    turn.speaker = std::string(speaker);
    turn.text = std::string(trim(rest.substr(colon + 1)));
    out.push_back(std::move(turn));
  }
  return out;
}

RelationalStore import_timit(const std::vector<SegmentLine>& words,
                             const std::vector<SegmentLine>& phones,
                             std::int64_t resolution) {
  // One node per distinct offset, shared between tiers, numbered by time.
  std::map<std::int64_t, NodeId> node_at;
  for (const auto* tier : {&phones, &words}) {
    for (const SegmentLine& s : *tier) {
      if (s.end < s.start) throw StoreError("segment end precedes start");
      node_at.emplace(s.start.ticks, NodeId());
      node_at.emplace(s.end.ticks, NodeId());
    }
  }
  std::vector<TimeRow> times;
  std::uint64_t next_node = 0;
  for (auto& [ticks, id] : node_at) {
    id = NodeId(next_node++);
    times.push_back({id, Time(ticks)});
  }

  std::vector<ArcRow> arcs;
  std::vector<LabelRow> labels;
  std::uint64_t next_arc = 1;
  auto add = [&](const std::vector<SegmentLine>& tier, const char* type) {
    for (const SegmentLine& s : tier) {
      ArcId id(next_arc++);
      arcs.push_back({id, node_at[s.start.ticks], node_at[s.end.ticks], type});
      labels.push_back({id, s.token});
    }
  };
  add(phones, "P");
  add(words, "W");

  StoreMeta meta;
  meta.resolution = resolution;
  meta.corpus = "timit";
  meta.type_aliases = {
      {"word", "W"}, {"ph", "P"}, {"phone", "P"}, {"phonetic", "P"}};
  return RelationalStore(std::move(arcs), std::move(times), std::move(labels),
                         {}, std::move(meta));
}

RelationalStore import_turns(const std::vector<TurnLine>& turns,
                             std::int64_t resolution) {
  std::map<std::string, TimelineId> channel;
  std::map<std::pair<std::string, std::int64_t>, NodeId> boundary;
  std::vector<TimeRow> times;
  std::vector<TimelineRow> timelines;
  std::vector<ArcRow> arcs;
  std::vector<LabelRow> labels;
  std::uint64_t next_node = 0, next_arc = 1;

  auto fresh_node = [&](TimelineId tl) {
    NodeId id(next_node++);
    timelines.push_back({id, tl});
    return id;
  };
  // Boundary nodes are shared only within one speaker's channel.
  auto timed_node = [&](const std::string& speaker, Time t, TimelineId tl) {
    auto [it, inserted] = boundary.emplace(std::pair(speaker, t.ticks), NodeId());
    if (inserted) {
      it->second = fresh_node(tl);
      times.push_back({it->second, t});
    }
    return it->second;
  };
  auto add_arc = [&](NodeId src, NodeId dst, const char* type,
                     std::string label) {
    ArcId id(next_arc++);
    arcs.push_back({id, src, dst, type});
    labels.push_back({id, std::move(label)});
  };

  for (const TurnLine& turn : turns) {
    if (turn.speaker.empty()) throw StoreError("turn without speaker");
    if (!(turn.start < turn.end)) {
      throw StoreError("turn end must follow its start");
    }
    auto [ch, unused] =
        channel.emplace(turn.speaker, TimelineId(channel.size() + 1));
    TimelineId tl = ch->second;
    NodeId start = timed_node(turn.speaker, turn.start, tl);
    NodeId end = timed_node(turn.speaker, turn.end, tl);

    std::vector<std::string> tokens;
    std::istringstream words(turn.text);
    for (std::string w; words >> w;) tokens.push_back(w);
    NodeId at = start;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      NodeId next = i + 1 == tokens.size() ? end : fresh_node(tl);
      add_arc(at, next, "W", tokens[i]);
      at = next;
    }
    add_arc(start, end, "SPKR", turn.speaker);
  }

  StoreMeta meta;
  meta.resolution = resolution;
  meta.corpus = "turns";
  meta.type_aliases = {{"word", "W"}, {"speaker", "SPKR"}, {"turn", "SPKR"}};
  return RelationalStore(std::move(arcs), std::move(times), std::move(labels),
                         std::move(timelines), std::move(meta));
}

}  // namespace agq
