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

#ifndef AGQ_RELSTORE_H_
#define AGQ_RELSTORE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agq/graph.h"
#include "agq/ids.h"

namespace agq {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArcRow {
  ArcId arc;
  NodeId src;
  NodeId dst;
  std::string type;

  friend bool operator==(const ArcRow&, const ArcRow&) = default;
};

struct TimeRow {
  NodeId node;
  Time time;

  friend bool operator==(const TimeRow&, const TimeRow&) = default;
};

struct LabelRow {
  ArcId arc;
  std::string label;

  friend bool operator==(const LabelRow&, const LabelRow&) = default;
};

struct TimelineRow {
  NodeId node;
  TimelineId timeline;

  friend bool operator==(const TimelineRow&, const TimelineRow&) = default;
};

struct StoreMeta {
  std::int64_t resolution = 1;  // ticks per second
  std::string corpus;
  // Query-level type names mapped onto stored arc types, e.g. word -> W.
  std::map<std::string, std::string> type_aliases;

  // The stored type a query constant denotes: its alias target if any,
  // otherwise the constant itself.
  const std::string& resolve_type(const std::string& name) const;

  friend bool operator==(const StoreMeta&, const StoreMeta&) = default;
};

// The arc, time and label relations plus an optional timeline assignment.
// Rows are kept sorted by key; keys are unique and every label names a known
// arc. Immutable after construction.
class RelationalStore {
 public:
  RelationalStore() = default;
  // Sorts rows and checks keys and label references. Throws StoreError.
  RelationalStore(std::vector<ArcRow> arcs, std::vector<TimeRow> times,
                  std::vector<LabelRow> labels,
                  std::vector<TimelineRow> timelines, StoreMeta meta);

  const std::vector<ArcRow>& arcs() const { return arcs_; }
  const std::vector<TimeRow>& times() const { return times_; }
  const std::vector<LabelRow>& labels() const { return labels_; }
  const std::vector<TimelineRow>& timelines() const { return timelines_; }
  const StoreMeta& meta() const { return meta_; }

  bool empty() const { return arcs_.empty() && times_.empty(); }

  friend bool operator==(const RelationalStore&,
                         const RelationalStore&) = default;

 private:
  std::vector<ArcRow> arcs_;
  std::vector<TimeRow> times_;
  std::vector<LabelRow> labels_;
  std::vector<TimelineRow> timelines_;
  StoreMeta meta_;
};

// One line of a word or phone transcription: "start end token".
struct SegmentLine {
  Time start;
  Time end;
  std::string token;
};

// One speaker turn: "start end speaker: text". Text may be empty.
struct TurnLine {
  Time start;
  Time end;
  std::string speaker;
  std::string text;
};

// Parsers for the two source formats. Sample offsets are integers; turn
// times are decimal seconds converted exactly at `resolution`. Throw
// StoreError naming the line.
std::vector<SegmentLine> parse_segment_lines(std::string_view text);
std::vector<TurnLine> parse_turn_lines(std::string_view text,
                                       std::int64_t resolution);
// Exact decimal-seconds to ticks conversion; rejects digits the resolution
// cannot represent.
Time parse_seconds(std::string_view text, std::int64_t resolution);

// Word (type W) and phone (type P) tiers over shared time-keyed nodes.
RelationalStore import_timit(const std::vector<SegmentLine>& words,
                             const std::vector<SegmentLine>& phones,
                             std::int64_t resolution);

// Speaker turns: timed boundary nodes, an untimed chain of W arcs for the
// words and one SPKR arc per turn. One timeline per speaker channel.
RelationalStore import_turns(const std::vector<TurnLine>& turns,
                             std::int64_t resolution);

AnnotationGraph to_graph(const RelationalStore& s);
RelationalStore export_relations(const AnnotationGraph& g,
                                 const StoreMeta& meta);

// Tab-separated directory format: arc.tsv, time.tsv, label.tsv, optional
// timeline.tsv, and meta.txt. Throw StoreError naming the offending file.
void save(const RelationalStore& s, const std::filesystem::path& dir);
RelationalStore load(const std::filesystem::path& dir);

}  // namespace agq

#endif  // AGQ_RELSTORE_H_
