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

#ifndef AGQ_TINDEX_H_
#define AGQ_TINDEX_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "agq/graph.h"

namespace agq {

class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimelineStats {
  TimelineId timeline;
  std::size_t nodes = 0;
  std::size_t timed = 0;
  std::size_t residual = 0;
  std::optional<std::size_t> precedence;  // |TC| within the timeline
};

struct IndexStats {
  std::size_t node_count = 0;
  std::size_t timed_node_count = 0;
  std::size_t residual_size = 0;
  // Residual pairs whose bounds strictly overlap (post(m) > ante(n)); the
  // remainder are reachable pairs whose bounds touch.
  std::size_t strict_residual_size = 0;
  // Brute-force |TC| summed over timelines; empty unless requested and every
  // timeline is within the size cap.
  std::optional<std::size_t> full_precedence_size;
  std::size_t max_timeline_residual = 0;
  std::optional<std::size_t> max_timeline_precedence;
  std::vector<TimelineStats> timelines;
};

// Decomposition of the precedence relation into per-node time bounds plus a
// residual set of reachable pairs the bounds cannot order:
//
//   residual = {(m, n) | m reaches n, m != n, post(m) >= ante(n)}
//   precedes(m, n) = post(m) < ante(n) or (m, n) in residual
//
// Using >= rather than > keeps reachable pairs with touching bounds, which
// the bound test alone would miss. Immutable after build.
class TimeIndex {
 public:
  // Throws IndexError when the graph does not validate.
  static TimeIndex build(std::shared_ptr<const AnnotationGraph> graph);

  const AnnotationGraph& graph() const { return *graph_; }

  Bounds bounds(NodeId n) const { return bounds_[graph_->require_node(n)]; }
  Bounds bounds_at(std::size_t node_index) const { return bounds_[node_index]; }

  // Node-level predicates. Throw GraphError for unknown ids.
  bool precedes(NodeId m, NodeId n) const;
  bool precedes_eq(NodeId m, NodeId n) const;
  bool reachable(NodeId m, NodeId n) const;  // by >= 0 arcs

  // Arc-level predicates.
  bool overlaps(ArcId a, ArcId b) const;
  bool includes_struct(ArcId outer, ArcId inner) const;
  bool subinterval(ArcId inner, ArcId outer) const;

  // Index-position variants used by the evaluator.
  bool precedes_at(std::size_t m, std::size_t n) const;
  bool precedes_eq_at(std::size_t m, std::size_t n) const;
  bool reachable_at(std::size_t m, std::size_t n) const;
  bool overlaps_at(std::size_t a, std::size_t b) const;
  bool includes_at(std::size_t outer, std::size_t inner) const;
  bool subinterval_at(std::size_t inner, std::size_t outer) const;
  bool in_residual_at(std::size_t m, std::size_t n) const;

  // Arcs whose source is no earlier than `lo` (by ante) and whose target is
  // no later than `hi` (by post), in id order. Throws std::invalid_argument
  // when lo > hi.
  std::vector<ArcId> arcs_in_range(Time lo, Time hi) const;
  // Same, as arc positions in ascending order.
  std::vector<std::uint32_t> arc_positions_in_range(Time lo, Time hi) const;

  // Residual pairs as node ids, sorted.
  std::vector<std::pair<NodeId, NodeId>> residual() const;
  std::size_t residual_size() const { return residual_.size(); }

  // full_precedence_size is computed by explicit closure when
  // `with_precedence` is set, for timelines of at most `cap` nodes.
  IndexStats stats(bool with_precedence = false, std::size_t cap = 5000) const;

 private:
  std::shared_ptr<const AnnotationGraph> graph_;
  std::vector<Bounds> bounds_;
  // Sorted (source, target) position pairs, grouped by source.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> residual_;
  std::vector<std::uint32_t> residual_offsets_;
  // Arc positions sorted by ante(src) and by post(dst).
  std::vector<std::uint32_t> by_ante_;
  std::vector<std::uint32_t> by_post_;
};

// "timeline TAB nodes TAB timed TAB residual [TAB tc]" per timeline.
std::string format_index_stats(const IndexStats& stats);

}  // namespace agq

#endif  // AGQ_TINDEX_H_
