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

#ifndef AGQ_GRAPH_H_
#define AGQ_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "agq/ids.h"

namespace agq {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node {
  NodeId id;
  std::optional<Time> time;
  // Empty on input means "derive from connectivity". After build_graph every
  // stored node carries its timeline.
  std::optional<TimelineId> timeline;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Arc {
  ArcId id;
  NodeId src;
  NodeId dst;
  std::string type;
  std::string label;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Anchored annotation graph: nodes, typed and labeled arcs, a partial time
// function and a partition of the nodes into timelines. Immutable after
// construction. Nodes and arcs are kept sorted by id; most accessors work on
// the dense position ("index") of a node or arc in those arrays.
class AnnotationGraph {
 public:
  AnnotationGraph() = default;

  // Builds the graph and its src/dst indexes. Does not validate; see
  // validate(). Throws GraphError on duplicate ids, arcs naming unknown
  // nodes, or a timeline table that covers only some of the nodes.
  static AnnotationGraph build(std::vector<Node> nodes, std::vector<Arc> arcs);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  bool empty() const { return nodes_.empty(); }

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Arc> arcs() const { return arcs_; }

  std::optional<std::size_t> node_index(NodeId id) const;
  std::optional<std::size_t> arc_index(ArcId id) const;
  // Throw GraphError for unknown ids.
  std::size_t require_node(NodeId id) const;
  std::size_t require_arc(ArcId id) const;

  const Node& node(NodeId id) const { return nodes_[require_node(id)]; }
  const Arc& arc(ArcId id) const { return arcs_[require_arc(id)]; }

  // Arc indices leaving / entering the node at `node_index`, in arc id order.
  std::span<const std::uint32_t> out_arcs(std::size_t node_index) const;
  std::span<const std::uint32_t> in_arcs(std::size_t node_index) const;

  std::size_t src_index(std::size_t arc_index) const {
    return arc_src_[arc_index];
  }
  std::size_t dst_index(std::size_t arc_index) const {
    return arc_dst_[arc_index];
  }

  TimelineId timeline_at(std::size_t node_index) const {
    return *nodes_[node_index].timeline;
  }
  // Distinct timelines in ascending order.
  std::span<const TimelineId> timelines() const { return timelines_; }
  // True when timelines came from an explicit table rather than connectivity.
  bool explicit_timelines() const { return explicit_timelines_; }

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::unordered_map<NodeId, std::uint32_t> node_pos_;
  std::unordered_map<ArcId, std::uint32_t> arc_pos_;
  std::vector<std::uint32_t> arc_src_;
  std::vector<std::uint32_t> arc_dst_;
  // CSR adjacency.
  std::vector<std::uint32_t> out_offsets_, out_arcs_;
  std::vector<std::uint32_t> in_offsets_, in_arcs_;
  std::vector<TimelineId> timelines_;
  bool explicit_timelines_ = false;
};

AnnotationGraph build_graph(std::vector<Node> nodes, std::vector<Arc> arcs);

enum class Violation {
  kCycle,
  kIsolatedNode,
  kTimeOrder,
  kUntimedBoundary,
  kCrossTimeline,
};

const char* violation_code(Violation v);

struct ViolationEntry {
  Violation code;
  // Node ids for all codes except kCrossTimeline, which names the arc.
  std::vector<std::uint64_t> ids;
  std::string message;
};

struct ValidationReport {
  std::vector<ViolationEntry> violations;

  bool ok() const { return violations.empty(); }
  bool has(Violation v) const;
};

// Checks acyclicity, no degree-zero nodes, time order along paths, timed
// boundary nodes and timeline-respecting arcs. Violations are data; this
// never throws.
ValidationReport validate(const AnnotationGraph& g);

struct Bounds {
  Time ante;
  Time post;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

// ante = latest timed ancestor-or-self, post = earliest timed
// descendant-or-self, indexed by node position. One forward and one backward
// topological sweep. Throws GraphError on cycles or on a node with no timed
// ancestor or descendant (impossible in a valid graph).
std::vector<Bounds> compute_bounds(const AnnotationGraph& g);

Bounds bounding_times(const AnnotationGraph& g, NodeId n);

TimelineId timeline_of(const AnnotationGraph& g, NodeId n);

// Node positions in a topological order, or nullopt when the graph has a
// cycle.
std::optional<std::vector<std::uint32_t>> topological_order(
    const AnnotationGraph& g);

}  // namespace agq

#endif  // AGQ_GRAPH_H_
