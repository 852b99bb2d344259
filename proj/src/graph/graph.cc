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

#include "agq/graph.h"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace agq {

namespace {

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void build_csr(std::size_t node_count,
               const std::vector<std::uint32_t>& endpoint,
               std::vector<std::uint32_t>& offsets,
               std::vector<std::uint32_t>& items) {
  offsets.assign(node_count + 1, 0);
  for (std::uint32_t n : endpoint) ++offsets[n + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  items.assign(endpoint.size(), 0);
  std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
  // Arcs are visited in id order, so each adjacency list is id-sorted.
  for (std::uint32_t a = 0; a < endpoint.size(); ++a) {
    items[fill[endpoint[a]]++] = a;
  }
}

}  // namespace

AnnotationGraph AnnotationGraph::build(std::vector<Node> nodes,
                                       std::vector<Arc> arcs) {
  AnnotationGraph g;
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& a, const Arc& b) { return a.id < b.id; });

  g.node_pos_.reserve(nodes.size());
  std::size_t with_timeline = 0;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if (!g.node_pos_.emplace(nodes[i].id, i).second) {
      throw GraphError("duplicate node id " + std::to_string(nodes[i].id.value));
    }
    if (nodes[i].timeline) ++with_timeline;
  }
  if (with_timeline != 0 && with_timeline != nodes.size()) {
    throw GraphError("timeline table covers " + std::to_string(with_timeline) +
                     " of " + std::to_string(nodes.size()) + " nodes");
  }

  g.arc_pos_.reserve(arcs.size());
  g.arc_src_.reserve(arcs.size());
  g.arc_dst_.reserve(arcs.size());
  for (std::uint32_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (!g.arc_pos_.emplace(a.id, i).second) {
      throw GraphError("duplicate arc id " + std::to_string(a.id.value));
    }
    auto src = g.node_pos_.find(a.src);
    auto dst = g.node_pos_.find(a.dst);
    if (src == g.node_pos_.end() || dst == g.node_pos_.end()) {
      NodeId missing = src == g.node_pos_.end() ? a.src : a.dst;
      throw GraphError("arc " + std::to_string(a.id.value) +
                       " references unknown node " +
                       std::to_string(missing.value));
    }
    g.arc_src_.push_back(src->second);
    g.arc_dst_.push_back(dst->second);
  }
  build_csr(nodes.size(), g.arc_src_, g.out_offsets_, g.out_arcs_);
  build_csr(nodes.size(), g.arc_dst_, g.in_offsets_, g.in_arcs_);

  if (with_timeline == 0) {
    // Weakly connected components, numbered from 1 in order of their
    // smallest node id.
    std::vector<std::uint32_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0u);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      std::uint32_t x = find_root(parent, g.arc_src_[a]);
      std::uint32_t y = find_root(parent, g.arc_dst_[a]);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
    std::unordered_map<std::uint32_t, TimelineId> component;
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
      std::uint32_t root = find_root(parent, i);
      auto [it, inserted] =
          component.emplace(root, TimelineId(component.size() + 1));
      nodes[i].timeline = it->second;
    }
  } else {
    g.explicit_timelines_ = true;
  }
  for (const Node& n : nodes) g.timelines_.push_back(*n.timeline);
  std::sort(g.timelines_.begin(), g.timelines_.end());
  g.timelines_.erase(std::unique(g.timelines_.begin(), g.timelines_.end()),
                     g.timelines_.end());

  g.nodes_ = std::move(nodes);
  g.arcs_ = std::move(arcs);
  return g;
}

std::optional<std::size_t> AnnotationGraph::node_index(NodeId id) const {
  auto it = node_pos_.find(id);
  if (it == node_pos_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> AnnotationGraph::arc_index(ArcId id) const {
  auto it = arc_pos_.find(id);
  if (it == arc_pos_.end()) return std::nullopt;
  return it->second;
}

std::size_t AnnotationGraph::require_node(NodeId id) const {
  auto i = node_index(id);
  if (!i) throw GraphError("unknown node " + std::to_string(id.value));
  return *i;
}

std::size_t AnnotationGraph::require_arc(ArcId id) const {
  auto i = arc_index(id);
  if (!i) throw GraphError("unknown arc " + std::to_string(id.value));
  return *i;
}

std::span<const std::uint32_t> AnnotationGraph::out_arcs(
    std::size_t node_index) const {
  return std::span<const std::uint32_t>(out_arcs_)
      .subspan(out_offsets_[node_index],
               out_offsets_[node_index + 1] - out_offsets_[node_index]);
}

std::span<const std::uint32_t> AnnotationGraph::in_arcs(
    std::size_t node_index) const {
  return std::span<const std::uint32_t>(in_arcs_)
      .subspan(in_offsets_[node_index],
               in_offsets_[node_index + 1] - in_offsets_[node_index]);
}

AnnotationGraph build_graph(std::vector<Node> nodes, std::vector<Arc> arcs) {
  return AnnotationGraph::build(std::move(nodes), std::move(arcs));
}

std::optional<std::vector<std::uint32_t>> topological_order(
    const AnnotationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> indegree(n);
  for (std::size_t i = 0; i < n; ++i) indegree[i] = g.in_arcs(i).size();
  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) order.push_back(i);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::uint32_t a : g.out_arcs(order[head])) {
      std::uint32_t d = g.dst_index(a);
      if (--indegree[d] == 0) order.push_back(d);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

std::vector<Bounds> compute_bounds(const AnnotationGraph& g) {
  auto order = topological_order(g);
  if (!order) throw GraphError("bounding times undefined: graph has a cycle");
  const std::size_t n = g.node_count();
  std::vector<std::optional<Time>> ante(n), post(n);

  for (std::uint32_t v : *order) {
    if (g.nodes()[v].time) {
      ante[v] = g.nodes()[v].time;
      continue;
    }
    for (std::uint32_t a : g.in_arcs(v)) {
      const auto& up = ante[g.src_index(a)];
      if (up && (!ante[v] || *ante[v] < *up)) ante[v] = up;
    }
  }
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    std::uint32_t v = *it;
    if (g.nodes()[v].time) {
      post[v] = g.nodes()[v].time;
      continue;
    }
    for (std::uint32_t a : g.out_arcs(v)) {
      const auto& down = post[g.dst_index(a)];
      if (down && (!post[v] || *down < *post[v])) post[v] = down;
    }
  }

  std::vector<Bounds> bounds;
  bounds.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!ante[v] || !post[v]) {
      throw GraphError("node " + std::to_string(g.nodes()[v].id.value) +
                       " has no timed " + (ante[v] ? "descendant" : "ancestor"));
    }
    bounds.push_back({*ante[v], *post[v]});
  }
  return bounds;
}

Bounds bounding_times(const AnnotationGraph& g, NodeId n) {
  std::size_t i = g.require_node(n);
  return compute_bounds(g)[i];
}

TimelineId timeline_of(const AnnotationGraph& g, NodeId n) {
  return g.timeline_at(g.require_node(n));
}

}  // namespace agq
