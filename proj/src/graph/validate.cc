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

#include <algorithm>
#include <limits>

#include "agq/graph.h"

namespace agq {

const char* violation_code(Violation v) {
  switch (v) {
    case Violation::kCycle:
      return "CYCLE";
    case Violation::kIsolatedNode:
      return "ISOLATED_NODE";
    case Violation::kTimeOrder:
      return "TIME_ORDER";
    case Violation::kUntimedBoundary:
      return "UNTIMED_BOUNDARY";
    case Violation::kCrossTimeline:
      return "CROSS_TIMELINE";
  }
  return "UNKNOWN";
}

bool ValidationReport::has(Violation v) const {
  return std::any_of(violations.begin(), violations.end(),
                     [v](const ViolationEntry& e) { return e.code == v; });
}

namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

// Iterative Tarjan. Components come out in reverse topological order of the
// condensation.
std::vector<std::vector<std::uint32_t>> strongly_connected(
    const AnnotationGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::vector<std::uint32_t>> components;
  std::uint32_t counter = 0;

  struct Frame {
    std::uint32_t node;
    std::size_t next_arc;
  };
  std::vector<Frame> frames;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto out = g.out_arcs(f.node);
      if (f.next_arc < out.size()) {
        std::uint32_t w = g.dst_index(out[f.next_arc++]);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      std::uint32_t v = f.node;
      frames.pop_back();
      if (!frames.empty()) {
        low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      }
      if (low[v] == index[v]) {
        std::vector<std::uint32_t> comp;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

std::string describe_time(const Node& n) {
  return "node " + std::to_string(n.id.value) + " at " +
         std::to_string(n.time->ticks);
}

}  // namespace

ValidationReport validate(const AnnotationGraph& g) {
  ValidationReport report;
  auto nodes = g.nodes();

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::size_t in = g.in_arcs(i).size();
    const std::size_t out = g.out_arcs(i).size();
    const std::uint64_t id = nodes[i].id.value;
    // A degree-zero node is reported once, as isolated.
    if (in + out == 0) {
      report.violations.push_back({Violation::kIsolatedNode, {id},
                                   "node " + std::to_string(id) +
                                       " has no incident arcs"});
    } else if ((in == 0 || out == 0) && !nodes[i].time) {
      report.violations.push_back(
          {Violation::kUntimedBoundary, {id},
           "node " + std::to_string(id) + " has no " +
               (in == 0 ? "incoming" : "outgoing") + " arc and no time"});
    }
  }

  for (std::size_t a = 0; a < g.arc_count(); ++a) {
    TimelineId from = g.timeline_at(g.src_index(a));
    TimelineId to = g.timeline_at(g.dst_index(a));
    if (from != to) {
      const Arc& arc = g.arcs()[a];
      report.violations.push_back(
          {Violation::kCrossTimeline, {arc.id.value},
           "arc " + std::to_string(arc.id.value) + " joins timeline " +
               std::to_string(from.value) + " to timeline " +
               std::to_string(to.value)});
    }
  }

  auto components = strongly_connected(g);
  std::vector<std::uint32_t> comp_of(nodes.size());
  for (std::uint32_t c = 0; c < components.size(); ++c) {
    for (std::uint32_t v : components[c]) comp_of[v] = c;
  }
  for (const auto& comp : components) {
    bool cyclic = comp.size() > 1;
    if (!cyclic) {
      for (std::uint32_t a : g.out_arcs(comp[0])) {
        if (g.dst_index(a) == comp[0]) cyclic = true;
      }
    }
    if (!cyclic) continue;
    std::vector<std::uint64_t> ids;
    for (std::uint32_t v : comp) ids.push_back(nodes[v].id.value);
    std::sort(ids.begin(), ids.end());
    std::string msg = "directed cycle through nodes";
    for (auto id : ids) msg += " " + std::to_string(id);
    report.violations.push_back({Violation::kCycle, ids, msg});
  }

  // Time order over the condensation: for every timed node, the latest timed
  // strict ancestor must not be later. Tarjan emits components in reverse
  // topological order, so walk them backwards.
  struct Latest {
    std::optional<Time> time;
    std::uint32_t node = 0;
  };
  auto later = [](Latest& into, const Latest& other) {
    if (other.time && (!into.time || *into.time < *other.time)) into = other;
  };
  std::vector<Latest> upstream(components.size());  // strict ancestors
  std::vector<Latest> within(components.size());    // timed members
  std::vector<std::pair<std::uint32_t, std::uint32_t>> inversions;
  for (std::size_t k = components.size(); k-- > 0;) {
    const auto& comp = components[k];
    for (std::uint32_t v : comp) {
      if (nodes[v].time) later(within[k], {nodes[v].time, v});
      for (std::uint32_t a : g.in_arcs(v)) {
        std::uint32_t c = comp_of[g.src_index(a)];
        if (c == k) continue;
        later(upstream[k], upstream[c]);
        later(upstream[k], within[c]);
      }
    }
    for (std::uint32_t v : comp) {
      if (!nodes[v].time) continue;
      Latest worst = upstream[k];
      if (comp.size() > 1) {
        for (std::uint32_t w : comp) {
          if (w != v && nodes[w].time) later(worst, {nodes[w].time, w});
        }
      }
      if (worst.time && *nodes[v].time < *worst.time) {
        inversions.emplace_back(worst.node, v);
      }
    }
  }
  std::sort(inversions.begin(), inversions.end(),
            [&](const auto& x, const auto& y) {
              return nodes[x.second].id < nodes[y.second].id;
            });
  for (auto [from, to] : inversions) {
    report.violations.push_back(
        {Violation::kTimeOrder,
         {nodes[from].id.value, nodes[to].id.value},
         describe_time(nodes[to]) + " is reachable from " +
             describe_time(nodes[from])});
  }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const ViolationEntry& x, const ViolationEntry& y) {
                     if (x.code != y.code) return x.code < y.code;
                     return x.ids < y.ids;
                   });
  return report;
}

}  // namespace agq
