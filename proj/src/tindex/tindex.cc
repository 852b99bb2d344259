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

#include "agq/tindex.h"

#include <algorithm>
#include <sstream>

namespace agq {

TimeIndex TimeIndex::build(std::shared_ptr<const AnnotationGraph> graph) {
  if (!graph) throw IndexError("no graph");
  ValidationReport report = validate(*graph);
  if (!report.ok()) {
    const ViolationEntry& first = report.violations.front();
    throw IndexError("graph is not a valid annotation graph (" +
                     std::to_string(report.violations.size()) +
                     " violations; first " + violation_code(first.code) +
                     ": " + first.message + ")");
  }

  TimeIndex ix;
  ix.graph_ = std::move(graph);
  const AnnotationGraph& g = *ix.graph_;
  ix.bounds_ = compute_bounds(g);
  const std::size_t n = g.node_count();

  // For every source, walk forward only through nodes whose ante does not
  // exceed post(source). Any node past such a frontier has an even later
  // ante, so the walk finds exactly the residual targets.
  std::vector<std::uint32_t> seen(n, 0);
  std::vector<std::uint32_t> stack;
  std::uint32_t stamp = 0;
  ix.residual_offsets_.assign(n + 1, 0);
  for (std::uint32_t m = 0; m < n; ++m) {
    ++stamp;
    const Time limit = ix.bounds_[m].post;
    std::size_t first = ix.residual_.size();
    stack.assign(1, m);
    seen[m] = stamp;
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      for (std::uint32_t a : g.out_arcs(x)) {
        std::uint32_t y = g.dst_index(a);
        if (seen[y] == stamp || limit < ix.bounds_[y].ante) continue;
        seen[y] = stamp;
        ix.residual_.emplace_back(m, y);
        stack.push_back(y);
      }
    }
    std::sort(ix.residual_.begin() + first, ix.residual_.end());
    ix.residual_offsets_[m + 1] = ix.residual_.size();
  }

  ix.by_ante_.resize(g.arc_count());
  for (std::uint32_t a = 0; a < g.arc_count(); ++a) ix.by_ante_[a] = a;
  ix.by_post_ = ix.by_ante_;
  std::stable_sort(ix.by_ante_.begin(), ix.by_ante_.end(),
                   [&](std::uint32_t x, std::uint32_t y) {
                     return ix.bounds_[g.src_index(x)].ante <
                            ix.bounds_[g.src_index(y)].ante;
                   });
  std::stable_sort(ix.by_post_.begin(), ix.by_post_.end(),
                   [&](std::uint32_t x, std::uint32_t y) {
                     return ix.bounds_[g.dst_index(x)].post <
                            ix.bounds_[g.dst_index(y)].post;
                   });
  return ix;
}

bool TimeIndex::in_residual_at(std::size_t m, std::size_t n) const {
  auto begin = residual_.begin() + residual_offsets_[m];
  auto end = residual_.begin() + residual_offsets_[m + 1];
  return std::binary_search(
      begin, end, std::pair<std::uint32_t, std::uint32_t>(m, n));
}

bool TimeIndex::precedes_at(std::size_t m, std::size_t n) const {
  return bounds_[m].post < bounds_[n].ante || in_residual_at(m, n);
}

bool TimeIndex::precedes_eq_at(std::size_t m, std::size_t n) const {
  return m == n || bounds_[m].post <= bounds_[n].ante || in_residual_at(m, n);
}

bool TimeIndex::reachable_at(std::size_t m, std::size_t n) const {
  if (m == n) return true;
  const Bounds& target = bounds_[n];
  if (target.ante <= bounds_[m].post) return in_residual_at(m, n);
  // Bounds separate the pair, so the residual says nothing. Search, keeping
  // to nodes whose bounds nest inside the target's: every node on a path to
  // n has ante <= ante(n) and post <= post(n).
  const AnnotationGraph& g = *graph_;
  std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(m)};
  std::vector<bool> seen(g.node_count(), false);
  seen[m] = true;
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (std::uint32_t a : g.out_arcs(x)) {
      std::uint32_t y = g.dst_index(a);
      if (y == n) return true;
      if (seen[y] || target.ante < bounds_[y].ante ||
          target.post < bounds_[y].post) {
        continue;
      }
      seen[y] = true;
      stack.push_back(y);
    }
  }
  return false;
}

bool TimeIndex::overlaps_at(std::size_t a, std::size_t b) const {
  const AnnotationGraph& g = *graph_;
  return precedes_eq_at(g.src_index(a), g.dst_index(b)) &&
         precedes_eq_at(g.src_index(b), g.dst_index(a));
}

bool TimeIndex::includes_at(std::size_t outer, std::size_t inner) const {
  const AnnotationGraph& g = *graph_;
  return reachable_at(g.src_index(outer), g.src_index(inner)) &&
         reachable_at(g.dst_index(inner), g.dst_index(outer));
}

bool TimeIndex::subinterval_at(std::size_t inner, std::size_t outer) const {
  const AnnotationGraph& g = *graph_;
  return precedes_eq_at(g.src_index(outer), g.src_index(inner)) &&
         precedes_eq_at(g.dst_index(inner), g.dst_index(outer));
}

bool TimeIndex::precedes(NodeId m, NodeId n) const {
  return precedes_at(graph_->require_node(m), graph_->require_node(n));
}

bool TimeIndex::precedes_eq(NodeId m, NodeId n) const {
  return precedes_eq_at(graph_->require_node(m), graph_->require_node(n));
}

bool TimeIndex::reachable(NodeId m, NodeId n) const {
  return reachable_at(graph_->require_node(m), graph_->require_node(n));
}

bool TimeIndex::overlaps(ArcId a, ArcId b) const {
  return overlaps_at(graph_->require_arc(a), graph_->require_arc(b));
}

bool TimeIndex::includes_struct(ArcId outer, ArcId inner) const {
  return includes_at(graph_->require_arc(outer), graph_->require_arc(inner));
}

bool TimeIndex::subinterval(ArcId inner, ArcId outer) const {
  return subinterval_at(graph_->require_arc(inner), graph_->require_arc(outer));
}

std::vector<std::uint32_t> TimeIndex::arc_positions_in_range(Time lo,
                                                             Time hi) const {
  if (hi < lo) throw std::invalid_argument("empty time range: lo > hi");
  const AnnotationGraph& g = *graph_;
  auto from = std::partition_point(
      by_ante_.begin(), by_ante_.end(),
      [&](std::uint32_t a) { return bounds_[g.src_index(a)].ante < lo; });
  auto to = std::partition_point(
      by_post_.begin(), by_post_.end(),
      [&](std::uint32_t a) { return bounds_[g.dst_index(a)].post <= hi; });
  std::vector<std::uint32_t> out;
  // Scan whichever side of the dual index is shorter.
  if (by_ante_.end() - from <= to - by_post_.begin()) {
    for (auto it = from; it != by_ante_.end(); ++it) {
      if (bounds_[g.dst_index(*it)].post <= hi) out.push_back(*it);
    }
  } else {
    for (auto it = by_post_.begin(); it != to; ++it) {
      if (lo <= bounds_[g.src_index(*it)].ante) out.push_back(*it);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ArcId> TimeIndex::arcs_in_range(Time lo, Time hi) const {
  std::vector<ArcId> out;
  for (std::uint32_t a : arc_positions_in_range(lo, hi)) {
    out.push_back(graph_->arcs()[a].id);
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> TimeIndex::residual() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(residual_.size());
  for (auto [m, n] : residual_) {
    out.emplace_back(graph_->nodes()[m].id, graph_->nodes()[n].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// |TC| within one timeline by explicit reachability closure.
std::size_t count_precedence(const AnnotationGraph& g,
                             const std::vector<Bounds>& bounds,
                             const std::vector<std::uint32_t>& topo,
                             const std::vector<std::uint32_t>& members) {
  const std::size_t k = members.size();
  const std::size_t words = (k + 63) / 64;
  std::vector<std::int64_t> local(g.node_count(), -1);
  for (std::size_t i = 0; i < k; ++i) local[members[i]] = i;
  std::vector<std::uint64_t> reach(k * words, 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::int64_t v = local[*it];
    if (v < 0) continue;
    std::uint64_t* row = &reach[v * words];
    for (std::uint32_t a : g.out_arcs(*it)) {
      std::int64_t w = local[g.dst_index(a)];
      if (w < 0) continue;
      row[w / 64] |= std::uint64_t{1} << (w % 64);
      const std::uint64_t* sub = &reach[w * words];
      for (std::size_t j = 0; j < words; ++j) row[j] |= sub[j];
    }
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      bool reach_ij = (reach[i * words + j / 64] >> (j % 64)) & 1;
      if (reach_ij ||
          bounds[members[i]].post < bounds[members[j]].ante) {
        ++count;
      }
    }
  }
  return count;
}

}  // namespace

IndexStats TimeIndex::stats(bool with_precedence, std::size_t cap) const {
  const AnnotationGraph& g = *graph_;
  IndexStats s;
  s.node_count = g.node_count();
  s.residual_size = residual_.size();
  std::vector<std::vector<std::uint32_t>> members(g.timelines().size());
  auto slot = [&](TimelineId tl) {
    return std::lower_bound(g.timelines().begin(), g.timelines().end(), tl) -
           g.timelines().begin();
  };
  for (const TimelineId& tl : g.timelines()) {
    TimelineStats ts;
    ts.timeline = tl;
    s.timelines.push_back(ts);
  }
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    auto t = slot(g.timeline_at(v));
    members[t].push_back(v);
    ++s.timelines[t].nodes;
    if (g.nodes()[v].time) {
      ++s.timelines[t].timed;
      ++s.timed_node_count;
    }
  }
  for (auto [m, n] : residual_) {
    ++s.timelines[slot(g.timeline_at(m))].residual;
    if (bounds_[n].ante < bounds_[m].post) ++s.strict_residual_size;
  }
  for (const TimelineStats& t : s.timelines) {
    s.max_timeline_residual = std::max(s.max_timeline_residual, t.residual);
  }

  if (with_precedence) {
    auto topo = topological_order(g);
    bool complete = true;
    std::size_t total = 0, max_tc = 0;
    for (std::size_t t = 0; t < members.size(); ++t) {
      if (members[t].size() > cap) {
        complete = false;
        continue;
      }
      std::size_t tc = count_precedence(g, bounds_, *topo, members[t]);
      s.timelines[t].precedence = tc;
      total += tc;
      max_tc = std::max(max_tc, tc);
    }
    if (complete) {
      s.full_precedence_size = total;
      s.max_timeline_precedence = max_tc;
    }
  }
  return s;
}

std::string format_index_stats(const IndexStats& stats) {
  std::ostringstream out;
  for (const TimelineStats& t : stats.timelines) {
    out << t.timeline.value << '\t' << t.nodes << '\t' << t.timed << '\t'
        << t.residual;
    if (t.precedence) out << '\t' << *t.precedence;
    out << '\n';
  }
  return out.str();
}

}  // namespace agq
