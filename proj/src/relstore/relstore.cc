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

#include "agq/relstore.h"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace agq {

const std::string& StoreMeta::resolve_type(const std::string& name) const {
  auto it = type_aliases.find(name);
  return it == type_aliases.end() ? name : it->second;
}

namespace {

template <class Row, class Key>
void sort_unique(std::vector<Row>& rows, Key key, const char* relation) {
  std::sort(rows.begin(), rows.end(),
            [&](const Row& a, const Row& b) { return key(a) < key(b); });
  auto dup = std::adjacent_find(
      rows.begin(), rows.end(),
      [&](const Row& a, const Row& b) { return key(a) == key(b); });
  if (dup != rows.end()) {
    throw StoreError(std::string("duplicate key ") +
                     std::to_string(key(*dup).value) + " in " + relation);
  }
}

}  // namespace

RelationalStore::RelationalStore(std::vector<ArcRow> arcs,
                                 std::vector<TimeRow> times,
                                 std::vector<LabelRow> labels,
                                 std::vector<TimelineRow> timelines,
                                 StoreMeta meta)
    : arcs_(std::move(arcs)),
      times_(std::move(times)),
      labels_(std::move(labels)),
      timelines_(std::move(timelines)),
      meta_(std::move(meta)) {
  if (meta_.resolution <= 0) {
    throw StoreError("resolution must be positive, got " +
                     std::to_string(meta_.resolution));
  }
  sort_unique(arcs_, [](const ArcRow& r) { return r.arc; }, "arc");
  sort_unique(times_, [](const TimeRow& r) { return r.node; }, "time");
  sort_unique(labels_, [](const LabelRow& r) { return r.arc; }, "label");
  sort_unique(timelines_, [](const TimelineRow& r) { return r.node; },
              "timeline");
  // Both lists are sorted by arc id, so one merge pass checks references.
  auto arc = arcs_.begin();
  for (const LabelRow& l : labels_) {
    while (arc != arcs_.end() && arc->arc < l.arc) ++arc;
    if (arc == arcs_.end() || arc->arc != l.arc) {
      throw StoreError("label for unknown arc " + std::to_string(l.arc.value));
    }
  }
}

AnnotationGraph to_graph(const RelationalStore& s) {
  std::set<NodeId> ids;
  for (const ArcRow& r : s.arcs()) {
    ids.insert(r.src);
    ids.insert(r.dst);
  }
  for (const TimeRow& r : s.times()) ids.insert(r.node);
  for (const TimelineRow& r : s.timelines()) ids.insert(r.node);

  std::unordered_map<NodeId, Node> nodes;
  for (NodeId id : ids) nodes[id] = Node{id, std::nullopt, std::nullopt};
  for (const TimeRow& r : s.times()) nodes[r.node].time = r.time;
  for (const TimelineRow& r : s.timelines()) nodes[r.node].timeline = r.timeline;

  std::vector<Node> node_list;
  node_list.reserve(nodes.size());
  for (NodeId id : ids) node_list.push_back(nodes[id]);

  std::unordered_map<ArcId, std::string> labels;
  for (const LabelRow& r : s.labels()) labels[r.arc] = r.label;
  std::vector<Arc> arcs;
  arcs.reserve(s.arcs().size());
  for (const ArcRow& r : s.arcs()) {
    auto it = labels.find(r.arc);
    arcs.push_back(
        Arc{r.arc, r.src, r.dst, r.type, it == labels.end() ? "" : it->second});
  }
  try {
    return build_graph(std::move(node_list), std::move(arcs));
  } catch (const GraphError& e) {
    throw StoreError(e.what());
  }
}

RelationalStore export_relations(const AnnotationGraph& g,
                                 const StoreMeta& meta) {
  std::vector<ArcRow> arcs;
  std::vector<LabelRow> labels;
  for (const Arc& a : g.arcs()) {
    arcs.push_back({a.id, a.src, a.dst, a.type});
    // An empty label and a missing label row are the same thing.
    if (!a.label.empty()) labels.push_back({a.id, a.label});
  }
  std::vector<TimeRow> times;
  std::vector<TimelineRow> timelines;
  for (const Node& n : g.nodes()) {
    if (n.time) times.push_back({n.id, *n.time});
    if (g.explicit_timelines()) timelines.push_back({n.id, *n.timeline});
  }
  return RelationalStore(std::move(arcs), std::move(times), std::move(labels),
                         std::move(timelines), meta);
}

}  // namespace agq
