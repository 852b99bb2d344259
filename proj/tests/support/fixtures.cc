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

#include "fixtures.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace agq::testing {

#ifndef AGQ_TEST_DIR
#error "AGQ_TEST_DIR must point at the tests directory"
#endif

std::string data_dir() { return std::string(AGQ_TEST_DIR) + "/data"; }
std::string golden_dir() { return std::string(AGQ_TEST_DIR) + "/golden"; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

StoreMeta timit_meta() {
  StoreMeta m;
  m.resolution = 16000;
  m.corpus = "timit";
  m.type_aliases = {{"word", "W"},     {"ph", "P"},   {"phone", "P"},
                    {"phonetic", "P"}, {"parse", "S"}, {"tone", "T"}};
  return m;
}

namespace {

RelationalStore timit_with(std::optional<std::int64_t> node19) {
  struct A {
    std::uint64_t id, x, y;
    const char* type;
    const char* label;
  };
  const A arcs[] = {
      {1, 0, 1, "P", "h#"},    {2, 1, 2, "P", "sh"},    {3, 2, 3, "P", "iy"},
      {4, 3, 4, "P", "hv"},    {5, 4, 5, "P", "ae"},    {6, 5, 6, "P", "dcl"},
      {7, 6, 7, "P", "y"},     {8, 7, 8, "P", "axr"},   {9, 8, 9, "P", "dcl"},
      {10, 9, 10, "P", "d"},   {11, 10, 11, "P", "aa"}, {12, 11, 12, "P", "r"},
      {13, 12, 13, "P", "kcl"}, {14, 13, 14, "P", "k"}, {15, 14, 15, "P", "s"},
      {16, 15, 16, "P", "uw"}, {17, 16, 17, "P", "q"},  {18, 1, 3, "W", "she"},
      {19, 3, 6, "W", "had"},  {20, 6, 8, "W", "your"}, {21, 8, 14, "W", "dark"},
      {22, 14, 17, "W", "suit"}, {23, 1, 18, "S", "S"}, {24, 3, 18, "S", "VP"},
      {25, 1, 3, "S", "NP"},   {26, 3, 6, "S", "V"},    {27, 6, 17, "S", "NP"},
      {28, 1, 17, "Imt", "L-"}, {29, 1, 18, "Itl", "L%"},
      {30, 1, 19, "T", "0"},   {31, 19, 20, "T", "H*"},
  };
  const std::int64_t times[] = {0,     2360,  3270,  5200,  6160,  8720,
                                9680,  10173, 11077, 12019, 12257, 14120,
                                15240, 16200, 16626, 18480, 20685, 22179};
  std::vector<ArcRow> arc_rows;
  std::vector<LabelRow> label_rows;
  for (const A& a : arcs) {
    arc_rows.push_back({ArcId(a.id), NodeId(a.x), NodeId(a.y), a.type});
    label_rows.push_back({ArcId(a.id), a.label});
  }
  std::vector<TimeRow> time_rows;
  for (std::uint64_t n = 0; n < 18; ++n) {
    time_rows.push_back({NodeId(n), Time(times[n])});
  }
  time_rows.push_back({NodeId(18), Time(22179)});
  if (node19) time_rows.push_back({NodeId(19), Time(*node19)});
  time_rows.push_back({NodeId(20), Time(22179)});
  return RelationalStore(std::move(arc_rows), std::move(time_rows),
                         std::move(label_rows), {}, timit_meta());
}

}  // namespace

RelationalStore timit_store() { return timit_with(std::nullopt); }
RelationalStore timit_tone_store() { return timit_with(12100); }

NodeId letter(char c) { return NodeId(static_cast<std::uint64_t>(c - 'a' + 1)); }

AnnotationGraph precedence_graph() {
  std::vector<Node> nodes;
  for (char c = 'a'; c <= 'k'; ++c) {
    Node n;
    n.id = letter(c);
    if (c <= 'f') n.time = Time(c - 'a' + 1);
    n.timeline = TimelineId(1);
    nodes.push_back(n);
  }
  const char* edges[] = {"ag", "gc", "bh", "hi", "hj", "dj",
                         "ik", "jk", "kf", "de", "ef"};
  std::vector<Arc> arcs;
  std::uint64_t id = 1;
  for (const char* e : edges) {
    arcs.push_back({ArcId(id++), letter(e[0]), letter(e[1]), "E", e});
  }
  return build_graph(std::move(nodes), std::move(arcs));
}

AnnotationGraph figure_eight(std::uint64_t drop) {
  std::vector<Node> nodes;
  for (std::uint64_t i = 1; i <= 4; ++i) {
    nodes.push_back({NodeId(i), Time(static_cast<std::int64_t>(i * 10)), {}});
  }
  struct E {
    std::uint64_t id, x, y;
    const char* label;
  };
  const E edges[] = {{1, 1, 2, "W"}, {2, 2, 3, "X"}, {3, 3, 4, "Y"},
                     {4, 1, 3, "V"}, {5, 2, 4, "Z"}};
  std::vector<Arc> arcs;
  for (const E& e : edges) {
    if (e.id == drop) continue;
    arcs.push_back({ArcId(e.id), NodeId(e.x), NodeId(e.y), "A", e.label});
  }
  return build_graph(std::move(nodes), std::move(arcs));
}

RelationalStore synthetic_turns(int turns, int words) {
  std::vector<TurnLine> lines;
  for (int t = 0; t < turns; ++t) {
    TurnLine l;
    l.start = Time(t * 1000);
    l.end = Time(t * 1000 + 800);
    l.speaker = "A";
    for (int w = 0; w < words; ++w) {
      l.text += (w ? " w" : "w") + std::to_string(w);
    }
    lines.push_back(l);
  }
  return import_turns(lines, 1000);
}

StoreMeta random_meta() {
  StoreMeta m;
  m.corpus = "timit";
  m.type_aliases = {{"word", "W"}, {"ph", "P"}, {"parse", "S"}, {"tone", "T"},
                    {"background", "T"}};
  return m;
}

AnnotationGraph random_graph(std::mt19937_64& rng, const RandomSpec& spec) {
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (;;) {
    const int n = uniform(spec.min_nodes, spec.max_nodes);
    const bool split = spec.allow_split && n >= 6 && uniform(0, 9) < 3;
    auto component = [&](int i) { return split ? i % 2 : 0; };

    std::vector<std::pair<int, int>> edges;
    std::vector<int> indeg(n, 0), outdeg(n, 0);
    auto add = [&](int i, int j) {
      edges.emplace_back(i, j);
      ++outdeg[i];
      ++indeg[j];
    };
    for (int j = 1; j < n; ++j) {
      int roots = split ? 2 : 1;
      if (j < roots) continue;
      std::vector<int> parents;
      for (int i = 0; i < j; ++i) {
        if (component(i) == component(j)) parents.push_back(i);
      }
      add(parents[uniform(0, static_cast<int>(parents.size()) - 1)], j);
    }
    int extra = uniform(0, std::max(0, spec.max_arcs - static_cast<int>(edges.size())));
    for (int e = 0; e < extra; ++e) {
      int i = uniform(0, n - 2);
      int j = uniform(i + 1, n - 1);
      if (component(i) != component(j)) continue;
      add(i, j);
    }

    double target = std::uniform_real_distribution<double>(
        spec.min_timed, spec.max_timed)(rng);
    std::vector<bool> timed(n, false);
    for (int i = 0; i < n; ++i) {
      timed[i] = spec.fully_timed || indeg[i] == 0 || outdeg[i] == 0 ||
                 std::uniform_real_distribution<double>(0, 1)(rng) < target;
    }
    int count = static_cast<int>(std::count(timed.begin(), timed.end(), true));
    double frac = static_cast<double>(count) / n;
    if (!spec.fully_timed && (frac < spec.min_timed || frac > spec.max_timed)) {
      continue;
    }

    std::vector<Node> nodes;
    std::int64_t t = uniform(0, 3);
    for (int i = 0; i < n; ++i) {
      t += uniform(0, 3);
      Node node;
      node.id = NodeId(static_cast<std::uint64_t>(i + 1));
      if (timed[i]) node.time = Time(t);
      nodes.push_back(node);
    }
    std::vector<Arc> arcs;
    std::uint64_t id = 1;
    for (auto [i, j] : edges) {
      Arc a;
      a.id = ArcId(id++);
      a.src = NodeId(static_cast<std::uint64_t>(i + 1));
      a.dst = NodeId(static_cast<std::uint64_t>(j + 1));
      a.type = spec.types[uniform(0, static_cast<int>(spec.types.size()) - 1)];
      a.label =
          spec.labels[uniform(0, static_cast<int>(spec.labels.size()) - 1)];
      arcs.push_back(std::move(a));
    }
    return build_graph(std::move(nodes), std::move(arcs));
  }
}

}  // namespace agq::testing
