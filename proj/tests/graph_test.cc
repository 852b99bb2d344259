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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "agq/graph.h"
#include "agq/oracle.h"
#include "agq/relstore.h"
#include "fixtures.h"

namespace agq {
namespace {

using testing::letter;

std::set<Violation> codes(const ValidationReport& r) {
  std::set<Violation> out;
  for (const auto& v : r.violations) out.insert(v.code);
  return out;
}

struct Parts {
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
};

Parts parts_of(const AnnotationGraph& g) {
  Parts p;
  p.nodes.assign(g.nodes().begin(), g.nodes().end());
  for (auto& n : p.nodes) n.timeline.reset();
  p.arcs.assign(g.arcs().begin(), g.arcs().end());
  return p;
}

Node& find_node(Parts& p, std::uint64_t id) {
  for (auto& n : p.nodes) {
    if (n.id.value == id) return n;
  }
  throw std::runtime_error("no node");
}

AnnotationGraph timit_graph() { return to_graph(testing::timit_store()); }

TEST(BuildGraph, EmptyListsGiveEmptyGraph) {
  AnnotationGraph g = build_graph({}, {});
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(g.arc_count(), 0u);
  EXPECT_TRUE(validate(g).ok());
}

TEST(BuildGraph, TimitTablesGive21NodesAnd31Arcs) {
  AnnotationGraph g = timit_graph();
  EXPECT_EQ(g.node_count(), 21u);
  EXPECT_EQ(g.arc_count(), 31u);
  for (std::uint64_t n = 0; n <= 17; ++n) {
    EXPECT_TRUE(g.node(NodeId(n)).time.has_value()) << n;
  }
  EXPECT_FALSE(g.node(NodeId(19)).time.has_value());
  EXPECT_EQ(g.node(NodeId(2)).time, Time(3270));
}

TEST(BuildGraph, SingleArcIsValid) {
  AnnotationGraph g = build_graph(
      {{NodeId(1), Time(0), {}}, {NodeId(2), Time(5), {}}},
      {{ArcId(1), NodeId(1), NodeId(2), "W", "x"}});
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_TRUE(validate(g).ok());
}

TEST(BuildGraph, RejectsDuplicatesAndDanglingArcs) {
  EXPECT_THROW(build_graph({{NodeId(1), {}, {}}, {NodeId(1), {}, {}}}, {}),
               GraphError);
  EXPECT_THROW(build_graph({{NodeId(1), Time(0), {}}},
                           {{ArcId(1), NodeId(1), NodeId(9), "W", ""}}),
               GraphError);
  EXPECT_THROW(
      build_graph({{NodeId(1), Time(0), {}}, {NodeId(2), Time(1), {}}},
                  {{ArcId(1), NodeId(1), NodeId(2), "W", ""},
                   {ArcId(1), NodeId(1), NodeId(2), "W", ""}}),
      GraphError);
}

TEST(Validate, TimitFixtureIsValid) {
  ValidationReport r = validate(timit_graph());
  EXPECT_TRUE(r.ok());
}

TEST(Validate, UntimedSinkIsUntimedBoundary) {
  AnnotationGraph g = build_graph(
      {{NodeId(1), Time(0), {}}, {NodeId(2), Time(5), {}}, {NodeId(3), {}, {}}},
      {{ArcId(1), NodeId(1), NodeId(2), "W", ""},
       {ArcId(2), NodeId(2), NodeId(3), "W", ""}});
  ValidationReport r = validate(g);
  ASSERT_TRUE(r.has(Violation::kUntimedBoundary));
  EXPECT_EQ(r.violations[0].ids, std::vector<std::uint64_t>{3});
}

TEST(Validate, TwoCycleIsReported) {
  AnnotationGraph g = build_graph(
      {{NodeId(1), {}, {}}, {NodeId(2), {}, {}}},
      {{ArcId(1), NodeId(1), NodeId(2), "W", ""},
       {ArcId(2), NodeId(2), NodeId(1), "W", ""}});
  EXPECT_TRUE(validate(g).has(Violation::kCycle));
}

TEST(Validate, SelfLoopIsCycle) {
  AnnotationGraph g = build_graph(
      {{NodeId(1), Time(0), {}}, {NodeId(2), Time(1), {}}},
      {{ArcId(1), NodeId(1), NodeId(2), "W", ""},
       {ArcId(2), NodeId(2), NodeId(2), "W", ""}});
  EXPECT_EQ(codes(validate(g)), std::set<Violation>{Violation::kCycle});
}

TEST(Validate, SingleMutationsGiveSingleCodes) {
  const AnnotationGraph base = timit_graph();

  Parts cyc = parts_of(base);
  cyc.arcs.push_back({ArcId(99), NodeId(20), NodeId(19), "T", "x"});
  EXPECT_EQ(codes(validate(build_graph(cyc.nodes, cyc.arcs))),
            std::set<Violation>{Violation::kCycle});

  Parts orphan = parts_of(base);
  orphan.nodes.push_back({NodeId(99), {}, {}});
  EXPECT_EQ(codes(validate(build_graph(orphan.nodes, orphan.arcs))),
            std::set<Violation>{Violation::kIsolatedNode});

  Parts boundary = parts_of(base);
  find_node(boundary, 18).time.reset();
  EXPECT_EQ(codes(validate(build_graph(boundary.nodes, boundary.arcs))),
            std::set<Violation>{Violation::kUntimedBoundary});

  Parts cross = parts_of(base);
  for (auto& n : cross.nodes) {
    n.timeline = TimelineId(n.id.value == 20 ? 2 : 1);
  }
  EXPECT_EQ(codes(validate(build_graph(cross.nodes, cross.arcs))),
            std::set<Violation>{Violation::kCrossTimeline});

  Parts order = parts_of(base);
  find_node(order, 5).time = Time(1);
  EXPECT_EQ(codes(validate(build_graph(order.nodes, order.arcs))),
            std::set<Violation>{Violation::kTimeOrder});
}

TEST(Validate, ViolationCodesHaveStableNames) {
  EXPECT_STREQ(violation_code(Violation::kCycle), "CYCLE");
  EXPECT_STREQ(violation_code(Violation::kIsolatedNode), "ISOLATED_NODE");
  EXPECT_STREQ(violation_code(Violation::kTimeOrder), "TIME_ORDER");
  EXPECT_STREQ(violation_code(Violation::kUntimedBoundary),
               "UNTIMED_BOUNDARY");
  EXPECT_STREQ(violation_code(Violation::kCrossTimeline), "CROSS_TIMELINE");
}

TEST(BoundingTimes, PrecedenceGraphRows) {
  AnnotationGraph g = testing::precedence_graph();
  EXPECT_EQ(bounding_times(g, letter('g')), (Bounds{Time(1), Time(3)}));
  EXPECT_EQ(bounding_times(g, letter('h')), (Bounds{Time(2), Time(6)}));
  EXPECT_EQ(bounding_times(g, letter('c')), (Bounds{Time(3), Time(3)}));
}

TEST(BoundingTimes, UnboundedNodeThrows) {
  AnnotationGraph g = build_graph(
      {{NodeId(1), {}, {}}, {NodeId(2), Time(4), {}}},
      {{ArcId(1), NodeId(1), NodeId(2), "W", ""}});
  EXPECT_THROW(bounding_times(g, NodeId(1)), GraphError);
}

TEST(TimelineOf, PrecedenceGraphIsOneTimeline) {
  AnnotationGraph g = testing::precedence_graph();
  for (char c = 'a'; c <= 'k'; ++c) {
    EXPECT_EQ(timeline_of(g, letter(c)), TimelineId(1)) << c;
  }
}

TEST(TimelineOf, SecondComponentGetsItsOwnTimeline) {
  AnnotationGraph g = build_graph(
      {{NodeId(1), Time(0), {}},
       {NodeId(2), Time(1), {}},
       {NodeId(3), Time(0), {}},
       {NodeId(4), Time(1), {}}},
      {{ArcId(1), NodeId(1), NodeId(2), "W", ""},
       {ArcId(2), NodeId(3), NodeId(4), "W", ""}});
  EXPECT_NE(timeline_of(g, NodeId(1)), timeline_of(g, NodeId(3)));
  EXPECT_EQ(timeline_of(g, NodeId(1)), timeline_of(g, NodeId(2)));
  EXPECT_THROW(timeline_of(g, NodeId(7)), GraphError);
}

class RandomGraphs : public ::testing::TestWithParam<int> {};

TEST_P(RandomGraphs, BoundsMatchClosureAndAreMonotone) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) * 7919u + 1);
  for (int round = 0; round < 40; ++round) {
    AnnotationGraph g = testing::random_graph(rng);
    ASSERT_TRUE(validate(g).ok());
    std::vector<Bounds> b = compute_bounds(g);
    oracle::TemporalOracle o(g);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      ASSERT_EQ(b[i], o.bounds(i));
      ASSERT_LE(b[i].ante, b[i].post);
      if (g.nodes()[i].time) {
        ASSERT_EQ(b[i].ante, *g.nodes()[i].time);
        ASSERT_EQ(b[i].post, *g.nodes()[i].time);
      }
    }
    for (std::size_t a = 0; a < g.arc_count(); ++a) {
      const Bounds& s = b[g.src_index(a)];
      const Bounds& d = b[g.dst_index(a)];
      ASSERT_LE(s.ante, d.ante);
      ASSERT_LE(s.post, d.post);
    }
  }
}

TEST_P(RandomGraphs, ExportRoundTripStaysValid) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 100);
  for (int round = 0; round < 20; ++round) {
    AnnotationGraph g = testing::random_graph(rng);
    AnnotationGraph back = to_graph(export_relations(g, testing::random_meta()));
    EXPECT_TRUE(validate(back).ok());
    ASSERT_EQ(back.node_count(), g.node_count());
    ASSERT_EQ(back.arc_count(), g.arc_count());
    for (const Arc& a : g.arcs()) EXPECT_EQ(back.arc(a.id), a);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomGraphs, ::testing::Range(0, 5));

}  // namespace
}  // namespace agq
