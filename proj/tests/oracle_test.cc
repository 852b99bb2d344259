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

#include <string>

#include "agq/oracle.h"
#include "agq/relstore.h"
#include "fixtures.h"

namespace agq::oracle {
namespace {

using testing::letter;

Row r(std::int64_t a, std::int64_t b) { return {a, b}; }
Row r(std::int64_t a, std::int64_t b, std::string t) {
  return {a, b, std::move(t)};
}
std::int64_t id(char c) { return static_cast<std::int64_t>(letter(c).value); }

TEST(Path, PhoneChainUnderDark) {
  FactTable p = path(testing::timit_store());
  EXPECT_EQ(p.arity, 3u);
  EXPECT_TRUE(p.contains(r(8, 14, "P")));
  EXPECT_FALSE(p.contains(r(14, 8, "P")));
  EXPECT_TRUE(p.contains(r(8, 14, "W")));
  EXPECT_FALSE(p.contains(r(8, 14, "S")));
  for (std::int64_t n = 0; n <= 17; ++n) {
    EXPECT_TRUE(p.contains(r(n, n, "P"))) << n;
  }
  EXPECT_FALSE(p.contains(r(18, 18, "P")));
  FactTable any = path_any(testing::timit_store());
  EXPECT_TRUE(any.contains(r(1, 20)));
  EXPECT_FALSE(any.contains(r(20, 1)));
}

TEST(SIncl, DarkIncludesAa) {
  FactTable s = s_incl(testing::timit_store());
  EXPECT_TRUE(s.contains(r(21, 11)));
  EXPECT_FALSE(s.contains(r(11, 21)));
  for (std::int64_t a = 1; a <= 31; ++a) EXPECT_TRUE(s.contains(r(a, a))) << a;
}

TEST(SIncl, TypedAndAnyDiffer) {
  // Node 3 is reached from node 1 only through a P arc then a W arc.
  RelationalStore s({{ArcId(1), NodeId(1), NodeId(4), "X"},
                     {ArcId(2), NodeId(1), NodeId(2), "P"},
                     {ArcId(3), NodeId(2), NodeId(3), "W"},
                     {ArcId(4), NodeId(3), NodeId(4), "W"}},
                    {{NodeId(1), Time(0)}, {NodeId(4), Time(9)}},
                    {}, {}, StoreMeta{});
  FactTable typed = s_incl(s);
  FactTable any = s_incl_any(s);
  for (const Row& row : typed.rows) EXPECT_TRUE(any.contains(row));
  EXPECT_TRUE(any.contains(r(1, 4)));
  EXPECT_FALSE(typed.contains(r(1, 4)));
  EXPECT_TRUE(typed.contains(r(1, 3)));
  EXPECT_GT(any.size(), typed.size());
}

TEST(Ovlp, PointContactAndDisjoint) {
  FactTable o = ovlp(testing::timit_store());
  EXPECT_TRUE(o.contains(r(18, 19)));
  EXPECT_TRUE(o.contains(r(19, 18)));
  EXPECT_FALSE(o.contains(r(18, 20)));
  for (std::int64_t a = 1; a <= 29; ++a) EXPECT_TRUE(o.contains(r(a, a))) << a;
  EXPECT_FALSE(o.contains(r(30, 30)));  // node 19 untimed
}

TEST(Queries, QueryOneIsDark) {
  Queries123 q = queries_123(testing::timit_store());
  EXPECT_EQ(q.q1.to_tsv(), "21\n");
}

TEST(Queries, NoToneArcsMeansNoAnswers) {
  using testing::data_dir;
  using testing::read_text;
  RelationalStore s = import_timit(
      parse_segment_lines(read_text(data_dir() + "/sa1.wrd")),
      parse_segment_lines(read_text(data_dir() + "/sa1.phn")), 16000);
  Queries123 q = queries_123(s);
  EXPECT_EQ(q.q1.size(), 1u);
  EXPECT_EQ(q.q2.size(), 0u);
  EXPECT_EQ(q.q3.size(), 0u);
}

TEST(Queries, ToneFixture) {
  Queries123 q = queries_123(testing::timit_tone_store());
  EXPECT_EQ(q.q2.to_tsv(), "10\n15\n");
  EXPECT_EQ(q.q3.to_tsv(), "21\n22\n");
}

TEST(BruteTc, PrecedenceGraph) {
  FactTable tc = brute_tc(testing::precedence_graph());
  EXPECT_TRUE(tc.contains(r(id('g'), id('d'))));
  EXPECT_TRUE(tc.contains(r(id('h'), id('k'))));
  EXPECT_FALSE(tc.contains(r(id('i'), id('j'))));
  for (char c = 'a'; c <= 'k'; ++c) EXPECT_FALSE(tc.contains(r(id(c), id(c))));
}

TEST(BruteTc, EmptyAndChain) {
  EXPECT_EQ(brute_tc(AnnotationGraph()).size(), 0u);
  AnnotationGraph chain = build_graph(
      {{NodeId(1), Time(1), {}}, {NodeId(2), Time(2), {}}, {NodeId(3), Time(3), {}}},
      {{ArcId(1), NodeId(1), NodeId(2), "W", ""},
       {ArcId(2), NodeId(2), NodeId(3), "W", ""}});
  EXPECT_EQ(brute_tc(chain).size(), 3u);
}

TEST(Guard, RejectsLargeInputs) {
  AnnotationGraph big = to_graph(testing::synthetic_turns(10, 10));
  ASSERT_GT(big.node_count(), kMaxNodes);
  EXPECT_THROW(brute_tc(big), OracleError);
  EXPECT_THROW(TemporalOracle{big}, OracleError);
  EXPECT_THROW(path(testing::synthetic_turns(10, 10)), OracleError);
}

TEST(TemporalOracle, PrecedenceGraph) {
  AnnotationGraph g = testing::precedence_graph();
  TemporalOracle o(g);
  auto at = [&](char c) { return *g.node_index(letter(c)); };
  EXPECT_EQ(o.bounds(at('g')), (Bounds{Time(1), Time(3)}));
  EXPECT_TRUE(o.precedes(at('g'), at('d')));
  EXPECT_TRUE(o.precedes(at('h'), at('k')));
  EXPECT_FALSE(o.precedes(at('i'), at('j')));
  EXPECT_TRUE(o.precedes_eq(at('c'), at('c')));
  EXPECT_TRUE(o.reachable(at('h'), at('f')));
}

TEST(FactTable, TsvIsSorted) {
  FactTable t{"t", 2, {}};
  t.rows.insert({std::int64_t{2}, std::string("b")});
  t.rows.insert({std::int64_t{1}, std::string("z")});
  EXPECT_EQ(t.to_tsv(), "1\tz\n2\tb\n");
}

}  // namespace
}  // namespace agq::oracle
