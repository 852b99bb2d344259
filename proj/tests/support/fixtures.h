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

#ifndef AGQ_TESTS_SUPPORT_FIXTURES_H_
#define AGQ_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "agq/eval.h"
#include "agq/graph.h"
#include "agq/relstore.h"

namespace agq::testing {

// Directory holding sa1.wrd, sa1.phn and callhome.txt.
std::string data_dir();
std::string golden_dir();
std::string read_text(const std::string& path);

StoreMeta timit_meta();

// The 31-arc TIMIT sentence: phones 1-17, words 18-22, parse arcs 23-27,
// intonation 28-29 and tone arcs 30-31. Nodes 18 and 20 carry time 22179;
// node 19 is untimed.
RelationalStore timit_store();
// Same with node 19 timed, so the tone arcs have known extent.
RelationalStore timit_tone_store();

// Time/TA precedence example: nodes a..k as ids 1..11; a-f timed 1..6.
AnnotationGraph precedence_graph();
NodeId letter(char c);  // 'a' -> 1

// Four timed nodes; arcs W n1-n2, X n2-n3, Y n3-n4, V n1-n3, Z n2-n4 with
// ids 1..5. `drop` removes the arc with that id.
AnnotationGraph figure_eight(std::uint64_t drop = 0);

// One speaker, `turns` turns of `words` words, timed only at turn ends.
RelationalStore synthetic_turns(int turns, int words);

struct RandomSpec {
  int min_nodes = 4;
  int max_nodes = 25;
  int max_arcs = 40;
  double min_timed = 0.3;
  double max_timed = 0.7;
  bool fully_timed = false;
  bool allow_split = true;  // sometimes two timelines
  std::vector<std::string> types = {"W", "P", "S"};
  std::vector<std::string> labels = {"a", "e", "d", "k", "c", "t",
                                     "sentence", "opera", "H*", "L"};
};

// A valid anchored annotation graph: arcs run from lower to higher node
// positions, times never decrease with position and boundary nodes are
// timed.
AnnotationGraph random_graph(std::mt19937_64& rng,
                             const RandomSpec& spec = {});

// Corpus "timit" with aliases word/ph/parse/tone/background.
StoreMeta random_meta();

}  // namespace agq::testing

#endif  // AGQ_TESTS_SUPPORT_FIXTURES_H_
