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

#ifndef AGQ_SRC_EVAL_PROGRAM_H_
#define AGQ_SRC_EVAL_PROGRAM_H_

#include <map>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "agq/eval.h"
#include "agq/query.h"

namespace agq::eval::internal {

enum class AttrKind { kId, kStart, kEnd, kType, kLabel, kOther };

AttrKind attr_kind(const std::string& name);

struct CExpr {
  enum class Kind { kConst, kSlot, kTime, kAttr, kAdd, kSub };
  Kind kind = Kind::kConst;
  Value constant;
  int slot = -1;  // kSlot, kTime
  AttrKind attr = AttrKind::kOther;
  int self_slot = -1;  // kAttr; -1 means the arc under test
  std::vector<CExpr> operands;
};

enum class Builtin { kOvlp, kSubinterval, kSIncl, kPrecedes };

struct CPred {
  query::Predicate::Kind kind = query::Predicate::Kind::kCompare;
  query::CmpOp op = query::CmpOp::kEq;
  std::vector<CExpr> operands;
  std::shared_ptr<const std::regex> re;
  Builtin builtin = Builtin::kOvlp;
  std::vector<int> args;
  int self_slot = -1;  // for one-argument built-ins
  std::vector<CPred> children;
};

struct CConstraint {
  AttrKind attr = AttrKind::kOther;
  int slot = -1;  // variable, or -1 for the constant
  Value constant;
};

// One arc occurrence in a path pattern.
struct ArcTest {
  std::vector<CConstraint> constraints;
  std::vector<CPred> local;  // starred or alternative scope only
  int hidden_slot = -1;      // bound to the arc when predicates were lifted
};

// Transition into `pos`; `asserts` are node variables that must equal the
// node the transition passes through.
struct Edge {
  int pos = -1;
  std::vector<int> asserts;
};

// Position automaton: one state per arc occurrence plus the initial state.
struct Automaton {
  std::vector<ArcTest> positions;
  std::vector<Edge> first;
  std::vector<std::vector<std::vector<int>>> accept;  // per position
  std::vector<std::vector<int>> nullable;
  std::vector<std::vector<Edge>> follow;  // per position

  std::size_t state_count() const { return positions.size() + 1; }
};

struct SourceSpec {
  std::string name;  // db, corpus name or tl<N>
  int slot = -1;     // source variable
  std::string type_restrict;
};

struct Binding {
  int clause = -1;
  SourceSpec source;
  int source_target = -1;  // `TL <- src` binds this slot to timelines
  Automaton automaton;
  int start_slot = -1;  // leading node variable
  int end_slot = -1;    // trailing node variable
  std::vector<int> binds;
  std::vector<int> needs;  // read by starred predicates, bound elsewhere
  int constants = 0;
  bool single_arc = false;  // [NodeVar.]ArcPattern[.NodeVar], not starred
  int id_slot = -1;
  std::vector<int> subinterval_of;  // E in a top-level subinterval(E)
};

struct GlobalPred {
  CPred pred;
  std::vector<int> deps;
  std::string text;
};

struct Program {
  std::vector<std::string> slot_names;
  std::map<std::string, int> slots;
  std::vector<Binding> bindings;
  std::vector<GlobalPred> preds;
  std::vector<int> head_slots;

  const Binding* binding_for(int clause) const;
};

// Slots for every variable, automata for every binding clause and the
// predicate list. Throws EvalError on invalid regular expressions.
Program build_program(const query::Query& q);

bool is_hidden(const std::string& slot_name);

// Attribute value of the arc at `arc_pos`; nullopt for absent attributes.
std::optional<Value> arc_attr(const AnnotationGraph& g, std::size_t arc_pos,
                              AttrKind attr);

bool compare_values(const Value& a, query::CmpOp op, const Value& b,
                    const StoreMeta& meta);

}  // namespace agq::eval::internal

#endif  // AGQ_SRC_EVAL_PROGRAM_H_
