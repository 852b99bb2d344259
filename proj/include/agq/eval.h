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

#ifndef AGQ_EVAL_H_
#define AGQ_EVAL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "agq/graph.h"
#include "agq/query.h"
#include "agq/relstore.h"
#include "agq/tindex.h"

namespace agq::eval {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Value {
  enum class Kind { kNode, kArc, kInt, kStr, kType, kSource };
  Kind kind = Kind::kStr;
  std::int64_t num = 0;  // node/arc id, integer, timeline id (0: whole corpus)
  std::string text;      // string, stored type, corpus name

  static Value node(NodeId id);
  static Value arc(ArcId id);
  static Value integer(std::int64_t v);
  static Value str(std::string s);
  static Value type(std::string stored);
  static Value source(std::int64_t timeline, std::string corpus);

  friend auto operator<=>(const Value&, const Value&) = default;
  friend bool operator==(const Value&, const Value&) = default;
};

std::string to_text(const Value& v);

using Env = std::map<std::string, Value>;
using Tuple = std::vector<Value>;

struct ResultSet {
  std::string relation;
  std::vector<std::string> head;
  std::vector<Tuple> tuples;  // sorted, distinct

  std::size_t size() const { return tuples.size(); }
  friend bool operator==(const ResultSet&, const ResultSet&) = default;
};

// "# rel(A,B)" then one tab-separated line per tuple.
std::string format_tsv(const ResultSet& r);
// One JSON object per tuple keyed by head variable.
std::string format_json_lines(const ResultSet& r);

// A loaded corpus: the store metadata, its graph and the time index.
class Corpus {
 public:
  Corpus();
  // Throw StoreError / IndexError when the data is not a valid graph.
  explicit Corpus(const RelationalStore& store);
  Corpus(AnnotationGraph graph, StoreMeta meta);

  const AnnotationGraph& graph() const { return *graph_; }
  const TimeIndex& index() const { return index_; }
  const StoreMeta& meta() const { return meta_; }

  // Arc positions with the given stored type, ascending.
  std::span<const std::uint32_t> arcs_of_type(const std::string& type) const;

 private:
  std::shared_ptr<const AnnotationGraph> graph_;
  TimeIndex index_;
  StoreMeta meta_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_type_;
};

namespace internal {
struct Program;
}

struct PlanStep {
  enum class Kind { kMatch, kImplicitSource };
  Kind kind = Kind::kMatch;
  int clause = -1;      // kMatch: index into the query's clauses
  std::string var;      // kImplicitSource: the source variable
  bool restricted = false;
  std::vector<int> filters;  // predicates checked after this step
};

struct Plan {
  query::CheckedQuery query;
  std::vector<PlanStep> steps;
  std::optional<int> anchor;  // clause index
  std::vector<std::string> warnings;
  std::shared_ptr<const internal::Program> program;
};

// Bounded plan when an anchor exists, otherwise the naive order.
Plan compile(const query::CheckedQuery& q);
Plan compile_naive(const query::CheckedQuery& q);

// Throws EvalError for unknown sources and for star-scoped predicates whose
// variables are not yet bound when the group is reached.
ResultSet run(const Plan& plan, const Corpus& corpus);
ResultSet run_naive(const query::CheckedQuery& q, const Corpus& corpus);

// Parse, check, compile and run.
ResultSet execute(std::string_view text, const Corpus& corpus,
                  bool optimize = true);

std::string explain(const Plan& plan);

// Streams every match of `pattern` over arcs of `type_restrict` (a query
// type name; empty for all arcs). When `start` is set the path must begin
// there. Each yielded env extends `env` with the pattern's variables.
void match_path(const query::PathPattern& pattern,
                std::optional<NodeId> start, const Corpus& corpus,
                const std::string& type_restrict, const Env& env,
                const std::function<void(const Env&)>& yield);

}  // namespace agq::eval

#endif  // AGQ_EVAL_H_
