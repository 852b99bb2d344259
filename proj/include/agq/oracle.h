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

#ifndef AGQ_ORACLE_H_
#define AGQ_ORACLE_H_

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "agq/graph.h"
#include "agq/relstore.h"

// Brute-force reference relations for differential tests. Everything here
// is a naive fixpoint or a full closure; keep inputs small.
namespace agq::oracle {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest graph the oracle accepts.
inline constexpr std::size_t kMaxNodes = 64;

using Cell = std::variant<std::int64_t, std::string>;
using Row = std::vector<Cell>;

struct FactTable {
  std::string name;
  std::size_t arity = 0;
  std::set<Row> rows;

  std::size_t size() const { return rows.size(); }
  bool contains(const Row& r) const { return rows.count(r) > 0; }
  // One tab-separated row per line, in sorted order.
  std::string to_tsv() const;

  friend bool operator==(const FactTable&, const FactTable&) = default;
};

// path(X, Y, T): both reflexive base cases plus arc-then-path recursion,
// segregated by arc type.
FactTable path(const RelationalStore& s);
// path_any(X, Y): the same closure ignoring types.
FactTable path_any(const RelationalStore& s);

// s_incl(A, B) with each path literal of a single type, as written.
FactTable s_incl(const RelationalStore& s);
// s_incl over type-agnostic paths.
FactTable s_incl_any(const RelationalStore& s);

// ovlp(A, B) over arcs whose end points are all timed:
// start(A) <= end(B) and start(B) <= end(A).
FactTable ovlp(const RelationalStore& s);

enum class PathMode { kTyped, kAny };

struct QueryParams {
  std::string word = "W";
  std::string phonetic = "P";
  std::string tone = "T";
  std::string first_label = "d";
  std::string last_label = "k";
  std::string vowel = "[aeiou].*";
  std::string high_tone = "H[*].*";
  PathMode mode = PathMode::kTyped;
};

struct Queries123 {
  FactTable q1;  // words whose phones contain first_label, end in last_label
  FactTable q2;  // phones right before a vowel overlapping a high tone
  FactTable q3;  // words dominating a vowel overlapping a high tone
};

Queries123 queries_123(const RelationalStore& s, const QueryParams& p = {});

// (m, n), m != n, with n reachable from m or post(m) < ante(n).
FactTable brute_tc(const AnnotationGraph& g);

// Closure-matrix answers to the temporal predicates, by node or arc
// position. Bounds come from the closure, not from a sweep.
class TemporalOracle {
 public:
  explicit TemporalOracle(const AnnotationGraph& g);

  bool reachable(std::size_t m, std::size_t n) const;  // m == n included
  Bounds bounds(std::size_t n) const { return bounds_[n]; }
  bool precedes(std::size_t m, std::size_t n) const;
  bool precedes_eq(std::size_t m, std::size_t n) const;
  bool overlaps(std::size_t a, std::size_t b) const;
  bool includes_struct(std::size_t outer, std::size_t inner) const;
  bool subinterval(std::size_t inner, std::size_t outer) const;

 private:
  const AnnotationGraph& g_;
  std::vector<std::vector<bool>> reach_;
  std::vector<Bounds> bounds_;
};

}  // namespace agq::oracle

#endif  // AGQ_ORACLE_H_
