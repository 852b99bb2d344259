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

#ifndef AGQ_QUERY_H_
#define AGQ_QUERY_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace agq::query {

// Source location. Positions never take part in structural equality, so a
// query and its pretty-printed re-parse compare equal.
struct SourcePos {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

struct Term {
  enum class Kind { kVar, kConst, kString, kInt };
  Kind kind = Kind::kConst;
  std::string text;  // variable name, constant or string contents
  std::int64_t number = 0;
  SourcePos pos;

  bool is_var() const { return kind == Kind::kVar; }
  friend bool operator==(const Term&, const Term&) = default;
};

struct Expr {
  enum class Kind {
    kTerm,  // term
    kTime,  // time(Var); var in `name`
    kAttr,  // attribute of the enclosing arc; name in `name`
    kAdd,
    kSub,
  };
  Kind kind = Kind::kTerm;
  Term term;
  std::string name;
  std::vector<Expr> operands;  // two, for kAdd / kSub
  SourcePos pos;

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class CmpOp { kEq, kNe, kLt, kLe, kGt, kGe };

const char* cmp_text(CmpOp op);

struct Predicate {
  enum class Kind {
    kCompare,  // operands[0] op operands[1]
    kMatch,    // operands[0] ~ pattern
    kCall,     // name(args)
    kAnd,
    kOr,
  };
  Kind kind = Kind::kCompare;
  CmpOp op = CmpOp::kEq;
  std::vector<Expr> operands;
  std::string pattern;
  std::string name;
  std::vector<Term> args;
  std::vector<Predicate> children;
  SourcePos pos;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// How an attribute constraint was written; kept so printing preserves the
// surface abbreviations.
enum class ConstraintForm {
  kColon,   // attr: v
  kEquals,  // attr = v (constant v)
  kLabel,   // :v
};

struct ArcConstraint {
  std::string attr;
  Term value;
  ConstraintForm form = ConstraintForm::kColon;
  SourcePos pos;

  friend bool operator==(const ArcConstraint&, const ArcConstraint&) = default;
};

struct ArcPattern {
  std::vector<ArcConstraint> constraints;
  std::vector<Predicate> predicates;

  friend bool operator==(const ArcPattern&, const ArcPattern&) = default;
};

struct PathPattern;

struct PathElement {
  enum class Kind { kNode, kArc, kGroup };
  Kind kind = Kind::kArc;
  std::string var;                       // kNode
  ArcPattern arc;                        // kArc
  std::vector<PathPattern> alternatives;  // kGroup
  bool starred = false;                  // kArc, kGroup
  SourcePos pos;

  friend bool operator==(const PathElement&, const PathElement&) = default;
};

// Dot-concatenated elements. Adjacent elements share a node.
struct PathPattern {
  std::vector<PathElement> elements;

  friend bool operator==(const PathPattern&, const PathPattern&) = default;
};

struct Source {
  std::string base;
  bool base_is_var = false;
  std::string type_restrict;  // empty: none (db/t notation)
  SourcePos pos;

  friend bool operator==(const Source&, const Source&) = default;
};

struct Clause {
  enum class Kind { kBinding, kPredicate };
  Kind kind = Kind::kBinding;
  PathPattern path;  // kBinding
  Source source;     // kBinding
  Predicate predicate;  // kPredicate
  SourcePos pos;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Query {
  std::string relation;
  std::vector<std::string> head;
  std::vector<Clause> clauses;

  friend bool operator==(const Query&, const Query&) = default;
};

// Kind of value a variable denotes.
enum class VarKind { kNode, kArc, kScalar, kSource };

const char* var_kind_name(VarKind k);

struct CheckedQuery {
  Query query;
  std::map<std::string, VarKind> kinds;  // kind-constrained variables

  friend bool operator==(const CheckedQuery&, const CheckedQuery&) = default;
};

class QueryError : public std::runtime_error {
 public:
  QueryError(std::string code, SourcePos pos, std::string lexeme,
             const std::string& message);

  const std::string& code() const { return code_; }
  SourcePos pos() const { return pos_; }
  const std::string& lexeme() const { return lexeme_; }

 private:
  std::string code_;
  SourcePos pos_;
  std::string lexeme_;
};

class ParseError : public QueryError {
 public:
  using QueryError::QueryError;
};

// Codes: STAR_VAR, UNBOUND_HEAD, KIND_MISMATCH, UNBOUND_VAR, BAD_BUILTIN.
class SemanticError : public QueryError {
 public:
  using QueryError::QueryError;
};

// Full query: select rel(vars) where clause+. `#` starts a line comment.
Query parse(std::string_view text);
// A bare clause list, as in a where-body.
std::vector<Clause> parse_clauses(std::string_view text);
// A path pattern on its own, without a source.
PathPattern parse_pattern(std::string_view text);

CheckedQuery check(const Query& q);

std::string pretty(const Query& q);
std::string pretty(const Clause& c);
std::string pretty(const PathPattern& p);
std::string pretty(const Predicate& p);

// Names a built-in predicate may take, with their argument kind.
bool is_builtin(std::string_view name);

}  // namespace agq::query

#endif  // AGQ_QUERY_H_
