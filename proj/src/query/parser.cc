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

#include <utility>

#include "agq/query.h"
#include "lexer.h"

namespace agq::query {

using internal::Tok;
using internal::Token;

QueryError::QueryError(std::string code, SourcePos pos, std::string lexeme,
                       const std::string& message)
    : std::runtime_error(code + " at " + std::to_string(pos.line) + ":" +
                         std::to_string(pos.column) + ": " + message),
      code_(std::move(code)),
      pos_(pos),
      lexeme_(std::move(lexeme)) {}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return "=";
    case CmpOp::kNe: return "!=";
    case CmpOp::kLt: return "<";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGt: return ">";
    case CmpOp::kGe: return ">=";
  }
  return "?";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(internal::tokenize(text)) {}

  Query query() {
    Query q;
    expect(Tok::kSelect, "'select'");
    q.relation = expect(Tok::kIdent, "relation name").text;
    expect(Tok::kLParen, "'('");
    if (!at(Tok::kRParen)) {
      q.head.push_back(expect(Tok::kVar, "variable").text);
      while (accept(Tok::kComma)) {
        q.head.push_back(expect(Tok::kVar, "variable").text);
      }
    }
    expect(Tok::kRParen, "')'");
    expect(Tok::kWhere, "'where'");
    q.clauses = clauses();
    return q;
  }

  std::vector<Clause> clauses() {
    std::vector<Clause> out;
    while (accept(Tok::kSemi)) {
    }
    out.push_back(clause());
    while (true) {
      bool separated = false;
      while (accept(Tok::kSemi)) separated = true;
      if (at(Tok::kEnd)) break;
      if (!separated && !cur().line_start) {
        fail("expected ';' or newline between clauses");
      }
      out.push_back(clause());
    }
    return out;
  }

  PathPattern pattern_only() {
    PathPattern p = path();
    if (!at(Tok::kEnd)) fail("unexpected token after pattern");
    return p;
  }

  void finish() {
    if (!at(Tok::kEnd)) fail("unexpected token");
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& peek(std::size_t k = 1) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++i_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return toks_[i_++];
  }
  [[noreturn]] void fail(const std::string& message) {
    fail_index_ = i_;
    const Token& t = cur();
    std::string lexeme = t.kind == Tok::kEnd ? "" : t.text;
    throw ParseError("PARSE_ERROR", t.pos, lexeme,
                     message + (t.kind == Tok::kEnd
                                    ? " (found end of input)"
                                    : " (found '" + lexeme + "')"));
  }

  Clause clause() {
    std::size_t start = i_;
    Clause c;
    c.pos = cur().pos;
    try {
      c.kind = Clause::Kind::kBinding;
      c.path = path();
      expect(Tok::kArrow, "'<-'");
      c.source = source();
      return c;
    } catch (const ParseError& as_binding) {
      std::size_t binding_fail = fail_index_;
      i_ = start;
      try {
        Clause p;
        p.pos = c.pos;
        p.kind = Clause::Kind::kPredicate;
        p.predicate = or_pred(false);
        return p;
      } catch (const ParseError& as_predicate) {
        if (binding_fail >= fail_index_) throw as_binding;
        throw;
      }
    }
  }

  Source source() {
    Source s;
    s.pos = cur().pos;
    if (at(Tok::kIdent)) {
      s.base = cur().text;
    } else if (at(Tok::kVar)) {
      s.base = cur().text;
      s.base_is_var = true;
    } else {
      fail("expected source name");
    }
    ++i_;
    if (accept(Tok::kSlash)) {
      s.type_restrict = expect(Tok::kIdent, "type name").text;
    }
    return s;
  }

  PathPattern path() {
    PathPattern p;
    p.elements.push_back(element());
    while (accept(Tok::kDot)) p.elements.push_back(element());
    return p;
  }

  PathElement element() {
    PathElement e;
    e.pos = cur().pos;
    if (at(Tok::kVar)) {
      e.kind = PathElement::Kind::kNode;
      e.var = cur().text;
      ++i_;
      return e;
    }
    if (at(Tok::kLBracket)) {
      e.kind = PathElement::Kind::kArc;
      e.arc = arc_pattern();
      e.starred = accept(Tok::kStar);
      return e;
    }
    if (accept(Tok::kLParen)) {
      e.kind = PathElement::Kind::kGroup;
      e.alternatives.push_back(path());
      while (accept(Tok::kBar)) e.alternatives.push_back(path());
      expect(Tok::kRParen, "')' or '|'");
      e.starred = accept(Tok::kStar);
      return e;
    }
    fail("expected node variable, '[' or '('");
  }

  ArcPattern arc_pattern() {
    expect(Tok::kLBracket, "'['");
    ArcPattern a;
    if (accept(Tok::kRBracket)) return a;
    do {
      arc_item(a);
    } while (accept(Tok::kComma));
    expect(Tok::kRBracket, "',' or ']'");
    return a;
  }

  void arc_item(ArcPattern& a) {
    SourcePos pos = cur().pos;
    if (at(Tok::kIdent) && peek().kind == Tok::kColon) {
      ArcConstraint c;
      c.attr = cur().text;
      c.pos = pos;
      i_ += 2;
      c.value = term();
      c.form = ConstraintForm::kColon;
      a.constraints.push_back(std::move(c));
      return;
    }
    if (accept(Tok::kColon)) {
      ArcConstraint c;
      c.attr = "label";
      c.pos = pos;
      c.value = term();
      c.form = ConstraintForm::kLabel;
      a.constraints.push_back(std::move(c));
      return;
    }
    Predicate p = or_pred(true);
    if (p.kind == Predicate::Kind::kCompare && p.op == CmpOp::kEq &&
        p.operands[0].kind == Expr::Kind::kAttr &&
        p.operands[1].kind == Expr::Kind::kTerm &&
        !p.operands[1].term.is_var()) {
      ArcConstraint c;
      c.attr = p.operands[0].name;
      c.pos = pos;
      c.value = p.operands[1].term;
      c.form = ConstraintForm::kEquals;
      a.constraints.push_back(std::move(c));
      return;
    }
    a.predicates.push_back(std::move(p));
  }

  Predicate or_pred(bool in_arc) {
    SourcePos pos = cur().pos;
    Predicate first = and_pred(in_arc);
    if (!at(Tok::kOr)) return first;
    Predicate p;
    p.kind = Predicate::Kind::kOr;
    p.pos = pos;
    p.children.push_back(std::move(first));
    while (accept(Tok::kOr)) p.children.push_back(and_pred(in_arc));
    return p;
  }

  Predicate and_pred(bool in_arc) {
    SourcePos pos = cur().pos;
    Predicate first = atom(in_arc);
    if (!at(Tok::kAnd)) return first;
    Predicate p;
    p.kind = Predicate::Kind::kAnd;
    p.pos = pos;
    p.children.push_back(std::move(first));
    while (accept(Tok::kAnd)) p.children.push_back(atom(in_arc));
    return p;
  }

  Predicate atom(bool in_arc) {
    SourcePos pos = cur().pos;
    if (accept(Tok::kLParen)) {
      Predicate p = or_pred(in_arc);
      expect(Tok::kRParen, "')'");
      return p;
    }
    if (at(Tok::kIdent) && peek().kind == Tok::kLParen) {
      Predicate p;
      p.kind = Predicate::Kind::kCall;
      p.pos = pos;
      p.name = cur().text;
      i_ += 2;
      if (!at(Tok::kRParen)) {
        p.args.push_back(term());
        while (accept(Tok::kComma)) p.args.push_back(term());
      }
      expect(Tok::kRParen, "')'");
      return p;
    }
    Expr lhs = expr();
    if (in_arc && lhs.kind == Expr::Kind::kTerm &&
        lhs.term.kind == Term::Kind::kConst) {
      lhs.kind = Expr::Kind::kAttr;
      lhs.name = lhs.term.text;
      lhs.term = Term{};
    }
    Predicate p;
    p.pos = pos;
    if (accept(Tok::kTilde)) {
      p.kind = Predicate::Kind::kMatch;
      p.operands.push_back(std::move(lhs));
      p.pattern = expect(Tok::kString, "string pattern after '~'").text;
      return p;
    }
    p.kind = Predicate::Kind::kCompare;
    switch (cur().kind) {
      case Tok::kEq: p.op = CmpOp::kEq; break;
      case Tok::kNe: p.op = CmpOp::kNe; break;
      case Tok::kLt: p.op = CmpOp::kLt; break;
      case Tok::kLe: p.op = CmpOp::kLe; break;
      case Tok::kGt: p.op = CmpOp::kGt; break;
      case Tok::kGe: p.op = CmpOp::kGe; break;
      default: fail("expected comparison operator or '~'");
    }
    ++i_;
    p.operands.push_back(std::move(lhs));
    p.operands.push_back(expr());
    return p;
  }

  Expr expr() {
    Expr e = primary();
    while (at(Tok::kPlus) || at(Tok::kMinus)) {
      Expr bin;
      bin.kind = at(Tok::kPlus) ? Expr::Kind::kAdd : Expr::Kind::kSub;
      bin.pos = e.pos;
      ++i_;
      bin.operands.push_back(std::move(e));
      bin.operands.push_back(primary());
      e = std::move(bin);
    }
    return e;
  }

  Expr primary() {
    Expr e;
    e.pos = cur().pos;
    if (accept(Tok::kTime)) {
      expect(Tok::kLParen, "'(' after time");
      e.kind = Expr::Kind::kTime;
      e.name = expect(Tok::kVar, "node variable").text;
      expect(Tok::kRParen, "')'");
      return e;
    }
    e.kind = Expr::Kind::kTerm;
    e.term = term();
    return e;
  }

  Term term() {
    Term t;
    t.pos = cur().pos;
    t.text = cur().text;
    switch (cur().kind) {
      case Tok::kVar: t.kind = Term::Kind::kVar; break;
      case Tok::kIdent: t.kind = Term::Kind::kConst; break;
      case Tok::kString: t.kind = Term::Kind::kString; break;
      case Tok::kInt:
        t.kind = Term::Kind::kInt;
        t.number = cur().number;
        break;
      default: fail("expected variable, name, string or integer");
    }
    ++i_;
    return t;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::size_t fail_index_ = 0;
};

}  // namespace

Query parse(std::string_view text) {
  Parser p(text);
  Query q = p.query();
  p.finish();
  return q;
}

std::vector<Clause> parse_clauses(std::string_view text) {
  Parser p(text);
  auto out = p.clauses();
  p.finish();
  return out;
}

PathPattern parse_pattern(std::string_view text) {
  Parser p(text);
  return p.pattern_only();
}

}  // namespace agq::query
