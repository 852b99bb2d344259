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

#include <sstream>

#include "agq/query.h"

namespace agq::query {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string term_text(const Term& t) {
  switch (t.kind) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      return t.text;
    case Term::Kind::kString:
      return quote(t.text);
    case Term::Kind::kInt:
      return std::to_string(t.number);
  }
  return {};
}

std::string expr_text(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kTerm: return term_text(e.term);
    case Expr::Kind::kTime: return "time(" + e.name + ")";
    case Expr::Kind::kAttr: return e.name;
    case Expr::Kind::kAdd:
      return expr_text(e.operands[0]) + " + " + expr_text(e.operands[1]);
    case Expr::Kind::kSub:
      return expr_text(e.operands[0]) + " - " + expr_text(e.operands[1]);
  }
  return {};
}

std::string nested(const Predicate& p) {
  bool compound =
      p.kind == Predicate::Kind::kAnd || p.kind == Predicate::Kind::kOr;
  return compound ? "(" + pretty(p) + ")" : pretty(p);
}

std::string arc_text(const ArcPattern& a) {
  std::string out = "[";
  bool first = true;
  for (const ArcConstraint& c : a.constraints) {
    if (!first) out += ", ";
    first = false;
    switch (c.form) {
      case ConstraintForm::kColon:
        out += c.attr + ": " + term_text(c.value);
        break;
      case ConstraintForm::kEquals:
        out += c.attr + " = " + term_text(c.value);
        break;
      case ConstraintForm::kLabel:
        out += ":" + term_text(c.value);
        break;
    }
  }
  for (const Predicate& p : a.predicates) {
    if (!first) out += ", ";
    first = false;
    out += pretty(p);
  }
  return out + "]";
}

std::string element_text(const PathElement& e) {
  switch (e.kind) {
    case PathElement::Kind::kNode:
      return e.var;
    case PathElement::Kind::kArc:
      return arc_text(e.arc) + (e.starred ? "*" : "");
    case PathElement::Kind::kGroup: {
      std::string out = "(";
      for (std::size_t i = 0; i < e.alternatives.size(); ++i) {
        if (i) out += " | ";
        out += pretty(e.alternatives[i]);
      }
      return out + ")" + (e.starred ? "*" : "");
    }
  }
  return {};
}

}  // namespace

std::string pretty(const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::kCompare:
      return expr_text(p.operands[0]) + " " + cmp_text(p.op) + " " +
             expr_text(p.operands[1]);
    case Predicate::Kind::kMatch:
      return expr_text(p.operands[0]) + " ~ " + quote(p.pattern);
    case Predicate::Kind::kCall: {
      std::string out = p.name + "(";
      for (std::size_t i = 0; i < p.args.size(); ++i) {
        if (i) out += ", ";
        out += term_text(p.args[i]);
      }
      return out + ")";
    }
    case Predicate::Kind::kAnd:
    case Predicate::Kind::kOr: {
      const char* sep = p.kind == Predicate::Kind::kAnd ? " and " : " or ";
      std::string out;
      for (std::size_t i = 0; i < p.children.size(); ++i) {
        if (i) out += sep;
        out += nested(p.children[i]);
      }
      return out;
    }
  }
  return {};
}

std::string pretty(const PathPattern& p) {
  std::string out;
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    if (i) out += ".";
    out += element_text(p.elements[i]);
  }
  return out;
}

std::string pretty(const Clause& c) {
  if (c.kind == Clause::Kind::kPredicate) return pretty(c.predicate);
  std::string out = pretty(c.path) + " <- " + c.source.base;
  if (!c.source.type_restrict.empty()) out += "/" + c.source.type_restrict;
  return out;
}

std::string pretty(const Query& q) {
  std::ostringstream out;
  out << "select " << q.relation << "(";
  for (std::size_t i = 0; i < q.head.size(); ++i) {
    if (i) out << ", ";
    out << q.head[i];
  }
  out << ")\nwhere ";
  for (std::size_t i = 0; i < q.clauses.size(); ++i) {
    if (i) out << "\n      ";
    out << pretty(q.clauses[i]);
  }
  out << "\n";
  return out.str();
}

}  // namespace agq::query
