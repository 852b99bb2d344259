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

#include <optional>
#include <set>

#include "agq/query.h"

namespace agq::query {

const char* var_kind_name(VarKind k) {
  switch (k) {
    case VarKind::kNode: return "node";
    case VarKind::kArc: return "arc";
    case VarKind::kScalar: return "scalar";
    case VarKind::kSource: return "source";
  }
  return "?";
}

bool is_builtin(std::string_view name) {
  return name == "ovlp" || name == "subinterval" || name == "s_incl" ||
         name == "precedes";
}

namespace {

struct Occurrence {
  std::string name;
  std::optional<VarKind> kind;
  bool binding = false;
  bool restricted = false;  // inside a star or alternation
  SourcePos pos;
};

class Checker {
 public:
  CheckedQuery run(const Query& q) {
    for (const Clause& c : q.clauses) {
      if (c.kind == Clause::Kind::kPredicate) {
        predicate(c.predicate, false, false);
        continue;
      }
      if (c.source.base_is_var) {
        add(c.source.base, VarKind::kSource, true, false, c.source.pos);
      }
      const auto& els = c.path.elements;
      if (els.size() == 1 && els[0].kind == PathElement::Kind::kNode) {
        add(els[0].var, VarKind::kSource, true, false, els[0].pos);
        continue;
      }
      path(c.path, false, false);
    }

    CheckedQuery out;
    out.query = q;
    for (const Occurrence& o : occ_) {
      if (!o.kind) continue;
      auto [it, fresh] = out.kinds.emplace(o.name, *o.kind);
      if (!fresh && it->second != *o.kind) {
        throw SemanticError(
            "KIND_MISMATCH", o.pos, o.name,
            "variable " + o.name + " used as " + var_kind_name(*o.kind) +
                " but earlier as " + var_kind_name(it->second));
      }
    }

    std::set<std::string> bound;
    for (const Occurrence& o : occ_) {
      if (o.binding && !o.restricted) bound.insert(o.name);
    }
    for (const Occurrence& o : occ_) {
      if (o.restricted && !bound.count(o.name)) {
        throw SemanticError("STAR_VAR", o.pos, o.name,
                            "variable " + o.name +
                                " inside a starred or alternative group must "
                                "also be bound outside it");
      }
    }
    for (const Occurrence& o : occ_) {
      if (!o.binding && !bound.count(o.name)) {
        throw SemanticError("UNBOUND_VAR", o.pos, o.name,
                            "variable " + o.name +
                                " is not bound by any path pattern");
      }
    }
    for (const std::string& h : q.head) {
      if (!bound.count(h)) {
        throw SemanticError("UNBOUND_HEAD", SourcePos{}, h,
                            "head variable " + h + " is not bound");
      }
    }
    return out;
  }

 private:
  void add(const std::string& name, std::optional<VarKind> kind, bool binding,
           bool restricted, SourcePos pos) {
    occ_.push_back(Occurrence{name, kind, binding, restricted, pos});
  }

  void path(const PathPattern& p, bool restricted, bool starred) {
    for (const PathElement& e : p.elements) {
      switch (e.kind) {
        case PathElement::Kind::kNode:
          add(e.var, VarKind::kNode, true, restricted, e.pos);
          break;
        case PathElement::Kind::kArc:
          arc(e.arc, restricted || e.starred, starred || e.starred);
          break;
        case PathElement::Kind::kGroup: {
          bool r = restricted || e.starred || e.alternatives.size() > 1;
          for (const PathPattern& alt : e.alternatives) {
            path(alt, r, starred || e.starred);
          }
          break;
        }
      }
    }
  }

  void arc(const ArcPattern& a, bool restricted, bool starred) {
    for (const ArcConstraint& c : a.constraints) {
      if (!c.value.is_var()) continue;
      VarKind k = VarKind::kScalar;
      if (c.attr == "id") k = VarKind::kArc;
      if (c.attr == "start" || c.attr == "end") k = VarKind::kNode;
      if (starred && k != VarKind::kScalar) {
        throw SemanticError("STAR_VAR", c.value.pos, c.value.text,
                            "'" + c.attr + ": " + c.value.text +
                                "' would rebind on every repetition");
      }
      add(c.value.text, k, true, restricted, c.value.pos);
    }
    for (const Predicate& p : a.predicates) predicate(p, true, restricted);
  }

  void expr(const Expr& e, bool restricted) {
    switch (e.kind) {
      case Expr::Kind::kTerm:
        if (e.term.is_var()) {
          add(e.term.text, std::nullopt, false, restricted, e.term.pos);
        }
        break;
      case Expr::Kind::kTime:
        add(e.name, VarKind::kNode, false, restricted, e.pos);
        break;
      case Expr::Kind::kAttr:
        break;
      case Expr::Kind::kAdd:
      case Expr::Kind::kSub:
        for (const Expr& o : e.operands) expr(o, restricted);
        break;
    }
  }

  void predicate(const Predicate& p, bool in_arc, bool restricted) {
    switch (p.kind) {
      case Predicate::Kind::kCompare:
      case Predicate::Kind::kMatch:
        for (const Expr& e : p.operands) expr(e, restricted);
        break;
      case Predicate::Kind::kAnd:
      case Predicate::Kind::kOr:
        for (const Predicate& c : p.children) {
          predicate(c, in_arc, restricted);
        }
        break;
      case Predicate::Kind::kCall: {
        if (!is_builtin(p.name)) {
          throw SemanticError("BAD_BUILTIN", p.pos, p.name,
                              "unknown predicate " + p.name);
        }
        bool node_args = p.name == "precedes";
        bool arity_ok = p.args.size() == 2 ||
                        (in_arc && !node_args && p.args.size() == 1);
        if (!arity_ok) {
          throw SemanticError("BAD_BUILTIN", p.pos, p.name,
                              "wrong number of arguments to " + p.name);
        }
        for (const Term& t : p.args) {
          if (!t.is_var()) {
            throw SemanticError("BAD_BUILTIN", t.pos, t.text,
                                "arguments of " + p.name +
                                    " must be variables");
          }
          add(t.text, node_args ? VarKind::kNode : VarKind::kArc, false,
              restricted, t.pos);
        }
        break;
      }
    }
  }

  std::vector<Occurrence> occ_;
};

}  // namespace

CheckedQuery check(const Query& q) { return Checker().run(q); }

}  // namespace agq::query
