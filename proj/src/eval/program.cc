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

#include <algorithm>
#include <set>

#include "program.h"

namespace agq::eval::internal {

const Binding* Program::binding_for(int clause) const {
  for (const Binding& b : bindings) {
    if (b.clause == clause) return &b;
  }
  return nullptr;
}

namespace {

using query::ArcPattern;
using query::Clause;
using query::Expr;
using query::PathElement;
using query::PathPattern;
using query::Predicate;
using query::Term;

struct Frag {
  std::vector<Edge> first;
  std::vector<Edge> last;
  std::vector<std::vector<int>> nullable;
};

std::vector<int> join(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class Builder {
 public:
  explicit Builder(Program& prog) : prog_(prog) {}

  int slot(const std::string& name) {
    auto [it, fresh] =
        prog_.slots.emplace(name, static_cast<int>(prog_.slot_names.size()));
    if (fresh) prog_.slot_names.push_back(name);
    return it->second;
  }

  Value constant(const Term& t) {
    switch (t.kind) {
      case Term::Kind::kInt: return Value::integer(t.number);
      default: return Value::str(t.text);
    }
  }

  CExpr expr(const Expr& e, int self_slot, std::vector<int>& deps) {
    CExpr c;
    switch (e.kind) {
      case Expr::Kind::kTerm:
        if (e.term.is_var()) {
          c.kind = CExpr::Kind::kSlot;
          c.slot = slot(e.term.text);
          deps.push_back(c.slot);
        } else {
          c.kind = CExpr::Kind::kConst;
          c.constant = constant(e.term);
        }
        break;
      case Expr::Kind::kTime:
        c.kind = CExpr::Kind::kTime;
        c.slot = slot(e.name);
        deps.push_back(c.slot);
        break;
      case Expr::Kind::kAttr:
        c.kind = CExpr::Kind::kAttr;
        c.attr = attr_kind(e.name);
        c.self_slot = self_slot;
        if (self_slot >= 0) deps.push_back(self_slot);
        break;
      case Expr::Kind::kAdd:
      case Expr::Kind::kSub:
        c.kind = e.kind == Expr::Kind::kAdd ? CExpr::Kind::kAdd
                                            : CExpr::Kind::kSub;
        for (const Expr& o : e.operands) {
          c.operands.push_back(expr(o, self_slot, deps));
        }
        break;
    }
    return c;
  }

  CPred pred(const Predicate& p, int self_slot, std::vector<int>& deps) {
    CPred c;
    c.kind = p.kind;
    c.op = p.op;
    switch (p.kind) {
      case Predicate::Kind::kCompare:
      case Predicate::Kind::kMatch:
        for (const Expr& e : p.operands) {
          c.operands.push_back(expr(e, self_slot, deps));
        }
        if (p.kind == Predicate::Kind::kMatch) {
          try {
            c.re = std::make_shared<const std::regex>(p.pattern);
          } catch (const std::regex_error& e) {
            throw EvalError("invalid regular expression \"" + p.pattern +
                            "\": " + e.what());
          }
        }
        break;
      case Predicate::Kind::kCall:
        if (p.name == "ovlp") c.builtin = Builtin::kOvlp;
        if (p.name == "subinterval") c.builtin = Builtin::kSubinterval;
        if (p.name == "s_incl") c.builtin = Builtin::kSIncl;
        if (p.name == "precedes") c.builtin = Builtin::kPrecedes;
        if (!query::is_builtin(p.name)) {
          throw EvalError("unknown predicate " + p.name);
        }
        for (const Term& t : p.args) {
          c.args.push_back(slot(t.text));
          deps.push_back(c.args.back());
        }
        if (c.args.size() == 1) {
          c.self_slot = self_slot;
          if (self_slot >= 0) deps.push_back(self_slot);
        }
        break;
      case Predicate::Kind::kAnd:
      case Predicate::Kind::kOr:
        for (const Predicate& ch : p.children) {
          c.children.push_back(pred(ch, self_slot, deps));
        }
        break;
    }
    return c;
  }

  void add_global(const Predicate& p, int self_slot, std::string text) {
    GlobalPred g;
    g.pred = pred(p, self_slot, g.deps);
    std::sort(g.deps.begin(), g.deps.end());
    g.deps.erase(std::unique(g.deps.begin(), g.deps.end()), g.deps.end());
    g.text = std::move(text);
    prog_.preds.push_back(std::move(g));
  }

  // Glushkov construction over the path, collecting bindings as it goes.
  Frag path(const PathPattern& p, bool restricted, Binding& b) {
    Frag acc;
    acc.nullable.push_back({});
    for (const PathElement& e : p.elements) {
      acc = concat(std::move(acc), element(e, restricted, b));
    }
    return acc;
  }

  Frag element(const PathElement& e, bool restricted, Binding& b) {
    Frag f;
    switch (e.kind) {
      case PathElement::Kind::kNode: {
        int s = slot(e.var);
        if (!restricted) b.binds.push_back(s);
        f.nullable.push_back({s});
        return f;
      }
      case PathElement::Kind::kArc: {
        int pos = arc(e.arc, restricted || e.starred, b);
        f.first.push_back({pos, {}});
        f.last.push_back({pos, {}});
        break;
      }
      case PathElement::Kind::kGroup: {
        bool r = restricted || e.starred || e.alternatives.size() > 1;
        for (const PathPattern& alt : e.alternatives) {
          Frag a = path(alt, r, b);
          f.first.insert(f.first.end(), a.first.begin(), a.first.end());
          f.last.insert(f.last.end(), a.last.begin(), a.last.end());
          f.nullable.insert(f.nullable.end(), a.nullable.begin(),
                            a.nullable.end());
        }
        break;
      }
    }
    if (e.starred) {
      auto& a = b.automaton;
      for (const Edge& l : f.last) {
        for (const Edge& fi : f.first) {
          a.follow[l.pos].push_back({fi.pos, join(l.asserts, fi.asserts)});
        }
      }
      f.nullable.assign(1, {});
    }
    return f;
  }

  Frag concat(Frag a, Frag b) {
    auto& follow = current_->automaton.follow;
    for (const Edge& l : a.last) {
      for (const Edge& f : b.first) {
        follow[l.pos].push_back({f.pos, join(l.asserts, f.asserts)});
      }
    }
    Frag out;
    out.first = a.first;
    for (const auto& n : a.nullable) {
      for (const Edge& f : b.first) {
        out.first.push_back({f.pos, join(n, f.asserts)});
      }
    }
    out.last = b.last;
    for (const Edge& l : a.last) {
      for (const auto& n : b.nullable) {
        out.last.push_back({l.pos, join(l.asserts, n)});
      }
    }
    for (const auto& n1 : a.nullable) {
      for (const auto& n2 : b.nullable) out.nullable.push_back(join(n1, n2));
    }
    return out;
  }

  int arc(const ArcPattern& ap, bool restricted, Binding& b) {
    auto& a = b.automaton;
    int pos = static_cast<int>(a.positions.size());
    a.positions.emplace_back();
    a.follow.emplace_back();
    for (const query::ArcConstraint& c : ap.constraints) {
      CConstraint cc;
      cc.attr = attr_kind(c.attr);
      if (c.value.is_var()) {
        cc.slot = slot(c.value.text);
        if (!restricted) b.binds.push_back(cc.slot);
      } else {
        cc.constant = constant(c.value);
      }
      a.positions[pos].constraints.push_back(std::move(cc));
    }
    if (!ap.predicates.empty()) {
      if (restricted) {
        for (const Predicate& p : ap.predicates) {
          std::vector<int> deps;
          a.positions[pos].local.push_back(pred(p, -1, deps));
          b.needs.insert(b.needs.end(), deps.begin(), deps.end());
        }
      } else {
        int hidden = slot("#arc" + std::to_string(++hidden_count_));
        a.positions[pos].hidden_slot = hidden;
        b.binds.push_back(hidden);
        for (const Predicate& p : ap.predicates) {
          add_global(p, hidden,
                     "clause " + std::to_string(b.clause + 1) + " [" +
                         query::pretty(p) + "]");
        }
      }
    }
    return pos;
  }

  void binding(const Clause& c, int index) {
    Binding b;
    b.clause = index;
    current_ = &b;
    if (c.source.base_is_var) {
      b.source.slot = slot(c.source.base);
    } else {
      b.source.name = c.source.base;
    }
    b.source.type_restrict = c.source.type_restrict;

    const auto& els = c.path.elements;
    if (els.size() == 1 && els[0].kind == PathElement::Kind::kNode) {
      b.source_target = slot(els[0].var);
      b.binds.push_back(b.source_target);
      prog_.bindings.push_back(std::move(b));
      current_ = nullptr;
      return;
    }

    PathPattern p = c.path;
    std::vector<const PathElement*> arcs;
    bool shape = true;
    for (const PathElement& e : p.elements) {
      if (e.kind == PathElement::Kind::kArc && !e.starred) {
        arcs.push_back(&e);
      } else if (e.kind != PathElement::Kind::kNode) {
        shape = false;
      }
    }
    if (shape && arcs.size() == 1 && p.elements.size() <= 3) {
      bool node_first = p.elements.front().kind == PathElement::Kind::kNode;
      bool node_last = p.elements.back().kind == PathElement::Kind::kNode;
      std::size_t expected = 1 + (node_first ? 1 : 0) + (node_last ? 1 : 0);
      b.single_arc = p.elements.size() == expected;
      if (b.single_arc) {
        const ArcPattern& ap = arcs.front()->arc;
        for (const query::ArcConstraint& k : ap.constraints) {
          if (!k.value.is_var()) ++b.constants;
          if (k.attr == "id" && k.value.is_var()) {
            b.id_slot = slot(k.value.text);
          }
        }
        if (!c.source.type_restrict.empty()) ++b.constants;
        for (const Predicate& pr : ap.predicates) {
          if (pr.kind == Predicate::Kind::kCall &&
              pr.name == "subinterval" && pr.args.size() == 1) {
            b.subinterval_of.push_back(slot(pr.args[0].text));
          }
        }
        PathElement hidden;
        hidden.kind = PathElement::Kind::kNode;
        if (!node_first) {
          hidden.var = "#start" + std::to_string(index + 1);
          p.elements.insert(p.elements.begin(), hidden);
        }
        if (!node_last) {
          hidden.var = "#end" + std::to_string(index + 1);
          p.elements.push_back(hidden);
        }
      }
    }

    Frag f = path(p, false, b);
    Automaton& a = b.automaton;
    a.first = std::move(f.first);
    a.nullable = std::move(f.nullable);
    a.accept.resize(a.positions.size());
    for (Edge& e : f.last) a.accept[e.pos].push_back(std::move(e.asserts));
    auto dedupe = [](auto& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(a.nullable);
    for (auto& acc : a.accept) dedupe(acc);
    auto edge_less = [](const Edge& x, const Edge& y) {
      return std::tie(x.pos, x.asserts) < std::tie(y.pos, y.asserts);
    };
    auto edge_eq = [](const Edge& x, const Edge& y) {
      return x.pos == y.pos && x.asserts == y.asserts;
    };
    auto dedupe_edges = [&](std::vector<Edge>& v) {
      std::sort(v.begin(), v.end(), edge_less);
      v.erase(std::unique(v.begin(), v.end(), edge_eq), v.end());
    };
    dedupe_edges(a.first);
    for (auto& fl : a.follow) dedupe_edges(fl);

    if (p.elements.front().kind == PathElement::Kind::kNode) {
      b.start_slot = slot(p.elements.front().var);
    }
    if (p.elements.back().kind == PathElement::Kind::kNode) {
      b.end_slot = slot(p.elements.back().var);
    }
    dedupe(b.binds);
    dedupe(b.needs);
    std::vector<int> needs;
    std::set_difference(b.needs.begin(), b.needs.end(), b.binds.begin(),
                        b.binds.end(), std::back_inserter(needs));
    b.needs = std::move(needs);
    prog_.bindings.push_back(std::move(b));
    current_ = nullptr;
  }

 private:
  Program& prog_;
  Binding* current_ = nullptr;
  int hidden_count_ = 0;
};

}  // namespace

Program build_program(const query::Query& q) {
  Program prog;
  Builder builder(prog);
  for (const std::string& h : q.head) {
    prog.head_slots.push_back(builder.slot(h));
  }
  for (std::size_t i = 0; i < q.clauses.size(); ++i) {
    const Clause& c = q.clauses[i];
    if (c.kind == Clause::Kind::kBinding) {
      builder.binding(c, static_cast<int>(i));
    } else {
      builder.add_global(c.predicate, -1,
                         "clause " + std::to_string(i + 1) + " " +
                             query::pretty(c.predicate));
    }
  }
  return prog;
}

}  // namespace agq::eval::internal
