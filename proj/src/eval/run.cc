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
#include <charconv>
#include <set>

#include "program.h"

namespace agq::eval {

using internal::ArcTest;
using internal::AttrKind;
using internal::Automaton;
using internal::Binding;
using internal::Builtin;
using internal::CExpr;
using internal::CPred;
using internal::Edge;
using internal::Program;

namespace {

struct Scope {
  std::optional<std::uint64_t> timeline;
  std::optional<std::string> type;  // stored type
  std::optional<std::pair<Time, Time>> region;
};

class Runner {
 public:
  Runner(const Program& prog, const Corpus& corpus)
      : prog_(prog),
        corpus_(corpus),
        g_(corpus.graph()),
        ix_(corpus.index()),
        slots_(prog.slot_names.size()) {}

  std::vector<std::optional<Value>>& slots() { return slots_; }

  ResultSet run(const Plan& plan) {
    plan_ = &plan;
    step(0);
    ResultSet r;
    r.relation = plan.query.query.relation;
    r.head = plan.query.query.head;
    r.tuples.assign(out_.begin(), out_.end());
    return r;
  }

  // Every match of `b` under the current bindings.
  void match(const Binding& b, const Scope& scope,
             const std::function<void()>& k) {
    scope_ = &scope;
    k_ = &k;
    auto_ = &b.automaton;
    start();
  }

  Scope scope_for(const Binding& b) const {
    Scope s;
    const internal::SourceSpec& src = b.source;
    if (src.slot >= 0) {
      const Value& v = *slots_[src.slot];
      if (v.num != 0) s.timeline = v.num;
    } else {
      s.timeline = resolve_name(src.name);
    }
    if (!src.type_restrict.empty()) {
      s.type = corpus_.meta().resolve_type(src.type_restrict);
    }
    return s;
  }

 private:
  // nullopt: the whole corpus.
  std::optional<std::uint64_t> resolve_name(const std::string& name) const {
    if (name == "db" || (!corpus_.meta().corpus.empty() &&
                         name == corpus_.meta().corpus)) {
      return std::nullopt;
    }
    if (name.size() > 2 && name.compare(0, 2, "tl") == 0) {
      std::uint64_t n = 0;
      auto [p, ec] =
          std::from_chars(name.data() + 2, name.data() + name.size(), n);
      if (ec == std::errc() && p == name.data() + name.size()) return n;
    }
    throw EvalError("unknown source '" + name + "'");
  }

  std::vector<std::uint64_t> timelines_of(
      std::optional<std::uint64_t> within) const {
    std::vector<std::uint64_t> out;
    for (TimelineId t : g_.timelines()) {
      if (!within || *within == t.value) out.push_back(t.value);
    }
    return out;
  }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t m) {
    while (trail_.size() > m) {
      slots_[trail_.back()].reset();
      trail_.pop_back();
    }
  }
  bool unify(int slot, const Value& v) {
    auto& cur = slots_[slot];
    if (cur) return internal::compare_values(*cur, query::CmpOp::kEq, v,
                                             corpus_.meta());
    cur = v;
    trail_.push_back(slot);
    return true;
  }

  void step(std::size_t i) {
    const auto& steps = plan_->steps;
    if (i == steps.size()) {
      if (steps.empty()) {
        for (const auto& p : prog_.preds) {
          if (!eval(p.pred, std::nullopt)) return;
        }
      }
      Tuple t;
      for (int s : prog_.head_slots) t.push_back(*slots_[s]);
      out_.insert(std::move(t));
      return;
    }
    const PlanStep& s = steps[i];
    auto next = [&] {
      for (int f : s.filters) {
        if (!eval(prog_.preds[f].pred, std::nullopt)) return;
      }
      step(i + 1);
    };
    if (s.kind == PlanStep::Kind::kImplicitSource) {
      int slot = prog_.slots.at(s.var);
      for (std::uint64_t tl : timelines_of(std::nullopt)) {
        std::size_t m = mark();
        if (unify(slot, Value::source(tl, corpus_.meta().corpus))) next();
        undo(m);
      }
      return;
    }
    const Binding& b = *prog_.binding_for(s.clause);
    if (b.source_target >= 0) {
      if (!b.source.type_restrict.empty()) {
        throw EvalError("a timeline binding cannot restrict by type");
      }
      Scope within = scope_for(b);
      for (std::uint64_t tl : timelines_of(within.timeline)) {
        std::size_t m = mark();
        if (unify(b.source_target,
                  Value::source(tl, corpus_.meta().corpus))) {
          next();
        }
        undo(m);
      }
      return;
    }
    Scope scope = scope_for(b);
    if (s.restricted) scope.region = region_;
    bool is_anchor = plan_->anchor && *plan_->anchor == s.clause;
    std::function<void()> k = [&, is_anchor] {
      if (is_anchor) {
        auto saved = region_;
        std::size_t x = g_.require_node(NodeId(slots_[b.start_slot]->num));
        std::size_t y = g_.require_node(NodeId(slots_[b.end_slot]->num));
        region_ = std::make_pair(ix_.bounds_at(x).ante, ix_.bounds_at(y).post);
        // Keep the scope of the running match; later steps read region_.
        const Scope* sc = scope_;
        const std::function<void()>* kk = k_;
        const Automaton* au = auto_;
        next();
        scope_ = sc, k_ = kk, auto_ = au;
        region_ = saved;
        return;
      }
      const Scope* sc = scope_;
      const std::function<void()>* kk = k_;
      const Automaton* au = auto_;
      next();
      scope_ = sc, k_ = kk, auto_ = au;
    };
    match(b, scope, k);
  }

  bool admissible(std::size_t a) const {
    const Scope& s = *scope_;
    if (s.type && g_.arcs()[a].type != *s.type) return false;
    if (s.timeline && g_.timeline_at(g_.src_index(a)).value != *s.timeline) {
      return false;
    }
    if (s.region) {
      if (ix_.bounds_at(g_.src_index(a)).ante < s.region->first) return false;
      if (s.region->second < ix_.bounds_at(g_.dst_index(a)).post) return false;
    }
    return true;
  }

  bool incident(std::size_t node) const {
    const Scope& s = *scope_;
    auto ok = [&](std::uint32_t a) {
      if (s.type && g_.arcs()[a].type != *s.type) return false;
      return !s.timeline ||
             g_.timeline_at(g_.src_index(a)).value == *s.timeline;
    };
    for (std::uint32_t a : g_.out_arcs(node)) {
      if (ok(a)) return true;
    }
    for (std::uint32_t a : g_.in_arcs(node)) {
      if (ok(a)) return true;
    }
    return false;
  }

  std::optional<std::size_t> node_of(const Value& v) const {
    if (v.kind == Value::Kind::kNode || v.kind == Value::Kind::kInt) {
      if (v.num < 0) return std::nullopt;
      return g_.node_index(NodeId(v.num));
    }
    return std::nullopt;
  }

  std::optional<std::size_t> arc_of(const Value& v) const {
    if (v.kind == Value::Kind::kArc || v.kind == Value::Kind::kInt) {
      if (v.num < 0) return std::nullopt;
      return g_.arc_index(ArcId(v.num));
    }
    return std::nullopt;
  }

  // Constraint value known before matching: bound variable or constant.
  const Value* known(const internal::CConstraint& c) const {
    if (c.slot < 0) return &c.constant;
    return slots_[c.slot] ? &*slots_[c.slot] : nullptr;
  }

  void start() {
    const Automaton& a = *auto_;
    for (const Edge& e : a.first) {
      std::vector<std::uint32_t> cands = candidates(e);
      for (std::uint32_t arc : cands) {
        if (!admissible(arc)) continue;
        take(e, arc);
      }
    }
    for (const auto& n : a.nullable) zero_length(n);
  }

  std::vector<std::uint32_t> candidates(const Edge& e) {
    for (int s : e.asserts) {
      if (!slots_[s]) continue;
      auto node = node_of(*slots_[s]);
      if (!node) return {};
      auto out = g_.out_arcs(*node);
      return {out.begin(), out.end()};
    }
    const ArcTest& t = auto_->positions[e.pos];
    for (const auto& c : t.constraints) {
      const Value* v = known(c);
      if (!v) continue;
      if (c.attr == AttrKind::kId) {
        auto arc = arc_of(*v);
        if (!arc) return {};
        return {static_cast<std::uint32_t>(*arc)};
      }
      if (c.attr == AttrKind::kStart || c.attr == AttrKind::kEnd) {
        auto node = node_of(*v);
        if (!node) return {};
        auto arcs = c.attr == AttrKind::kStart ? g_.out_arcs(*node)
                                               : g_.in_arcs(*node);
        return {arcs.begin(), arcs.end()};
      }
    }
    if (scope_->region) {
      return ix_.arc_positions_in_range(scope_->region->first,
                                        scope_->region->second);
    }
    if (scope_->type) {
      auto arcs = corpus_.arcs_of_type(*scope_->type);
      return {arcs.begin(), arcs.end()};
    }
    std::vector<std::uint32_t> all(g_.arc_count());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }

  bool assert_node(const std::vector<int>& asserts, std::size_t node) {
    Value v = Value::node(g_.nodes()[node].id);
    for (int s : asserts) {
      if (!unify(s, v)) return false;
    }
    return true;
  }

  // Enters position e.pos over `arc`, asserting e.asserts on its source.
  void take(const Edge& e, std::uint32_t arc) {
    std::size_t m = mark();
    if (assert_node(e.asserts, g_.src_index(arc)) && test(e.pos, arc)) {
      advance(e.pos, g_.dst_index(arc));
    }
    undo(m);
  }

  void advance(int pos, std::size_t node) {
    const Automaton& a = *auto_;
    for (const auto& asserts : a.accept[pos]) {
      std::size_t m = mark();
      if (assert_node(asserts, node)) (*k_)();
      undo(m);
    }
    for (const Edge& e : a.follow[pos]) {
      for (std::uint32_t arc : g_.out_arcs(node)) {
        if (admissible(arc)) take(e, arc);
      }
    }
  }

  void zero_length(const std::vector<int>& asserts) {
    std::optional<std::size_t> fixed;
    for (int s : asserts) {
      if (!slots_[s]) continue;
      auto node = node_of(*slots_[s]);
      if (!node || (fixed && *fixed != *node)) return;
      fixed = node;
    }
    auto try_node = [&](std::size_t node) {
      if (!incident(node)) return;
      std::size_t m = mark();
      if (assert_node(asserts, node)) (*k_)();
      undo(m);
    };
    if (fixed) {
      try_node(*fixed);
      return;
    }
    if (asserts.empty()) {
      for (std::size_t n = 0; n < g_.node_count(); ++n) {
        if (incident(n)) {
          (*k_)();
          return;
        }
      }
      return;
    }
    for (std::size_t n = 0; n < g_.node_count(); ++n) try_node(n);
  }

  bool test(int pos, std::uint32_t arc) {
    const ArcTest& t = auto_->positions[pos];
    for (const auto& c : t.constraints) {
      auto v = internal::arc_attr(g_, arc, c.attr);
      if (!v) return false;
      if (c.slot >= 0) {
        if (!unify(c.slot, *v)) return false;
      } else if (!internal::compare_values(*v, query::CmpOp::kEq, c.constant,
                                           corpus_.meta())) {
        return false;
      }
    }
    if (t.hidden_slot >= 0 &&
        !unify(t.hidden_slot, Value::arc(g_.arcs()[arc].id))) {
      return false;
    }
    for (const CPred& p : t.local) {
      if (!eval(p, arc)) return false;
    }
    return true;
  }

  const Value& slot_value(int slot) const {
    if (!slots_[slot]) {
      throw EvalError("variable " + prog_.slot_names[slot] +
                      " is not bound when a starred group that uses it is "
                      "matched");
    }
    return *slots_[slot];
  }

  std::optional<std::size_t> self_arc(int self_slot,
                                      std::optional<std::size_t> self) const {
    if (self_slot >= 0) return arc_of(slot_value(self_slot));
    return self;
  }

  std::optional<Value> value(const CExpr& e,
                             std::optional<std::size_t> self) const {
    switch (e.kind) {
      case CExpr::Kind::kConst:
        return e.constant;
      case CExpr::Kind::kSlot:
        return slot_value(e.slot);
      case CExpr::Kind::kTime: {
        auto node = node_of(slot_value(e.slot));
        if (!node || !g_.nodes()[*node].time) return std::nullopt;
        return Value::integer(g_.nodes()[*node].time->ticks);
      }
      case CExpr::Kind::kAttr: {
        auto arc = self_arc(e.self_slot, self);
        if (!arc) return std::nullopt;
        return internal::arc_attr(g_, *arc, e.attr);
      }
      case CExpr::Kind::kAdd:
      case CExpr::Kind::kSub: {
        auto a = value(e.operands[0], self);
        auto b = value(e.operands[1], self);
        if (!a || !b || a->kind != Value::Kind::kInt ||
            b->kind != Value::Kind::kInt) {
          return std::nullopt;
        }
        return Value::integer(e.kind == CExpr::Kind::kAdd ? a->num + b->num
                                                          : a->num - b->num);
      }
    }
    return std::nullopt;
  }

  bool eval(const CPred& p, std::optional<std::size_t> self) const {
    using K = query::Predicate::Kind;
    switch (p.kind) {
      case K::kCompare: {
        auto a = value(p.operands[0], self);
        auto b = value(p.operands[1], self);
        if (!a || !b) return false;
        return internal::compare_values(*a, p.op, *b, corpus_.meta());
      }
      case K::kMatch: {
        auto a = value(p.operands[0], self);
        if (!a) return false;
        return std::regex_match(to_text(*a), *p.re);
      }
      case K::kAnd:
        for (const CPred& c : p.children) {
          if (!eval(c, self)) return false;
        }
        return true;
      case K::kOr:
        for (const CPred& c : p.children) {
          if (eval(c, self)) return true;
        }
        return false;
      case K::kCall:
        return call(p, self);
    }
    return false;
  }

  bool call(const CPred& p, std::optional<std::size_t> self) const {
    if (p.builtin == Builtin::kPrecedes) {
      auto m = node_of(slot_value(p.args[0]));
      auto n = node_of(slot_value(p.args[1]));
      return m && n && ix_.precedes_at(*m, *n);
    }
    std::optional<std::size_t> a, b;
    if (p.args.size() == 1) {
      a = self_arc(p.self_slot, self);
      b = arc_of(slot_value(p.args[0]));
    } else {
      a = arc_of(slot_value(p.args[0]));
      b = arc_of(slot_value(p.args[1]));
    }
    if (!a || !b) return false;
    switch (p.builtin) {
      case Builtin::kOvlp: return ix_.overlaps_at(*a, *b);
      case Builtin::kSubinterval: return ix_.subinterval_at(*a, *b);
      case Builtin::kSIncl: return ix_.includes_at(*a, *b);
      case Builtin::kPrecedes: break;
    }
    return false;
  }

  const Program& prog_;
  const Corpus& corpus_;
  const AnnotationGraph& g_;
  const TimeIndex& ix_;
  const Plan* plan_ = nullptr;
  std::vector<std::optional<Value>> slots_;
  std::vector<int> trail_;
  std::set<Tuple> out_;
  std::optional<std::pair<Time, Time>> region_;
  const Scope* scope_ = nullptr;
  const std::function<void()>* k_ = nullptr;
  const Automaton* auto_ = nullptr;
};

}  // namespace

ResultSet run(const Plan& plan, const Corpus& corpus) {
  Runner r(*plan.program, corpus);
  return r.run(plan);
}

ResultSet run_naive(const query::CheckedQuery& q, const Corpus& corpus) {
  return run(compile_naive(q), corpus);
}

ResultSet execute(std::string_view text, const Corpus& corpus,
                  bool optimize) {
  query::CheckedQuery q = query::check(query::parse(text));
  return optimize ? run(compile(q), corpus) : run_naive(q, corpus);
}

void match_path(const query::PathPattern& pattern,
                std::optional<NodeId> start, const Corpus& corpus,
                const std::string& type_restrict, const Env& env,
                const std::function<void(const Env&)>& yield) {
  query::Query q;
  q.relation = "match";
  query::Clause c;
  c.kind = query::Clause::Kind::kBinding;
  c.path = pattern;
  if (start) {
    query::PathElement first;
    first.kind = query::PathElement::Kind::kNode;
    first.var = "#from";
    c.path.elements.insert(c.path.elements.begin(), first);
  }
  c.source.base = "db";
  c.source.type_restrict = type_restrict;
  q.clauses.push_back(c);
  Program prog = internal::build_program(q);
  const Binding& b = prog.bindings.front();

  Runner r(prog, corpus);
  for (const auto& [name, v] : env) {
    auto it = prog.slots.find(name);
    if (it != prog.slots.end()) r.slots()[it->second] = v;
  }
  if (start) r.slots()[prog.slots.at("#from")] = Value::node(*start);
  Scope scope = r.scope_for(b);
  std::function<void()> k = [&] {
    Env out = env;
    for (std::size_t s = 0; s < prog.slot_names.size(); ++s) {
      const std::string& name = prog.slot_names[s];
      if (internal::is_hidden(name) || !r.slots()[s]) continue;
      out[name] = *r.slots()[s];
    }
    yield(out);
  };
  r.match(b, scope, k);
}

}  // namespace agq::eval
