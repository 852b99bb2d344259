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
#include <numeric>
#include <set>
#include <sstream>

#include "program.h"

namespace agq::eval {

using internal::Binding;
using internal::Program;

namespace {

bool restrictable(const Binding& anchor, const Binding& b) {
  if (&anchor == &b || b.source_target >= 0) return false;
  if (b.start_slot >= 0 && b.start_slot == anchor.start_slot &&
      b.end_slot == anchor.end_slot) {
    return true;
  }
  return b.single_arc && anchor.id_slot >= 0 &&
         std::find(b.subinterval_of.begin(), b.subinterval_of.end(),
                   anchor.id_slot) != b.subinterval_of.end();
}

const Binding* source_provider(const Program& prog, int slot) {
  for (const Binding& b : prog.bindings) {
    if (b.source_target == slot) return &b;
  }
  return nullptr;
}

class Planner {
 public:
  Planner(const Program& prog, Plan& plan) : prog_(prog), plan_(plan) {
    for (const Binding& b : prog.bindings) remaining_.push_back(&b);
  }

  bool ready(const Binding& b) const {
    int s = b.source.slot;
    if (s >= 0 && !bound_.count(s) && source_provider(prog_, s)) return false;
    return std::all_of(b.needs.begin(), b.needs.end(),
                       [&](int n) { return bound_.count(n) > 0; });
  }

  bool shares(const Binding& b) const {
    auto hit = [&](int s) { return s >= 0 && bound_.count(s) > 0; };
    return std::any_of(b.binds.begin(), b.binds.end(), hit) ||
           !b.needs.empty() || hit(b.source.slot);
  }

  void schedule(const Binding& b, bool restricted) {
    int s = b.source.slot;
    if (s >= 0 && !bound_.count(s)) {
      PlanStep implicit;
      implicit.kind = PlanStep::Kind::kImplicitSource;
      implicit.var = prog_.slot_names[s];
      plan_.steps.push_back(implicit);
      bound_.insert(s);
      after_.push_back(bound_);
    }
    PlanStep step;
    step.clause = b.clause;
    step.restricted = restricted;
    plan_.steps.push_back(step);
    bound_.insert(b.binds.begin(), b.binds.end());
    after_.push_back(bound_);
    remaining_.erase(std::find(remaining_.begin(), remaining_.end(), &b));
  }

  void run(bool optimize) {
    const Binding* anchor = optimize ? pick_anchor() : nullptr;
    if (anchor) {
      int s = anchor->source.slot;
      if (s >= 0) {
        if (const Binding* src = source_provider(prog_, s)) {
          if (!ready(*src)) {
            anchor = nullptr;
          } else {
            schedule(*src, false);
          }
        }
      }
    }
    if (anchor && !ready(*anchor)) anchor = nullptr;
    if (anchor) {
      plan_.anchor = anchor->clause;
      schedule(*anchor, false);
    }
    while (!remaining_.empty()) {
      const Binding* pick = nullptr;
      for (const Binding* b : remaining_) {
        if (!ready(*b)) continue;
        if (!pick) pick = b;
        if (shares(*b)) {
          pick = b;
          break;
        }
      }
      if (!pick) {
        throw EvalError(
            "no evaluation order binds the variables used inside starred "
            "groups before the groups are matched");
      }
      schedule(*pick, anchor && restrictable(*anchor, *pick));
    }
    attach_filters();
    warn_cross_product();
  }

 private:
  const Binding* pick_anchor() const {
    const Binding* best = nullptr;
    for (const Binding& a : prog_.bindings) {
      if (!a.single_arc || a.source_target >= 0) continue;
      bool useful = std::any_of(
          prog_.bindings.begin(), prog_.bindings.end(),
          [&](const Binding& b) { return restrictable(a, b); });
      if (!useful) continue;
      if (!best || a.constants > best->constants) best = &a;
    }
    return best;
  }

  void attach_filters() {
    for (std::size_t p = 0; p < prog_.preds.size(); ++p) {
      const auto& deps = prog_.preds[p].deps;
      for (std::size_t i = 0; i < plan_.steps.size(); ++i) {
        bool all = std::all_of(deps.begin(), deps.end(),
                               [&](int d) { return after_[i].count(d) > 0; });
        if (all) {
          plan_.steps[i].filters.push_back(static_cast<int>(p));
          break;
        }
      }
    }
  }

  void warn_cross_product() {
    std::vector<const Binding*> matches;
    for (const Binding& b : prog_.bindings) {
      if (b.source_target < 0) matches.push_back(&b);
    }
    if (matches.size() < 2) return;
    std::vector<int> parent(matches.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto vars = [&](const Binding& b) {
      std::set<int> out;
      for (int s : b.binds) {
        if (!internal::is_hidden(prog_.slot_names[s])) out.insert(s);
      }
      out.insert(b.needs.begin(), b.needs.end());
      return out;
    };
    for (std::size_t i = 0; i < matches.size(); ++i) {
      auto vi = vars(*matches[i]);
      for (std::size_t j = i + 1; j < matches.size(); ++j) {
        auto vj = vars(*matches[j]);
        bool common = std::any_of(vi.begin(), vi.end(),
                                  [&](int s) { return vj.count(s) > 0; });
        if (common) parent[find(i)] = find(j);
      }
    }
    // A predicate over slots of several bindings joins them.
    for (const auto& p : prog_.preds) {
      int first = -1;
      for (std::size_t i = 0; i < matches.size(); ++i) {
        const auto& binds = matches[i]->binds;
        bool touches = std::any_of(p.deps.begin(), p.deps.end(), [&](int s) {
          return std::find(binds.begin(), binds.end(), s) != binds.end();
        });
        if (!touches) continue;
        if (first < 0) {
          first = static_cast<int>(i);
        } else {
          parent[find(static_cast<int>(i))] = find(first);
        }
      }
    }
    for (std::size_t i = 1; i < matches.size(); ++i) {
      if (find(i) != find(0)) {
        plan_.warnings.push_back(
            "bindings share no variables; evaluating their cross product");
        return;
      }
    }
  }

  const Program& prog_;
  Plan& plan_;
  std::vector<const Binding*> remaining_;
  std::set<int> bound_;
  std::vector<std::set<int>> after_;
};

Plan make_plan(const query::CheckedQuery& q, bool optimize) {
  auto prog = std::make_shared<Program>(internal::build_program(q.query));
  Plan plan;
  plan.query = q;
  Planner(*prog, plan).run(optimize);
  plan.program = std::move(prog);
  return plan;
}

std::string display_node(const Program& prog, const Binding& b, int slot,
                         const char* end) {
  const std::string& name = prog.slot_names[slot];
  if (!internal::is_hidden(name)) return name;
  if (b.id_slot >= 0) {
    return std::string(end) + "(" + prog.slot_names[b.id_slot] + ")";
  }
  return std::string(end) + " of clause " + std::to_string(b.clause + 1);
}

}  // namespace

Plan compile(const query::CheckedQuery& q) { return make_plan(q, true); }

Plan compile_naive(const query::CheckedQuery& q) {
  return make_plan(q, false);
}

std::string explain(const Plan& plan) {
  const Program& prog = *plan.program;
  const query::Query& q = plan.query.query;
  std::ostringstream out;
  out << "plan " << q.relation << "(";
  for (std::size_t i = 0; i < q.head.size(); ++i) {
    out << (i ? ", " : "") << q.head[i];
  }
  out << ")\n";
  if (plan.anchor) {
    const Binding& a = *prog.binding_for(*plan.anchor);
    out << "anchor: clause " << *plan.anchor + 1 << ": "
        << query::pretty(q.clauses[*plan.anchor]) << "\n";
    out << "region: [ante(" << display_node(prog, a, a.start_slot, "start")
        << "), post(" << display_node(prog, a, a.end_slot, "end") << ")]\n";
  } else {
    out << "anchor: none\n";
  }
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const PlanStep& s = plan.steps[i];
    out << i + 1 << ". ";
    if (s.kind == PlanStep::Kind::kImplicitSource) {
      out << "bind " << s.var << " to each timeline of db\n";
    } else {
      const Binding& b = *prog.binding_for(s.clause);
      out << (b.source_target >= 0 ? "bind source, clause " : "match clause ")
          << s.clause + 1;
      if (s.restricted) out << " within region";
      out << ": " << query::pretty(q.clauses[s.clause]);
      if (b.source_target < 0) {
        out << "  {" << b.automaton.positions.size() << " arc positions, "
            << b.automaton.state_count() << " states}";
      }
      out << "\n";
    }
    for (int f : s.filters) {
      out << "   filter: " << prog.preds[f].text << "\n";
    }
  }
  for (const std::string& w : plan.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace agq::eval
