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

#include "agq/oracle.h"

#include <map>
#include <regex>
#include <tuple>

namespace agq::oracle {

namespace {

using Node = std::int64_t;

struct ArcFact {
  Node id, x, y;
  std::string type;
};

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

std::vector<ArcFact> arc_facts(const RelationalStore& s) {
  std::set<Node> nodes;
  for (const ArcRow& a : s.arcs()) {
    nodes.insert(as_int(a.src.value));
    nodes.insert(as_int(a.dst.value));
  }
  for (const TimeRow& t : s.times()) nodes.insert(as_int(t.node.value));
  if (nodes.size() > kMaxNodes) {
    throw OracleError("oracle input has " + std::to_string(nodes.size()) +
                      " nodes; the limit is " + std::to_string(kMaxNodes));
  }
  std::vector<ArcFact> out;
  for (const ArcRow& a : s.arcs()) {
    out.push_back({as_int(a.arc.value), as_int(a.src.value),
                   as_int(a.dst.value), a.type});
  }
  return out;
}

std::map<Node, Time> time_facts(const RelationalStore& s) {
  std::map<Node, Time> out;
  for (const TimeRow& t : s.times()) out[as_int(t.node.value)] = t.time;
  return out;
}

std::map<Node, std::string> label_facts(const RelationalStore& s) {
  std::map<Node, std::string> out;
  for (const LabelRow& l : s.labels()) out[as_int(l.arc.value)] = l.label;
  return out;
}

// path(X, X, T) :- arc(_, X, _, T).
// path(X, X, T) :- arc(_, _, X, T).
// path(X, Y, T) :- arc(_, X, Z, T), path(Z, Y, T).
std::set<std::tuple<Node, Node, std::string>> typed_paths(
    const std::vector<ArcFact>& arcs) {
  std::set<std::tuple<Node, Node, std::string>> p;
  for (const ArcFact& a : arcs) {
    p.emplace(a.x, a.x, a.type);
    p.emplace(a.y, a.y, a.type);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto snapshot = p;
    for (const ArcFact& a : arcs) {
      for (const auto& [z, y, t] : snapshot) {
        if (z == a.y && t == a.type && p.emplace(a.x, y, t).second) {
          changed = true;
        }
      }
    }
  }
  return p;
}

std::set<std::pair<Node, Node>> any_paths(const std::vector<ArcFact>& arcs) {
  std::set<std::pair<Node, Node>> p;
  for (const ArcFact& a : arcs) {
    p.emplace(a.x, a.x);
    p.emplace(a.y, a.y);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto snapshot = p;
    for (const ArcFact& a : arcs) {
      for (const auto& [z, y] : snapshot) {
        if (z == a.y && p.emplace(a.x, y).second) changed = true;
      }
    }
  }
  return p;
}

// Path lookup for either mode: typed asks for some single type.
class Paths {
 public:
  Paths(const std::vector<ArcFact>& arcs, PathMode mode) : mode_(mode) {
    if (mode == PathMode::kTyped) {
      typed_ = typed_paths(arcs);
      for (const auto& [x, y, t] : typed_) untyped_.emplace(x, y);
    } else {
      untyped_ = any_paths(arcs);
    }
  }

  bool has(Node x, Node y, const std::string& type) const {
    if (mode_ == PathMode::kAny) return untyped_.count({x, y}) > 0;
    return typed_.count({x, y, type}) > 0;
  }
  bool has_any_type(Node x, Node y) const {
    return untyped_.count({x, y}) > 0;
  }

 private:
  PathMode mode_;
  std::set<std::tuple<Node, Node, std::string>> typed_;
  std::set<std::pair<Node, Node>> untyped_;
};

FactTable s_incl_with(const std::vector<ArcFact>& arcs, const Paths& paths,
                      const char* name) {
  FactTable t{name, 2, {}};
  for (const ArcFact& a : arcs) {
    for (const ArcFact& b : arcs) {
      if (paths.has_any_type(a.x, b.x) && paths.has_any_type(b.y, a.y)) {
        t.rows.insert({a.id, b.id});
      }
    }
  }
  return t;
}

std::set<std::pair<Node, Node>> ovlp_pairs(const std::vector<ArcFact>& arcs,
                                           const std::map<Node, Time>& time) {
  std::set<std::pair<Node, Node>> out;
  for (const ArcFact& a : arcs) {
    for (const ArcFact& b : arcs) {
      auto x1 = time.find(a.x), y1 = time.find(a.y);
      auto x2 = time.find(b.x), y2 = time.find(b.y);
      if (x1 == time.end() || y1 == time.end() || x2 == time.end() ||
          y2 == time.end()) {
        continue;
      }
      if (x1->second <= y2->second && x2->second <= y1->second) {
        out.emplace(a.id, b.id);
      }
    }
  }
  return out;
}

}  // namespace

std::string FactTable::to_tsv() const {
  std::string out;
  for (const Row& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += '\t';
      if (const auto* n = std::get_if<std::int64_t>(&r[i])) {
        out += std::to_string(*n);
      } else {
        out += std::get<std::string>(r[i]);
      }
    }
    out += '\n';
  }
  return out;
}

FactTable path(const RelationalStore& s) {
  FactTable t{"path", 3, {}};
  for (const auto& [x, y, type] : typed_paths(arc_facts(s))) {
    t.rows.insert({x, y, type});
  }
  return t;
}

FactTable path_any(const RelationalStore& s) {
  FactTable t{"path_any", 2, {}};
  for (const auto& [x, y] : any_paths(arc_facts(s))) t.rows.insert({x, y});
  return t;
}

FactTable s_incl(const RelationalStore& s) {
  auto arcs = arc_facts(s);
  return s_incl_with(arcs, Paths(arcs, PathMode::kTyped), "s_incl");
}

FactTable s_incl_any(const RelationalStore& s) {
  auto arcs = arc_facts(s);
  return s_incl_with(arcs, Paths(arcs, PathMode::kAny), "s_incl_any");
}

FactTable ovlp(const RelationalStore& s) {
  FactTable t{"ovlp", 2, {}};
  for (const auto& [a, b] : ovlp_pairs(arc_facts(s), time_facts(s))) {
    t.rows.insert({a, b});
  }
  return t;
}

Queries123 queries_123(const RelationalStore& s, const QueryParams& p) {
  auto arcs = arc_facts(s);
  auto labels = label_facts(s);
  auto time = time_facts(s);
  Paths paths(arcs, p.mode);
  auto overlap = ovlp_pairs(arcs, time);
  auto incl = s_incl_with(arcs, paths, "s_incl");
  std::regex vowel(p.vowel), high(p.high_tone);
  auto label = [&](Node a) {
    auto it = labels.find(a);
    return it == labels.end() ? std::string() : it->second;
  };

  Queries123 q;
  q.q1 = {"q1", 1, {}};
  q.q2 = {"q2", 1, {}};
  q.q3 = {"q3", 1, {}};

  // ans(A) :- arc(A, X, Y, word), path(X, X1, phonetic),
  //           arc(A1, X1, X2, phonetic), label(A1, d),
  //           path(X2, X3, phonetic),
  //           arc(A2, X3, Y, phonetic), label(A2, k)
  for (const ArcFact& a : arcs) {
    if (a.type != p.word) continue;
    bool found = false;
    for (const ArcFact& a1 : arcs) {
      if (found) break;
      if (a1.type != p.phonetic || label(a1.id) != p.first_label) continue;
      if (!paths.has(a.x, a1.x, p.phonetic)) continue;
      for (const ArcFact& a2 : arcs) {
        if (a2.type != p.phonetic || label(a2.id) != p.last_label ||
            a2.y != a.y) {
          continue;
        }
        if (paths.has(a1.y, a2.x, p.phonetic)) {
          found = true;
          break;
        }
      }
    }
    if (found) q.q1.rows.insert({a.id});
  }

  // ans(A) :- arc(A, X, Y, phonetic),
  //           arc(A1, Y, Y1, phonetic), label(A1, vowel),
  //           arc(A2, Z, Z1, tone), label(A2, high), ovlp(A1, A2)
  // ans(A) :- arc(A, _, _, word), arc(A1, _, _, phonetic), label(A1, vowel),
  //           arc(A2, _, _, tone), label(A2, high),
  //           s_incl(A, A1), ovlp(A1, A2)
  for (const ArcFact& a1 : arcs) {
    if (a1.type != p.phonetic || !std::regex_match(label(a1.id), vowel)) {
      continue;
    }
    bool overlaps_high = false;
    for (const ArcFact& a2 : arcs) {
      if (a2.type == p.tone && std::regex_match(label(a2.id), high) &&
          overlap.count({a1.id, a2.id})) {
        overlaps_high = true;
        break;
      }
    }
    if (!overlaps_high) continue;
    for (const ArcFact& a : arcs) {
      if (a.type == p.phonetic && a.y == a1.x) q.q2.rows.insert({a.id});
      if (a.type == p.word && incl.contains({a.id, a1.id})) {
        q.q3.rows.insert({a.id});
      }
    }
  }
  return q;
}

TemporalOracle::TemporalOracle(const AnnotationGraph& g) : g_(g) {
  const std::size_t n = g.node_count();
  if (n > kMaxNodes) {
    throw OracleError("oracle input has " + std::to_string(n) +
                      " nodes; the limit is " + std::to_string(kMaxNodes));
  }
  reach_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach_[i][i] = true;
  for (std::size_t a = 0; a < g.arc_count(); ++a) {
    reach_[g.src_index(a)][g.dst_index(a)] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach_[k][j]) reach_[i][j] = true;
      }
    }
  }
  bounds_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::optional<Time> ante, post;
    for (std::size_t u = 0; u < n; ++u) {
      const auto& t = g.nodes()[u].time;
      if (!t) continue;
      if (reach_[u][v] && (!ante || *ante < *t)) ante = *t;
      if (reach_[v][u] && (!post || *t < *post)) post = *t;
    }
    if (!ante || !post) {
      throw OracleError("node without timed ancestor or descendant");
    }
    bounds_[v] = {*ante, *post};
  }
}

bool TemporalOracle::reachable(std::size_t m, std::size_t n) const {
  return reach_[m][n];
}

bool TemporalOracle::precedes(std::size_t m, std::size_t n) const {
  return m != n && (reach_[m][n] || bounds_[m].post < bounds_[n].ante);
}

bool TemporalOracle::precedes_eq(std::size_t m, std::size_t n) const {
  return reach_[m][n] || bounds_[m].post <= bounds_[n].ante;
}

bool TemporalOracle::overlaps(std::size_t a, std::size_t b) const {
  return precedes_eq(g_.src_index(a), g_.dst_index(b)) &&
         precedes_eq(g_.src_index(b), g_.dst_index(a));
}

bool TemporalOracle::includes_struct(std::size_t outer,
                                     std::size_t inner) const {
  return reach_[g_.src_index(outer)][g_.src_index(inner)] &&
         reach_[g_.dst_index(inner)][g_.dst_index(outer)];
}

bool TemporalOracle::subinterval(std::size_t inner, std::size_t outer) const {
  return precedes_eq(g_.src_index(outer), g_.src_index(inner)) &&
         precedes_eq(g_.dst_index(inner), g_.dst_index(outer));
}

FactTable brute_tc(const AnnotationGraph& g) {
  FactTable t{"tc", 2, {}};
  if (g.empty()) return t;
  TemporalOracle o(g);
  for (std::size_t m = 0; m < g.node_count(); ++m) {
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      if (o.precedes(m, n)) {
        t.rows.insert({as_int(g.nodes()[m].id.value),
                       as_int(g.nodes()[n].id.value)});
      }
    }
  }
  return t;
}

}  // namespace agq::oracle
