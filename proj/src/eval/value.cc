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
#include <sstream>

#include <json.hpp>

#include "agq/eval.h"
#include "program.h"

namespace agq::eval {

Value Value::node(NodeId id) {
  Value v;
  v.kind = Kind::kNode;
  v.num = static_cast<std::int64_t>(id.value);
  return v;
}

Value Value::arc(ArcId id) {
  Value v;
  v.kind = Kind::kArc;
  v.num = static_cast<std::int64_t>(id.value);
  return v;
}

Value Value::integer(std::int64_t n) {
  Value v;
  v.kind = Kind::kInt;
  v.num = n;
  return v;
}

Value Value::str(std::string s) {
  Value v;
  v.kind = Kind::kStr;
  v.text = std::move(s);
  return v;
}

Value Value::type(std::string stored) {
  Value v;
  v.kind = Kind::kType;
  v.text = std::move(stored);
  return v;
}

Value Value::source(std::int64_t timeline, std::string corpus) {
  Value v;
  v.kind = Kind::kSource;
  v.num = timeline;
  v.text = std::move(corpus);
  return v;
}

std::string to_text(const Value& v) {
  switch (v.kind) {
    case Value::Kind::kNode:
    case Value::Kind::kArc:
    case Value::Kind::kInt:
      return std::to_string(v.num);
    case Value::Kind::kStr:
    case Value::Kind::kType:
      return v.text;
    case Value::Kind::kSource:
      if (v.num == 0) return v.text.empty() ? "db" : v.text;
      return "tl" + std::to_string(v.num);
  }
  return {};
}

std::string format_tsv(const ResultSet& r) {
  std::string out = "# " + r.relation + "(";
  for (std::size_t i = 0; i < r.head.size(); ++i) {
    if (i) out += ",";
    out += r.head[i];
  }
  out += ")\n";
  for (const Tuple& t : r.tuples) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += '\t';
      out += to_text(t[i]);
    }
    out += '\n';
  }
  return out;
}

std::string format_json_lines(const ResultSet& r) {
  std::string out;
  for (const Tuple& t : r.tuples) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Value& v = t[i];
      switch (v.kind) {
        case Value::Kind::kNode:
        case Value::Kind::kArc:
        case Value::Kind::kInt:
          row[r.head[i]] = v.num;
          break;
        default:
          row[r.head[i]] = to_text(v);
      }
    }
    out += row.dump() + "\n";
  }
  return out;
}

Corpus::Corpus() : Corpus(AnnotationGraph::build({}, {}), StoreMeta{}) {}

Corpus::Corpus(const RelationalStore& store)
    : Corpus(to_graph(store), store.meta()) {}

Corpus::Corpus(AnnotationGraph graph, StoreMeta meta)
    : graph_(std::make_shared<const AnnotationGraph>(std::move(graph))),
      index_(TimeIndex::build(graph_)),
      meta_(std::move(meta)) {
  for (std::uint32_t a = 0; a < graph_->arc_count(); ++a) {
    by_type_[graph_->arcs()[a].type].push_back(a);
  }
}

std::span<const std::uint32_t> Corpus::arcs_of_type(
    const std::string& type) const {
  auto it = by_type_.find(type);
  if (it == by_type_.end()) return {};
  return it->second;
}

namespace internal {

AttrKind attr_kind(const std::string& name) {
  if (name == "id") return AttrKind::kId;
  if (name == "start") return AttrKind::kStart;
  if (name == "end") return AttrKind::kEnd;
  if (name == "type") return AttrKind::kType;
  if (name == "label") return AttrKind::kLabel;
  return AttrKind::kOther;
}

bool is_hidden(const std::string& slot_name) {
  return !slot_name.empty() && slot_name[0] == '#';
}

std::optional<Value> arc_attr(const AnnotationGraph& g, std::size_t arc_pos,
                              AttrKind attr) {
  const Arc& a = g.arcs()[arc_pos];
  switch (attr) {
    case AttrKind::kId: return Value::arc(a.id);
    case AttrKind::kStart: return Value::node(a.src);
    case AttrKind::kEnd: return Value::node(a.dst);
    case AttrKind::kType: return Value::type(a.type);
    case AttrKind::kLabel: return Value::str(a.label);
    case AttrKind::kOther: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

bool numeric(const Value& v) {
  return v.kind == Value::Kind::kNode || v.kind == Value::Kind::kArc ||
         v.kind == Value::Kind::kInt;
}

bool textual(const Value& v) {
  return v.kind == Value::Kind::kStr || v.kind == Value::Kind::kType;
}

template <class T>
bool apply(query::CmpOp op, const T& a, const T& b) {
  switch (op) {
    case query::CmpOp::kEq: return a == b;
    case query::CmpOp::kNe: return a != b;
    case query::CmpOp::kLt: return a < b;
    case query::CmpOp::kLe: return a <= b;
    case query::CmpOp::kGt: return a > b;
    case query::CmpOp::kGe: return a >= b;
  }
  return false;
}

bool incomparable(query::CmpOp op) { return op == query::CmpOp::kNe; }

bool equality(query::CmpOp op) {
  return op == query::CmpOp::kEq || op == query::CmpOp::kNe;
}

}  // namespace

bool compare_values(const Value& a, query::CmpOp op, const Value& b,
                    const StoreMeta& meta) {
  if (numeric(a) && numeric(b)) {
    bool ids_mixed = a.kind != b.kind && a.kind != Value::Kind::kInt &&
                     b.kind != Value::Kind::kInt;
    if (ids_mixed) return incomparable(op);
    return apply(op, a.num, b.num);
  }
  if (textual(a) && textual(b)) {
    if (a.kind == b.kind) return apply(op, a.text, b.text);
    if (!equality(op)) return false;
    const Value& t = a.kind == Value::Kind::kType ? a : b;
    const Value& s = a.kind == Value::Kind::kType ? b : a;
    return apply(op, t.text, meta.resolve_type(s.text));
  }
  if ((numeric(a) && textual(b)) || (textual(a) && numeric(b))) {
    if (!equality(op)) return false;
    if (a.kind == Value::Kind::kType || b.kind == Value::Kind::kType) {
      const Value& t = a.kind == Value::Kind::kType ? a : b;
      const Value& n = a.kind == Value::Kind::kType ? b : a;
      return apply(op, t.text, meta.resolve_type(to_text(n)));
    }
    return apply(op, to_text(a), to_text(b));
  }
  if (a.kind == Value::Kind::kSource && b.kind == Value::Kind::kSource) {
    return equality(op) ? apply(op, a.num, b.num) : false;
  }
  return incomparable(op);
}

}  // namespace internal

}  // namespace agq::eval
