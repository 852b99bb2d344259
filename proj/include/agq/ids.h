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

#ifndef AGQ_IDS_H_
#define AGQ_IDS_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace agq {

// Opaque non-negative identifier. The tag keeps node, arc and timeline ids
// from being mixed up.
template <class Tag>
struct Id {
  std::uint64_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint64_t v) : value(v) {}

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Id& id) {
    return os << id.value;
  }
};

using NodeId = Id<struct NodeTag>;
using ArcId = Id<struct ArcTag>;
using TimelineId = Id<struct TimelineTag>;

// A point on a timeline in integer ticks. The tick resolution (ticks per
// second) is a corpus-wide property carried by StoreMeta, so times are
// compared and subtracted exactly.
struct Time {
  std::int64_t ticks = 0;

  constexpr Time() = default;
  constexpr explicit Time(std::int64_t t) : ticks(t) {}

  friend constexpr auto operator<=>(const Time&, const Time&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Time& t) {
    return os << t.ticks;
  }
};

}  // namespace agq

template <class Tag>
struct std::hash<agq::Id<Tag>> {
  std::size_t operator()(const agq::Id<Tag>& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

#endif  // AGQ_IDS_H_
