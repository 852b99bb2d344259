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

#ifndef AGQ_SRC_QUERY_LEXER_H_
#define AGQ_SRC_QUERY_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "agq/query.h"

namespace agq::query::internal {

enum class Tok {
  kEnd,
  kSelect,
  kWhere,
  kAnd,
  kOr,
  kTime,
  kIdent,
  kVar,
  kInt,
  kString,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kColon,
  kDot,
  kBar,
  kStar,
  kSlash,
  kSemi,
  kArrow,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kTilde,
  kPlus,
  kMinus,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::int64_t number = 0;
  SourcePos pos;
  bool line_start = false;  // first token on its line
};

// Throws ParseError (code BAD_TOKEN) on characters outside the language and
// on unterminated strings.
std::vector<Token> tokenize(std::string_view text);

}  // namespace agq::query::internal

#endif  // AGQ_SRC_QUERY_LEXER_H_
