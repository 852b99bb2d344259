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

#include "lexer.h"

#include <cctype>
#include <charconv>

namespace agq::query::internal {

namespace {

bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  bool line_start = true;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      advance(1);
      line_start = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.pos = {line, col};
    tok.line_start = line_start;
    line_start = false;
    std::size_t start = i;

    if (is_lower(c) || is_digit(c)) {
      std::size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      bool numeric = j > i && (j == text.size() || !is_alnum(text[j]));
      if (numeric) {
        tok.kind = Tok::kInt;
        tok.text = std::string(text.substr(i, j - i));
        auto [ptr, ec] =
            std::from_chars(text.data() + i, text.data() + j, tok.number);
        if (ec != std::errc()) {
          throw ParseError("BAD_TOKEN", tok.pos, tok.text,
                           "integer out of range");
        }
        advance(j - i);
        out.push_back(std::move(tok));
        continue;
      }
      j = i;
      while (j < text.size() && is_alnum(text[j])) ++j;
      // Hyphenated names such as lex-id.
      while (j + 1 < text.size() && text[j] == '-' &&
             std::isalpha(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && is_alnum(text[j])) ++j;
      }
      tok.text = std::string(text.substr(i, j - i));
      if (tok.text == "select") {
        tok.kind = Tok::kSelect;
      } else if (tok.text == "where") {
        tok.kind = Tok::kWhere;
      } else if (tok.text == "and") {
        tok.kind = Tok::kAnd;
      } else if (tok.text == "or") {
        tok.kind = Tok::kOr;
      } else if (tok.text == "time") {
        tok.kind = Tok::kTime;
      } else {
        tok.kind = Tok::kIdent;
      }
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (is_upper(c)) {
      std::size_t j = i;
      while (j < text.size() && is_alnum(text[j])) ++j;
      while (j < text.size() && text[j] == '\'') ++j;
      tok.kind = Tok::kVar;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      std::string value;
      bool closed = false;
      while (j < text.size()) {
        if (text[j] == '\\' && j + 1 < text.size() &&
            (text[j + 1] == '"' || text[j + 1] == '\\')) {
          value += text[j + 1];
          j += 2;
          continue;
        }
        if (text[j] == '"') {
          closed = true;
          break;
        }
        if (text[j] == '\n') break;
        value += text[j++];
      }
      if (!closed) {
        throw ParseError("BAD_TOKEN", tok.pos,
                         std::string(text.substr(i, j - i)),
                         "unterminated string");
      }
      tok.kind = Tok::kString;
      tok.text = std::move(value);
      advance(j + 1 - i);
      out.push_back(std::move(tok));
      continue;
    }

    auto two = text.substr(i, 2);
    Tok kind = Tok::kEnd;
    std::size_t len = 1;
    if (two == "<-") {
      kind = Tok::kArrow, len = 2;
    } else if (two == "<=") {
      kind = Tok::kLe, len = 2;
    } else if (two == ">=") {
      kind = Tok::kGe, len = 2;
    } else if (two == "!=") {
      kind = Tok::kNe, len = 2;
    } else {
      switch (c) {
        case '(': kind = Tok::kLParen; break;
        case ')': kind = Tok::kRParen; break;
        case '[': kind = Tok::kLBracket; break;
        case ']': kind = Tok::kRBracket; break;
        case ',': kind = Tok::kComma; break;
        case ':': kind = Tok::kColon; break;
        case '.': kind = Tok::kDot; break;
        case '|': kind = Tok::kBar; break;
        case '*': kind = Tok::kStar; break;
        case '/': kind = Tok::kSlash; break;
        case ';': kind = Tok::kSemi; break;
        case '=': kind = Tok::kEq; break;
        case '<': kind = Tok::kLt; break;
        case '>': kind = Tok::kGt; break;
        case '~': kind = Tok::kTilde; break;
        case '+': kind = Tok::kPlus; break;
        case '-': kind = Tok::kMinus; break;
        default:
          throw ParseError("BAD_TOKEN", tok.pos, std::string(1, c),
                           std::string("unexpected character '") + c + "'");
      }
    }
    tok.kind = kind;
    tok.text = std::string(text.substr(start, len));
    advance(len);
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = Tok::kEnd;
  end.pos = {line, col};
  end.line_start = true;
  out.push_back(end);
  return out;
}

}  // namespace agq::query::internal
