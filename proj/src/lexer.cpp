// Copyright 2026 The tierspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tierspec/lexer.hpp"

#include <cctype>

namespace tierspec {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Longest match first.
constexpr const char* kSymbols[] = {
    "<=>", "==", "=>", "<=", ">=", "~=", "->", "/\\", "\\/", "|_", "_|", "[_", "_]",
    "[]", "__", "=",  "<",  ">",  "~",  "+",  "-",   "*",   "(",  ")",  "[",  "]",
    "{",  "}",  ",",  ":",  ";",  ".",  "^",  "'",   "!",   "|",
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, const std::string& file) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = TokenKind::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = TokenKind::Int;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw ParseError({file, line, col, line, col + 1}, "unterminated string literal",
                         {"'\"'"});
      tok.kind = TokenKind::String;
      tok.text = std::string(text.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else if (c == '\\' && i + 1 < text.size() && ident_start(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = TokenKind::Symbol;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else {
      bool matched = false;
      for (const char* sym : kSymbols) {
        const std::string_view s(sym);
        if (text.substr(i, s.size()) == s) {
          // `__` is only a placeholder when not part of `_|` / `_]`.
          tok.kind = TokenKind::Symbol;
          tok.text = std::string(s);
          advance(s.size());
          matched = true;
          break;
        }
      }
      if (!matched) {
        std::string found = "character '";
        found += c;
        found += "'";
        throw ParseError({file, line, col, line, col + 1}, found, {});
      }
    }
    tok.end_line = line;
    tok.end_column = col;
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::End;
  end.line = end.end_line = line;
  end.column = end.end_column = col;
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End:
      return "end of input";
    case TokenKind::Ident:
      return "identifier '" + t.text + "'";
    case TokenKind::Int:
      return "integer " + t.text;
    case TokenKind::String:
      return "string \"" + t.text + "\"";
    case TokenKind::Symbol:
      return "'" + t.text + "'";
  }
  return "?";
}

}  // namespace tierspec
