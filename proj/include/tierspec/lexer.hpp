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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tierspec/diagnostics.hpp"

namespace tierspec {

enum class TokenKind { Ident, Int, String, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;
};

/// Splits ASCII specification text into tokens. `%` starts a comment that
/// runs to the end of the line. Throws ParseError on characters outside the
/// concrete syntax.
std::vector<Token> tokenize(std::string_view text, const std::string& file);

std::string describe(const Token& t);

}  // namespace tierspec
