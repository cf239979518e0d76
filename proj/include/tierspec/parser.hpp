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

#include "tierspec/ast.hpp"
#include "tierspec/lexer.hpp"

namespace tierspec {

SourceUnit parse_trait(std::string_view text, const std::string& file = {});
SourceUnit parse_role_spec(std::string_view text, const std::string& file = {});
SourceUnit parse_interaction(std::string_view text, const std::string& file = {});

/// Dispatches on the file extension (`.trait`, `.role`, `.inter`) and falls
/// back to the unit header.
SourceUnit parse_unit(std::string_view text, const std::string& file = {});

TermPtr parse_term(std::string_view text, const std::string& file = {});
ActionPtr parse_action(std::string_view text, const std::string& file = {});

/// Emits concrete syntax that parses back to the same AST modulo spans.
std::string render(const SourceUnit& unit);
std::string render_op_name(const std::string& name);

/// Recursive-descent parser over the token stream. Exposed so the scenario
/// reader can reuse the term and action grammar.
class Parser {
 public:
  Parser(std::string_view text, std::string file);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool at_symbol(std::string_view s, std::size_t ahead = 0) const;
  bool at_keyword(std::string_view s, std::size_t ahead = 0) const;
  bool accept_symbol(std::string_view s);
  bool accept_keyword(std::string_view s);
  Token expect_symbol(std::string_view s);
  void expect_keyword(std::string_view s);
  Token expect_ident(const char* what = "identifier");
  std::int64_t expect_int();
  [[noreturn]] void fail(std::vector<std::string> expected) const;

  SourceSpan span_at(const Token& t) const;
  /// Span from `start` through the last consumed token.
  SourceSpan span_from(const Token& start) const;
  const std::string& file() const { return file_; }

  std::string sort();
  TermPtr term();
  /// Term at the level just above `/\`, used for frame lists.
  TermPtr frame_item();
  ActionPtr action();
  std::vector<Param> params();

  TraitAst trait();
  RoleAst role();
  InteractionAst interaction();

 private:
  TermPtr binary(int level);
  TermPtr prefix();
  TermPtr postfix();
  TermPtr primary();
  std::vector<TermPtr> term_list(std::string_view close);
  std::vector<VarDecl> var_decls();

  ActionPtr action_seq();
  ActionPtr action_choice();
  ActionPtr action_indep();
  ActionPtr action_unit();
  ActionPtr invocation();

  std::size_t sort_lookahead(std::size_t ahead) const;
  bool at_section_start() const;
  std::string op_name();
  void op_decls(TraitAst& t);
  void equation_section(std::vector<EquationGroup>& groups, TraitAst* clauses);
  TraitRef trait_ref();
  MethodSpecAst method_spec();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string file_;
};

}  // namespace tierspec
