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

#include "tierspec/parser.hpp"

#include <algorithm>
#include <set>

namespace tierspec {

namespace {

const std::set<std::string_view>& reserved_words() {
  static const std::set<std::string_view> words = {
      "then",       "else",     "do",       "in",       "notin",     "div",     "mod",
      "forall",     "exists",   "if",       "let",      "while",     "requires", "modifies",
      "ensures",    "constructs", "contructs", "includes", "introduces", "asserts", "implies",
      "trait",      "partitioned", "generated", "by",     "tuple",     "of",      "for",
      "uses",       "class",    "method",
  };
  return words;
}

bool is_state_token(std::string_view s) { return s == "pre" || s == "post" || s == "any"; }

std::string extension_of(const std::string& file) {
  const auto dot = file.find_last_of('.');
  if (dot == std::string::npos) return {};
  return file.substr(dot);
}

}  // namespace

Parser::Parser(std::string_view text, std::string file)
    : tokens_(tokenize(text, file)), file_(std::move(file)) {}

const Token& Parser::peek(std::size_t ahead) const {
  const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[i];
}

Token Parser::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool Parser::at_symbol(std::string_view s, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Symbol && t.text == s;
}

bool Parser::at_keyword(std::string_view s, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Ident && t.text == s;
}

bool Parser::accept_symbol(std::string_view s) {
  if (!at_symbol(s)) return false;
  next();
  return true;
}

bool Parser::accept_keyword(std::string_view s) {
  if (!at_keyword(s)) return false;
  next();
  return true;
}

Token Parser::expect_symbol(std::string_view s) {
  if (!at_symbol(s)) fail({"'" + std::string(s) + "'"});
  return next();
}

void Parser::expect_keyword(std::string_view s) {
  if (!at_keyword(s)) fail({"'" + std::string(s) + "'"});
  next();
}

Token Parser::expect_ident(const char* what) {
  if (peek().kind != TokenKind::Ident || reserved_words().count(peek().text)) fail({what});
  return next();
}

std::int64_t Parser::expect_int() {
  bool neg = accept_symbol("-");
  if (peek().kind != TokenKind::Int) fail({"integer"});
  const std::int64_t v = std::stoll(next().text);
  return neg ? -v : v;
}

void Parser::fail(std::vector<std::string> expected) const {
  throw ParseError(span_at(peek()), describe(peek()), std::move(expected));
}

SourceSpan Parser::span_at(const Token& t) const {
  return {file_, t.line, t.column, t.end_line, t.end_column};
}

SourceSpan Parser::span_from(const Token& start) const {
  const Token& last = tokens_[pos_ > 0 ? pos_ - 1 : 0];
  return {file_, start.line, start.column, last.end_line, last.end_column};
}

// ---------------------------------------------------------------------------
// Sorts and terms
// ---------------------------------------------------------------------------

std::string Parser::sort() {
  std::string s = expect_ident("sort").text;
  if (accept_symbol("[")) {
    s += '[';
    s += sort();
    while (accept_symbol(",")) {
      s += ',';
      s += sort();
    }
    expect_symbol("]");
    s += ']';
  }
  return s;
}

std::size_t Parser::sort_lookahead(std::size_t ahead) const {
  if (peek(ahead).kind != TokenKind::Ident || reserved_words().count(peek(ahead).text)) return 0;
  std::size_t n = 1;
  if (at_symbol("[", ahead + n)) {
    int depth = 0;
    do {
      const Token& t = peek(ahead + n);
      if (t.kind == TokenKind::End) return 0;
      if (t.kind == TokenKind::Symbol && t.text == "[") ++depth;
      if (t.kind == TokenKind::Symbol && t.text == "]") --depth;
      ++n;
    } while (depth > 0);
  }
  return n;
}

TermPtr Parser::term() { return binary(1); }

TermPtr Parser::frame_item() { return binary(5); }

TermPtr Parser::binary(int level) {
  if (level > 9) return prefix();
  const Token start = peek();
  TermPtr left = binary(level + 1);
  auto op_here = [&]() -> std::string {
    const Token& t = peek();
    switch (level) {
      case 1:
        return at_symbol("<=>") ? "<=>" : "";
      case 2:
        return at_symbol("=>") ? "=>" : "";
      case 3:
        return at_symbol("\\/") ? "\\/" : "";
      case 4:
        return at_symbol("/\\") ? "/\\" : "";
      case 5:
        if (at_symbol("=") || at_symbol("~=")) return t.text;
        return "";
      case 6:
        if (at_symbol("<") || at_symbol("<=") || at_symbol(">") || at_symbol(">=")) return t.text;
        if (at_keyword("in") || at_symbol("\\in")) return "in";
        if (at_keyword("notin") || at_symbol("\\notin")) return "notin";
        return "";
      case 7:
        if (at_symbol("+") || at_symbol("-")) return t.text;
        return "";
      case 8:
        if (at_symbol("*") || at_keyword("div") || at_keyword("mod")) return t.text;
        return "";
      case 9:
        return at_symbol("!") ? "!" : "";
    }
    return "";
  };
  const bool left_assoc = level == 3 || level == 4 || level == 7 || level == 8;
  for (std::string op = op_here(); !op.empty(); op = op_here()) {
    next();
    TermPtr right = level == 2 ? binary(2) : binary(level + 1);
    left = make_apply("__" + op + "__", {left, right}, span_from(start));
    if (!left_assoc) break;
  }
  return left;
}

TermPtr Parser::prefix() {
  const Token start = peek();
  if (accept_symbol("~")) return make_apply("~__", {prefix()}, span_from(start));
  if (at_symbol("-")) {
    next();
    if (peek().kind == TokenKind::Int) {
      const Token n = next();
      return make_const(Value::integer(-std::stoll(n.text)), span_from(start));
    }
    return make_apply("-__", {prefix()}, span_from(start));
  }
  return postfix();
}

TermPtr Parser::postfix() {
  const Token start = peek();
  TermPtr t = primary();
  for (;;) {
    if (at_symbol(".") && peek(1).kind == TokenKind::Ident && !at_symbol("(", 2)) {
      next();
      t = make_project(t, next().text, span_from(start));
    } else if (accept_symbol("^")) {
      t = make_state_value(t, StateRef::Pre, {}, span_from(start));
    } else if (accept_symbol("'")) {
      t = make_state_value(t, StateRef::Post, {}, span_from(start));
    } else if (peek().kind == TokenKind::Symbol && peek().text.size() > 1 &&
               peek().text[0] == '\\' && is_state_token(peek().text.substr(1))) {
      const std::string token = next().text.substr(1);
      t = make_state_value(t, StateRef::At, token, span_from(start));
    } else {
      return t;
    }
  }
}

std::vector<TermPtr> Parser::term_list(std::string_view close) {
  std::vector<TermPtr> out;
  if (at_symbol(close)) return out;
  out.push_back(term());
  while (accept_symbol(",")) out.push_back(term());
  return out;
}

std::vector<VarDecl> Parser::var_decls() {
  std::vector<VarDecl> out;
  do {
    std::vector<Token> names{expect_ident("variable")};
    while (accept_symbol(",")) names.push_back(expect_ident("variable"));
    expect_symbol(":");
    const std::string s = sort();
    for (const auto& n : names) out.push_back({n.text, s, span_at(n)});
  } while (accept_symbol(","));
  return out;
}

TermPtr Parser::primary() {
  const Token start = peek();
  switch (start.kind) {
    case TokenKind::Int:
      next();
      return make_const(Value::integer(std::stoll(start.text)), span_at(start));
    case TokenKind::String:
      next();
      return make_const(Value::string(start.text), span_at(start));
    case TokenKind::End:
      fail({"term"});
    default:
      break;
  }
  if (accept_symbol("(")) {
    TermPtr t = term();
    expect_symbol(")");
    return t;
  }
  if (accept_symbol("[")) {
    auto fields = term_list("]");
    if (fields.empty()) fail({"term"});
    expect_symbol("]");
    std::string annotation;
    if (at_symbol(":") && sort_lookahead(1) > 0) {
      next();
      annotation = sort();
    }
    return make_tuple(std::move(fields), std::move(annotation), span_from(start));
  }
  if (accept_symbol("|")) {
    TermPtr inner = term();
    expect_symbol("|");
    return make_apply("|__|", {inner}, span_from(start));
  }
  if (accept_symbol("{")) {
    expect_symbol("}");
    return make_apply("{}", {}, span_from(start));
  }
  if (at_keyword("forall") || at_keyword("exists") || at_symbol("\\forall") ||
      at_symbol("\\exists")) {
    std::string word = next().text;
    if (word[0] == '\\') word = word.substr(1);
    auto binders = var_decls();
    expect_symbol("(");
    TermPtr body = term();
    expect_symbol(")");
    return make_quantifier(word, std::move(binders), body, span_from(start));
  }
  if (accept_keyword("if")) {
    TermPtr c = term();
    expect_keyword("then");
    TermPtr a = term();
    expect_keyword("else");
    TermPtr b = term();
    return make_apply("if__then__else__", {c, a, b}, span_from(start));
  }
  if (start.kind == TokenKind::Ident && !reserved_words().count(start.text)) {
    next();
    // An argument list must open on the identifier's line; otherwise `(`
    // starts the next equation.
    if (at_symbol("(") && peek().line == start.end_line) {
      next();
      auto args = term_list(")");
      expect_symbol(")");
      return make_apply(start.text, std::move(args), span_from(start));
    }
    return make_ident(start.text, span_at(start));
  }
  fail({"term"});
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

ActionPtr Parser::action() { return action_seq(); }

ActionPtr Parser::action_seq() {
  const Token start = peek();
  ActionPtr left = action_choice();
  while (accept_symbol(";")) {
    // A trailing `;` before a closing brace is tolerated.
    if (at_symbol("}") || at_symbol(")") || at_end()) break;
    auto a = std::make_shared<Action>();
    a->kind = ActionKind::Seq;
    a->children = {left, action_choice()};
    a->span = span_from(start);
    left = a;
  }
  return left;
}

ActionPtr Parser::action_choice() {
  const Token start = peek();
  ActionPtr left = action_indep();
  while (accept_symbol("[]")) {
    auto a = std::make_shared<Action>();
    a->kind = ActionKind::Choice;
    a->children = {left, action_indep()};
    a->span = span_from(start);
    left = a;
  }
  return left;
}

ActionPtr Parser::action_indep() {
  const Token start = peek();
  ActionPtr left = action_unit();
  while (accept_symbol("/\\")) {
    auto a = std::make_shared<Action>();
    a->kind = ActionKind::Indep;
    a->children = {left, action_unit()};
    a->span = span_from(start);
    left = a;
  }
  return left;
}

ActionPtr Parser::action_unit() {
  const Token start = peek();
  auto a = std::make_shared<Action>();
  if (accept_keyword("let")) {
    a->kind = ActionKind::Let;
    a->var = expect_ident("variable").text;
    expect_symbol(":");
    a->var_sort = sort();
    expect_symbol("=");
    ActionPtr value = action();
    expect_keyword("in");
    a->children = {value, action()};
  } else if (accept_keyword("if")) {
    a->kind = ActionKind::If;
    a->term = term();
    expect_keyword("then");
    a->children = {action()};
  } else if (accept_keyword("while")) {
    a->kind = ActionKind::While;
    a->term = term();
    expect_keyword("do");
    a->children = {action()};
  } else if (at_symbol("|_") || at_symbol("[_")) {
    const bool indep = next().text == "|_";
    a->kind = indep ? ActionKind::Indep : ActionKind::Choice;
    a->distributed = true;
    a->var = expect_ident("variable").text;
    expect_keyword("in");
    a->term = term();
    expect_symbol(indep ? "_|" : "_]");
    a->children = {action()};
  } else if (at_symbol("(")) {
    // `(e).m()` names a receiver term; anything else is a grouped action.
    const std::size_t mark = pos_;
    next();
    try {
      ActionPtr inner = action();
      expect_symbol(")");
      if (!at_symbol(".")) return inner;
    } catch (const ParseError&) {
    }
    pos_ = mark;
    return invocation();
  } else if (accept_symbol("{")) {
    ActionPtr inner = action();
    expect_symbol("}");
    return inner;
  } else {
    return invocation();
  }
  a->span = span_from(start);
  return a;
}

ActionPtr Parser::invocation() {
  const Token start = peek();
  if ((peek().kind != TokenKind::Ident || reserved_words().count(peek().text)) &&
      !at_symbol("("))
    fail({"action"});
  TermPtr head = postfix();
  auto a = std::make_shared<Action>();
  a->kind = ActionKind::Invoke;
  if (accept_symbol(".")) {
    a->receiver = head;
    a->method = expect_ident("method name").text;
    expect_symbol("(");
    a->args = term_list(")");
    expect_symbol(")");
  } else if (head->kind == TermKind::Apply && infix_precedence(head->name) == 0 &&
             !is_prefix_op(head->name) && head->name != "|__|" && head->name != "{}" &&
             head->name != "if__then__else__") {
    a->method = head->name;
    a->args = head->args;
  } else {
    throw ParseError(head->span, "term '" + render_term(*head) + "'",
                     {"method invocation 'e.m(...)' or 'm(...)'"});
  }
  a->span = span_from(start);
  return a;
}

std::vector<Param> Parser::params() {
  std::vector<Param> out;
  expect_symbol("(");
  if (!at_symbol(")")) {
    do {
      const Token n = expect_ident("parameter");
      Param p{n.text, {}, span_at(n)};
      if (accept_symbol(":")) p.sort = sort();
      out.push_back(std::move(p));
    } while (accept_symbol(","));
  }
  expect_symbol(")");
  return out;
}

// ---------------------------------------------------------------------------
// Traits
// ---------------------------------------------------------------------------

bool Parser::at_section_start() const {
  if (at_end()) return true;
  for (const char* kw : {"includes", "introduces", "asserts", "implies"})
    if (at_keyword(kw)) return true;
  const std::size_t n = sort_lookahead(0);
  return n > 0 && at_keyword("tuple", n);
}

TraitRef Parser::trait_ref() {
  const Token start = peek();
  TraitRef r;
  r.name = expect_ident("trait name").text;
  if (accept_symbol("(")) {
    do {
      TraitArg arg;
      if (peek().kind == TokenKind::Ident) {
        arg.actual = sort();
      } else {
        arg.actual = op_name();
      }
      if (accept_keyword("for")) {
        if (peek().kind == TokenKind::Ident)
          arg.replaced = sort();
        else
          arg.replaced = op_name();
      }
      r.args.push_back(std::move(arg));
    } while (accept_symbol(","));
    expect_symbol(")");
  }
  r.span = span_from(start);
  return r;
}

std::string Parser::op_name() {
  if (peek().kind == TokenKind::Ident && !reserved_words().count(peek().text) &&
      !at_symbol("__", 1))
    return next().text;
  std::string name;
  int parts = 0;
  while (!at_end() && !at_symbol(":") && !at_symbol(",") && !at_symbol(")")) {
    const Token t = next();
    if (t.kind == TokenKind::Symbol && t.text == "|_") {
      name += "|_";
    } else if (t.kind == TokenKind::Symbol && t.text == "_|") {
      name += "_|";
    } else {
      name += t.text;
    }
    ++parts;
  }
  if (parts == 0) fail({"operator name"});
  if (name == "|__|" || name == "|_ _|") name = "|__|";
  if (name == "__\\in__" || name == "__\\notin__") name = "__" + name.substr(3);
  return name;
}

void Parser::op_decls(TraitAst& t) {
  while (!at_section_start()) {
    const Token start = peek();
    std::vector<std::string> names{op_name()};
    while (accept_symbol(",")) names.push_back(op_name());
    expect_symbol(":");
    std::vector<std::string> domain;
    if (!at_symbol("->")) {
      domain.push_back(sort());
      while (accept_symbol(",")) domain.push_back(sort());
    }
    expect_symbol("->");
    const std::string range = sort();
    accept_symbol(";");
    const SourceSpan span = span_from(start);
    for (auto& n : names) {
      for (const auto& existing : t.ops)
        if (existing.name == n && existing.domain == domain && existing.range == range)
          throw SpecError(span, "duplicate declaration of operator '" + n +
                                    "' with identical signature (first at " +
                                    existing.span.str() + ")");
      t.ops.push_back({n, domain, range, span});
    }
  }
}

void Parser::equation_section(std::vector<EquationGroup>& groups, TraitAst* clauses) {
  groups.emplace_back();
  while (!at_section_start()) {
    if (accept_keyword("forall") || accept_symbol("\\forall")) {
      if (groups.back().vars.empty() && groups.back().equations.empty()) groups.pop_back();
      groups.emplace_back();
      groups.back().vars = var_decls();
      continue;
    }
    const std::size_t n = sort_lookahead(0);
    if (clauses && n > 0 && (at_keyword("partitioned", n) || at_keyword("generated", n))) {
      const Token start = peek();
      SortClause c;
      c.sort = sort();
      const bool partitioned = next().text == "partitioned";
      expect_keyword("by");
      c.ops.push_back(op_name());
      while (accept_symbol(",")) c.ops.push_back(op_name());
      accept_symbol(";");
      c.span = span_from(start);
      (partitioned ? clauses->partitions : clauses->generators).push_back(std::move(c));
      continue;
    }
    const Token start = peek();
    Equation eq;
    eq.lhs = term();
    if (accept_symbol("==")) eq.rhs = term();
    accept_symbol(";");
    eq.span = span_from(start);
    groups.back().equations.push_back(std::move(eq));
  }
  if (groups.back().vars.empty() && groups.back().equations.empty()) groups.pop_back();
}

TraitAst Parser::trait() {
  const Token start = peek();
  TraitAst t;
  t.name = expect_ident("trait name").text;
  if (accept_symbol("(")) {
    do {
      t.formals.push_back(sort());
    } while (accept_symbol(","));
    expect_symbol(")");
  }
  expect_symbol(":");
  expect_keyword("trait");
  while (!at_end()) {
    if (accept_keyword("includes")) {
      t.includes.push_back(trait_ref());
      while (accept_symbol(",")) t.includes.push_back(trait_ref());
      accept_symbol(";");
    } else if (accept_keyword("introduces")) {
      op_decls(t);
    } else if (accept_keyword("asserts")) {
      equation_section(t.asserts, &t);
    } else if (accept_keyword("implies")) {
      equation_section(t.implies, nullptr);
    } else if (const std::size_t n = sort_lookahead(0); n > 0 && at_keyword("tuple", n)) {
      const Token decl_start = peek();
      TupleDecl d;
      d.sort = sort();
      expect_keyword("tuple");
      expect_keyword("of");
      do {
        std::vector<std::string> names{expect_ident("field name").text};
        while (accept_symbol(",")) names.push_back(expect_ident("field name").text);
        expect_symbol(":");
        const std::string s = sort();
        for (auto& n : names) d.fields.push_back({n, s});
      } while (accept_symbol(","));
      accept_symbol(";");
      d.span = span_from(decl_start);
      t.tuples.push_back(std::move(d));
    } else {
      fail({"'includes'", "'introduces'", "'asserts'", "'implies'", "tuple declaration"});
    }
  }
  t.span = span_from(start);
  return t;
}

// ---------------------------------------------------------------------------
// Role specifications
// ---------------------------------------------------------------------------

MethodSpecAst Parser::method_spec() {
  const Token start = peek();
  MethodSpecAst m;
  const std::size_t n = sort_lookahead(0);
  if (n > 0 && peek(n).kind == TokenKind::Ident && at_symbol("(", n + 1))
    m.return_sort = sort();
  m.name = expect_ident("method name").text;
  m.params = params();
  expect_symbol("{");
  bool has_ensures = false;
  while (!accept_symbol("}")) {
    const Token kw = peek();
    if (accept_keyword("requires")) {
      m.requires_clause = term();
    } else if (accept_keyword("modifies")) {
      m.has_modifies = true;
      m.modifies.push_back(frame_item());
      while (accept_symbol(",") || accept_symbol("/\\")) m.modifies.push_back(frame_item());
    } else if (accept_keyword("ensures")) {
      m.ensures_clause = term();
      has_ensures = true;
    } else if (at_keyword("constructs") || at_keyword("contructs")) {
      m.constructs = true;
      m.constructs_keyword = next().text;
      expect_keyword("self");
    } else if (peek().kind == TokenKind::Ident) {
      throw ParseError(span_at(kw), "clause keyword '" + kw.text + "'",
                       {"'requires'", "'modifies'", "'ensures'", "'constructs'", "'}'"});
    } else {
      fail({"'requires'", "'modifies'", "'ensures'", "'constructs'", "'}'"});
    }
    accept_symbol(";");
  }
  m.span = span_from(start);
  if (!has_ensures)
    throw SpecError(m.span, "method '" + m.name + "' has no ensures clause");
  return m;
}

RoleAst Parser::role() {
  const Token start = peek();
  RoleAst r;
  r.name = expect_ident("role name").text;
  expect_symbol(":");
  expect_keyword("role");
  expect_keyword("specification");
  if (!at_keyword("uses"))
    throw SpecError(span_at(peek()), "role specification '" + r.name + "' has no uses clause");
  next();
  const Token uses = expect_ident("trait name");
  r.uses = uses.text;
  r.uses_span = span_at(uses);
  accept_symbol(";");
  while (!at_end()) r.methods.push_back(method_spec());
  r.span = span_from(start);
  return r;
}

// ---------------------------------------------------------------------------
// Interaction specifications
// ---------------------------------------------------------------------------

namespace {

void check_receivers(const Action& a, std::vector<std::string>& scope) {
  switch (a.kind) {
    case ActionKind::Invoke:
      if (a.receiver && a.receiver->kind == TermKind::Ident &&
          std::find(scope.begin(), scope.end(), a.receiver->name) == scope.end())
        throw SpecError(a.receiver->span,
                        "unbound instance variable '" + a.receiver->name + "'");
      return;
    case ActionKind::Let: {
      check_receivers(*a.children[0], scope);
      scope.push_back(a.var);
      check_receivers(*a.children[1], scope);
      scope.pop_back();
      return;
    }
    default:
      if (a.distributed) scope.push_back(a.var);
      for (const auto& c : a.children) check_receivers(*c, scope);
      if (a.distributed) scope.pop_back();
      return;
  }
}

}  // namespace

InteractionAst Parser::interaction() {
  const Token start = peek();
  InteractionAst s;
  if (peek().kind == TokenKind::Ident && at_symbol(":", 1)) {
    s.name = next().text;
    next();
    expect_keyword("interaction");
    accept_keyword("specification");
  }
  while (!at_end()) {
    const Token cstart = peek();
    expect_keyword("class");
    InteractionClass c;
    c.name = expect_ident("class name").text;
    expect_symbol("{");
    while (!accept_symbol("}")) {
      const Token mstart = peek();
      expect_keyword("method");
      InteractionMethod m;
      m.name = expect_ident("method name").text;
      m.params = params();
      expect_symbol("{");
      m.body = action();
      expect_symbol("}");
      m.span = span_from(mstart);
      std::vector<std::string> scope{"self"};
      for (const auto& p : m.params) scope.push_back(p.name);
      check_receivers(*m.body, scope);
      c.methods.push_back(std::move(m));
    }
    c.span = span_from(cstart);
    s.classes.push_back(std::move(c));
  }
  s.span = span_from(start);
  return s;
}

// ---------------------------------------------------------------------------

SourceUnit parse_trait(std::string_view text, const std::string& file) {
  Parser p(text, file);
  SourceUnit u;
  u.kind = UnitKind::Trait;
  u.file = file;
  TraitAst t = p.trait();
  u.name = t.name;
  u.body = std::move(t);
  return u;
}

SourceUnit parse_role_spec(std::string_view text, const std::string& file) {
  Parser p(text, file);
  SourceUnit u;
  u.kind = UnitKind::Role;
  u.file = file;
  RoleAst r = p.role();
  u.name = r.name;
  u.body = std::move(r);
  return u;
}

SourceUnit parse_interaction(std::string_view text, const std::string& file) {
  Parser p(text, file);
  SourceUnit u;
  u.kind = UnitKind::Interaction;
  u.file = file;
  InteractionAst s = p.interaction();
  if (s.name.empty() && !file.empty()) {
    const auto slash = file.find_last_of('/');
    std::string stem = file.substr(slash == std::string::npos ? 0 : slash + 1);
    s.name = stem.substr(0, stem.find('.'));
  }
  u.name = s.name;
  u.body = std::move(s);
  return u;
}

SourceUnit parse_unit(std::string_view text, const std::string& file) {
  const std::string ext = extension_of(file);
  if (ext == ".trait") return parse_trait(text, file);
  if (ext == ".role") return parse_role_spec(text, file);
  if (ext == ".inter") return parse_interaction(text, file);
  Parser p(text, file);
  if (p.at_keyword("class")) return parse_interaction(text, file);
  std::size_t i = 1;
  if (p.at_symbol("(", 1)) {
    while (!p.at_symbol(")", i) && p.peek(i).kind != TokenKind::End) ++i;
    ++i;
  }
  if (p.at_symbol(":", i)) {
    if (p.at_keyword("trait", i + 1)) return parse_trait(text, file);
    if (p.at_keyword("role", i + 1)) return parse_role_spec(text, file);
    if (p.at_keyword("interaction", i + 1)) return parse_interaction(text, file);
  }
  throw SpecError({file, 1, 1, 1, 1}, "cannot determine the kind of specification unit");
}

TermPtr parse_term(std::string_view text, const std::string& file) {
  Parser p(text, file);
  TermPtr t = p.term();
  if (!p.at_end()) p.fail({"end of term"});
  return t;
}

ActionPtr parse_action(std::string_view text, const std::string& file) {
  Parser p(text, file);
  ActionPtr a = p.action();
  if (!p.at_end()) p.fail({"end of action"});
  return a;
}

}  // namespace tierspec
