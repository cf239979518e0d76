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

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tierspec/diagnostics.hpp"
#include "tierspec/value.hpp"

namespace tierspec {

// ---------------------------------------------------------------------------
// Tier 1 terms. Shared by traits, role clauses, guards and yielders.
// ---------------------------------------------------------------------------

enum class TermKind { Ident, Apply, Const, Tuple, Project, Quantifier, StateValue };

/// How a StateValue node extracts an object's value: `x^`, `x'` or `x\st`.
enum class StateRef { Pre, Post, At };

/// Operators with polymorphic or non-declarative meaning, resolved by the
/// sort checker rather than looked up in a signature.
enum class Builtin { None, Eq, Neq, Ite, ArgValue };

struct VarDecl {
  std::string name;
  std::string sort;
  SourceSpan span;
};

bool same_decl(const VarDecl& a, const VarDecl& b);

struct Term {
  TermKind kind = TermKind::Ident;
  /// Identifier, operator name (mixfix names keep `__` placeholders, e.g.
  /// `__<=__`), projected field, quantifier word, or state token for `x\st`.
  std::string name;
  std::vector<TermPtr> args;
  std::vector<VarDecl> binders;
  Value value;
  std::string annotation;  // tuple literal `[..]:Sort`
  StateRef state_ref = StateRef::Pre;
  SourceSpan span;

  // Filled in by the sort checker; a checked tree is never mutated again.
  std::string sort;
  int op = -1;
  Builtin builtin = Builtin::None;
  bool checked = false;
};

TermPtr make_ident(std::string name, SourceSpan span = {});
TermPtr make_apply(std::string op, std::vector<TermPtr> args, SourceSpan span = {});
TermPtr make_const(Value v, SourceSpan span = {});
TermPtr make_tuple(std::vector<TermPtr> fields, std::string annotation = {},
                   SourceSpan span = {});
TermPtr make_project(TermPtr inner, std::string field, SourceSpan span = {});
TermPtr make_quantifier(std::string word, std::vector<VarDecl> binders, TermPtr body,
                        SourceSpan span = {});
TermPtr make_state_value(TermPtr inner, StateRef ref, std::string token = {},
                         SourceSpan span = {});

/// Structural equality ignoring spans and checker annotations.
bool same_term(const Term& a, const Term& b);
bool same_term(const TermPtr& a, const TermPtr& b);

/// Binding strength of an infix operator name such as `__+__`; 0 if the
/// name is not infix. Higher binds tighter.
int infix_precedence(const std::string& op);
bool is_prefix_op(const std::string& op);

std::string render_term(const Term& t);
inline std::string render_term(const TermPtr& t) { return t ? render_term(*t) : ""; }

/// Free identifiers of a term, i.e. names not bound by an enclosing
/// quantifier. Includes nullary operator names before checking.
void collect_identifiers(const Term& t, std::vector<std::string>& out);

/// Replace free identifiers by terms. Binders shadow.
TermPtr substitute(const TermPtr& t, const std::vector<std::pair<std::string, TermPtr>>& subst);

// ---------------------------------------------------------------------------
// Traits
// ---------------------------------------------------------------------------

/// One argument of an include: a positional actual, or `actual for formal`.
struct TraitArg {
  std::string actual;
  std::string replaced;  // non-empty for `actual for replaced`
};

struct TraitRef {
  std::string name;
  std::vector<TraitArg> args;
  SourceSpan span;
};

struct OpDecl {
  std::string name;
  std::vector<std::string> domain;
  std::string range;
  SourceSpan span;
};

struct TupleField {
  std::string name;
  std::string sort;
};

struct TupleDecl {
  std::string sort;
  std::vector<TupleField> fields;
  SourceSpan span;
};

/// `S partitioned by f, g` or `S generated by c, d`.
struct SortClause {
  std::string sort;
  std::vector<std::string> ops;
  SourceSpan span;
};

struct Equation {
  TermPtr lhs;
  TermPtr rhs;  // null for a plain Boolean assertion (`t` stands for `t == true`)
  SourceSpan span;
};

struct EquationGroup {
  std::vector<VarDecl> vars;  // from `forall`
  std::vector<Equation> equations;
};

struct TraitAst {
  std::string name;
  std::vector<std::string> formals;
  std::vector<TraitRef> includes;
  std::vector<TupleDecl> tuples;
  std::vector<OpDecl> ops;
  std::vector<SortClause> partitions;
  std::vector<SortClause> generators;
  std::vector<EquationGroup> asserts;
  std::vector<EquationGroup> implies;
  SourceSpan span;
};

// ---------------------------------------------------------------------------
// Role specifications
// ---------------------------------------------------------------------------

struct Param {
  std::string name;
  std::string sort;  // empty when written untyped
  SourceSpan span;
};

struct MethodSpecAst {
  std::string name;
  std::optional<std::string> return_sort;
  std::vector<Param> params;
  TermPtr requires_clause;
  bool has_modifies = false;
  std::vector<TermPtr> modifies;
  TermPtr ensures_clause;
  bool constructs = false;
  std::string constructs_keyword;  // "constructs" or the misspelled "contructs"
  SourceSpan span;
};

struct RoleAst {
  std::string name;
  std::string uses;
  SourceSpan uses_span;
  std::vector<MethodSpecAst> methods;
  SourceSpan span;
};

// ---------------------------------------------------------------------------
// Interaction specifications (action calculus)
// ---------------------------------------------------------------------------

enum class ActionKind { Invoke, Seq, Indep, Choice, Let, If, While };

struct Action;
using ActionPtr = std::shared_ptr<const Action>;

struct Action {
  ActionKind kind = ActionKind::Invoke;
  // Invoke: receiver (null for the implicit `self`), method and arguments.
  TermPtr receiver;
  std::string method;
  std::vector<TermPtr> args;
  // Seq/Indep/Choice: two children, or one child when distributed.
  // Let: value action then body. If/While: body.
  std::vector<ActionPtr> children;
  // Let binder, or the element variable of a distributed form.
  std::string var;
  std::string var_sort;
  // If/While guard, or the set a distributed form ranges over.
  TermPtr term;
  bool distributed = false;
  SourceSpan span;

  // Binder annotations.
  std::string receiver_sort;
  bool yielder = false;  // a Let value that is a tier-1 term, not an invocation
  bool bound = false;
};

struct InteractionMethod {
  std::string name;
  std::vector<Param> params;
  ActionPtr body;
  SourceSpan span;
};

struct InteractionClass {
  std::string name;
  std::vector<InteractionMethod> methods;
  SourceSpan span;
};

struct InteractionAst {
  std::string name;
  std::vector<InteractionClass> classes;
  SourceSpan span;
};

bool same_action(const Action& a, const Action& b);
std::string render_action(const Action& a);

// ---------------------------------------------------------------------------

enum class UnitKind { Trait, Role, Interaction };

std::string to_string(UnitKind k);

struct SourceUnit {
  UnitKind kind = UnitKind::Trait;
  std::string name;
  std::string file;
  std::variant<TraitAst, RoleAst, InteractionAst> body;

  const TraitAst& trait() const { return std::get<TraitAst>(body); }
  const RoleAst& role() const { return std::get<RoleAst>(body); }
  const InteractionAst& interaction() const { return std::get<InteractionAst>(body); }
};

/// AST equality modulo source spans.
bool same_unit(const SourceUnit& a, const SourceUnit& b);

}  // namespace tierspec
