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

#include "tierspec/ast.hpp"

#include <algorithm>
#include <sstream>

namespace tierspec {

bool same_decl(const VarDecl& a, const VarDecl& b) {
  return a.name == b.name && a.sort == b.sort;
}

TermPtr make_ident(std::string name, SourceSpan span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Ident;
  t->name = std::move(name);
  t->span = std::move(span);
  return t;
}

TermPtr make_apply(std::string op, std::vector<TermPtr> args, SourceSpan span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Apply;
  t->name = std::move(op);
  t->args = std::move(args);
  t->span = std::move(span);
  return t;
}

TermPtr make_const(Value v, SourceSpan span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Const;
  t->value = std::move(v);
  t->span = std::move(span);
  return t;
}

TermPtr make_tuple(std::vector<TermPtr> fields, std::string annotation, SourceSpan span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Tuple;
  t->args = std::move(fields);
  t->annotation = std::move(annotation);
  t->span = std::move(span);
  return t;
}

TermPtr make_project(TermPtr inner, std::string field, SourceSpan span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Project;
  t->name = std::move(field);
  t->args = {std::move(inner)};
  t->span = std::move(span);
  return t;
}

TermPtr make_quantifier(std::string word, std::vector<VarDecl> binders, TermPtr body,
                        SourceSpan span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Quantifier;
  t->name = std::move(word);
  t->binders = std::move(binders);
  t->args = {std::move(body)};
  t->span = std::move(span);
  return t;
}

TermPtr make_state_value(TermPtr inner, StateRef ref, std::string token, SourceSpan span) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::StateValue;
  t->state_ref = ref;
  t->name = std::move(token);
  t->args = {std::move(inner)};
  t->span = std::move(span);
  return t;
}

bool same_term(const TermPtr& a, const TermPtr& b) {
  if (!a || !b) return !a && !b;
  return same_term(*a, *b);
}

bool same_term(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size())
    return false;
  if (a.kind == TermKind::Const && !(a.value == b.value)) return false;
  if (a.kind == TermKind::Tuple && a.annotation != b.annotation) return false;
  if (a.kind == TermKind::StateValue && a.state_ref != b.state_ref) return false;
  if (a.binders.size() != b.binders.size()) return false;
  for (std::size_t i = 0; i < a.binders.size(); ++i)
    if (!same_decl(a.binders[i], b.binders[i])) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_term(a.args[i], b.args[i])) return false;
  return true;
}

int infix_precedence(const std::string& op) {
  static const std::pair<const char*, int> table[] = {
      {"__<=>__", 1}, {"__=>__", 2},    {"__\\/__", 3},   {"__/\\__", 4},
      {"__=__", 5},   {"__~=__", 5},    {"__<__", 6},     {"__<=__", 6},
      {"__>__", 6},   {"__>=__", 6},    {"__in__", 6},    {"__notin__", 6},
      {"__+__", 7},   {"__-__", 7},     {"__*__", 8},     {"__div__", 8},
      {"__mod__", 8}, {"__!__", 9},
  };
  for (const auto& [name, prec] : table)
    if (op == name) return prec;
  return 0;
}

bool is_prefix_op(const std::string& op) { return op == "~__" || op == "-__"; }

namespace {

constexpr int kPrefixLevel = 10;
constexpr int kPostfixLevel = 11;
constexpr int kAtomLevel = 12;

std::string infix_symbol(const std::string& op) { return op.substr(2, op.size() - 4); }

bool left_assoc(int level) { return level == 3 || level == 4 || level == 7 || level == 8; }

int level_of(const Term& t) {
  switch (t.kind) {
    case TermKind::Apply:
      if (t.args.size() == 2 && infix_precedence(t.name) > 0) return infix_precedence(t.name);
      if (t.args.size() == 1 && is_prefix_op(t.name)) return kPrefixLevel;
      if (t.name == "if__then__else__") return 0;
      return kAtomLevel;
    case TermKind::Project:
    case TermKind::StateValue:
      return kPostfixLevel;
    case TermKind::Const:
      if (t.value.is(Value::Kind::Int) && t.value.as_int() < 0) return kPrefixLevel;
      return kAtomLevel;
    default:
      return kAtomLevel;
  }
}

void render(const Term& t, std::ostream& os);

void render_child(const Term& t, bool parens, std::ostream& os) {
  if (parens) os << '(';
  render(t, os);
  if (parens) os << ')';
}

void render_list(const std::vector<TermPtr>& xs, std::ostream& os) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) os << ", ";
    render(*xs[i], os);
  }
}

void render_binders(const std::vector<VarDecl>& vs, std::ostream& os) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i > 0) os << ", ";
    os << vs[i].name << ": " << vs[i].sort;
  }
}

void render(const Term& t, std::ostream& os) {
  switch (t.kind) {
    case TermKind::Ident:
      os << t.name;
      return;
    case TermKind::Const:
      os << t.value.str();
      return;
    case TermKind::Tuple:
      os << '[';
      render_list(t.args, os);
      os << ']';
      if (!t.annotation.empty()) os << ':' << t.annotation;
      return;
    case TermKind::Project:
      render_child(*t.args[0], level_of(*t.args[0]) < kPostfixLevel, os);
      os << '.' << t.name;
      return;
    case TermKind::StateValue:
      render_child(*t.args[0], level_of(*t.args[0]) < kPostfixLevel, os);
      if (t.state_ref == StateRef::Pre)
        os << '^';
      else if (t.state_ref == StateRef::Post)
        os << '\'';
      else
        os << '\\' << t.name;
      return;
    case TermKind::Quantifier:
      os << t.name << ' ';
      render_binders(t.binders, os);
      os << " (";
      render(*t.args[0], os);
      os << ')';
      return;
    case TermKind::Apply:
      break;
  }
  const int level = level_of(t);
  if (t.name == "if__then__else__" && t.args.size() == 3) {
    os << "if ";
    render(*t.args[0], os);
    os << " then ";
    render(*t.args[1], os);
    os << " else ";
    render(*t.args[2], os);
    return;
  }
  if (t.name == "|__|" && t.args.size() == 1) {
    os << '|';
    render(*t.args[0], os);
    os << '|';
    return;
  }
  if (t.name == "{}" && t.args.empty()) {
    os << "{}";
    return;
  }
  if (level == kPrefixLevel) {
    os << t.name.substr(0, t.name.size() - 2);
    render_child(*t.args[0], level_of(*t.args[0]) < kPrefixLevel, os);
    return;
  }
  if (level > 0 && level < kPrefixLevel) {
    const int l = level_of(*t.args[0]);
    const int r = level_of(*t.args[1]);
    const bool lp = left_assoc(level) ? l < level : l <= level;
    const bool rp = (level == 2) ? r < level : r <= level;
    render_child(*t.args[0], lp, os);
    const std::string sym = infix_symbol(t.name);
    os << ' ' << sym << ' ';
    render_child(*t.args[1], rp, os);
    return;
  }
  os << t.name << '(';
  render_list(t.args, os);
  os << ')';
}

}  // namespace

std::string render_term(const Term& t) {
  std::ostringstream os;
  render(t, os);
  return os.str();
}

namespace {

void collect(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (t.kind) {
    case TermKind::Ident:
      if (std::find(bound.begin(), bound.end(), t.name) == bound.end()) out.push_back(t.name);
      return;
    case TermKind::Apply:
      out.push_back(t.name);
      break;
    case TermKind::Quantifier: {
      const std::size_t mark = bound.size();
      for (const auto& b : t.binders) bound.push_back(b.name);
      collect(*t.args[0], bound, out);
      bound.resize(mark);
      return;
    }
    default:
      break;
  }
  for (const auto& a : t.args) collect(*a, bound, out);
}

TermPtr subst(const TermPtr& t, const std::vector<std::pair<std::string, TermPtr>>& s,
              std::vector<std::string>& bound) {
  if (t->kind == TermKind::Ident && t->op < 0) {
    if (std::find(bound.begin(), bound.end(), t->name) != bound.end()) return t;
    for (const auto& [name, repl] : s)
      if (name == t->name) return repl;
    return t;
  }
  if (t->args.empty()) return t;
  const std::size_t mark = bound.size();
  if (t->kind == TermKind::Quantifier)
    for (const auto& b : t->binders) bound.push_back(b.name);
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    args.push_back(subst(a, s, bound));
    changed = changed || args.back() != a;
  }
  bound.resize(mark);
  if (!changed) return t;
  auto copy = std::make_shared<Term>(*t);
  copy->args = std::move(args);
  return copy;
}

}  // namespace

void collect_identifiers(const Term& t, std::vector<std::string>& out) {
  std::vector<std::string> bound;
  collect(t, bound, out);
}

TermPtr substitute(const TermPtr& t, const std::vector<std::pair<std::string, TermPtr>>& s) {
  if (!t) return t;
  std::vector<std::string> bound;
  return subst(t, s, bound);
}

// ---------------------------------------------------------------------------

bool same_action(const Action& a, const Action& b) {
  if (a.kind != b.kind || a.method != b.method || a.var != b.var ||
      a.var_sort != b.var_sort || a.distributed != b.distributed ||
      a.args.size() != b.args.size() || a.children.size() != b.children.size())
    return false;
  if (!same_term(a.receiver, b.receiver) || !same_term(a.term, b.term)) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_term(a.args[i], b.args[i])) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_action(*a.children[i], *b.children[i])) return false;
  return true;
}

namespace {

int action_level(const Action& a) {
  switch (a.kind) {
    case ActionKind::Seq:
      return a.distributed ? 0 : 1;
    case ActionKind::Choice:
      return a.distributed ? 0 : 2;
    case ActionKind::Indep:
      return a.distributed ? 0 : 3;
    case ActionKind::Invoke:
      return 4;
    default:
      return 0;
  }
}

void render_action(const Action& a, std::ostream& os);

void render_action_child(const Action& a, bool parens, std::ostream& os) {
  if (parens) os << '(';
  render_action(a, os);
  if (parens) os << ')';
}

void render_action(const Action& a, std::ostream& os) {
  switch (a.kind) {
    case ActionKind::Invoke:
      if (a.receiver) {
        const Term& r = *a.receiver;
        const bool simple = r.kind == TermKind::Ident ||
                            (r.kind == TermKind::Apply && infix_precedence(r.name) == 0 &&
                             !is_prefix_op(r.name));
        if (!simple) os << '(';
        os << render_term(r);
        if (!simple) os << ')';
        os << '.';
      }
      os << a.method << '(';
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i > 0) os << ", ";
        os << render_term(*a.args[i]);
      }
      os << ')';
      return;
    case ActionKind::Seq:
    case ActionKind::Choice:
    case ActionKind::Indep: {
      const char* sym = a.kind == ActionKind::Seq ? ";" : a.kind == ActionKind::Choice ? " []" : " /\\";
      if (a.distributed) {
        const bool indep = a.kind == ActionKind::Indep;
        os << (indep ? "|_ " : "[_ ") << a.var << " in " << render_term(*a.term)
           << (indep ? " _| " : " _] ");
        render_action(*a.children[0], os);
        return;
      }
      const int level = action_level(a);
      render_action_child(*a.children[0], action_level(*a.children[0]) < level, os);
      os << sym << ' ';
      render_action_child(*a.children[1], action_level(*a.children[1]) <= level, os);
      return;
    }
    case ActionKind::Let:
      os << "let " << a.var << ": " << a.var_sort << " = ";
      render_action_child(*a.children[0], action_level(*a.children[0]) == 0, os);
      os << " in ";
      render_action(*a.children[1], os);
      return;
    case ActionKind::If:
      os << "if " << render_term(*a.term) << " then ";
      render_action(*a.children[0], os);
      return;
    case ActionKind::While:
      os << "while " << render_term(*a.term) << " do ";
      render_action(*a.children[0], os);
      return;
  }
}

}  // namespace

std::string render_action(const Action& a) {
  std::ostringstream os;
  render_action(a, os);
  return os.str();
}

std::string to_string(UnitKind k) {
  switch (k) {
    case UnitKind::Trait:
      return "trait";
    case UnitKind::Role:
      return "role";
    case UnitKind::Interaction:
      return "interaction";
  }
  return "?";
}

namespace {

bool same_strings(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return a == b;
}

bool same_groups(const std::vector<EquationGroup>& a, const std::vector<EquationGroup>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].vars.size() != b[i].vars.size() ||
        a[i].equations.size() != b[i].equations.size())
      return false;
    for (std::size_t j = 0; j < a[i].vars.size(); ++j)
      if (!same_decl(a[i].vars[j], b[i].vars[j])) return false;
    for (std::size_t j = 0; j < a[i].equations.size(); ++j)
      if (!same_term(a[i].equations[j].lhs, b[i].equations[j].lhs) ||
          !same_term(a[i].equations[j].rhs, b[i].equations[j].rhs))
        return false;
  }
  return true;
}

bool same_clauses(const std::vector<SortClause>& a, const std::vector<SortClause>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].sort != b[i].sort || a[i].ops != b[i].ops) return false;
  return true;
}

bool same_params(const std::vector<Param>& a, const std::vector<Param>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].name != b[i].name || a[i].sort != b[i].sort) return false;
  return true;
}

bool same_trait(const TraitAst& a, const TraitAst& b) {
  if (a.name != b.name || !same_strings(a.formals, b.formals)) return false;
  if (a.includes.size() != b.includes.size()) return false;
  for (std::size_t i = 0; i < a.includes.size(); ++i) {
    const auto& x = a.includes[i];
    const auto& y = b.includes[i];
    if (x.name != y.name || x.args.size() != y.args.size()) return false;
    for (std::size_t j = 0; j < x.args.size(); ++j)
      if (x.args[j].actual != y.args[j].actual || x.args[j].replaced != y.args[j].replaced)
        return false;
  }
  if (a.tuples.size() != b.tuples.size()) return false;
  for (std::size_t i = 0; i < a.tuples.size(); ++i) {
    if (a.tuples[i].sort != b.tuples[i].sort ||
        a.tuples[i].fields.size() != b.tuples[i].fields.size())
      return false;
    for (std::size_t j = 0; j < a.tuples[i].fields.size(); ++j)
      if (a.tuples[i].fields[j].name != b.tuples[i].fields[j].name ||
          a.tuples[i].fields[j].sort != b.tuples[i].fields[j].sort)
        return false;
  }
  if (a.ops.size() != b.ops.size()) return false;
  for (std::size_t i = 0; i < a.ops.size(); ++i)
    if (a.ops[i].name != b.ops[i].name || a.ops[i].domain != b.ops[i].domain ||
        a.ops[i].range != b.ops[i].range)
      return false;
  return same_clauses(a.partitions, b.partitions) && same_clauses(a.generators, b.generators) &&
         same_groups(a.asserts, b.asserts) && same_groups(a.implies, b.implies);
}

bool same_role(const RoleAst& a, const RoleAst& b) {
  if (a.name != b.name || a.uses != b.uses || a.methods.size() != b.methods.size()) return false;
  for (std::size_t i = 0; i < a.methods.size(); ++i) {
    const auto& x = a.methods[i];
    const auto& y = b.methods[i];
    if (x.name != y.name || x.return_sort != y.return_sort || !same_params(x.params, y.params) ||
        !same_term(x.requires_clause, y.requires_clause) || x.has_modifies != y.has_modifies ||
        x.modifies.size() != y.modifies.size() ||
        !same_term(x.ensures_clause, y.ensures_clause) || x.constructs != y.constructs ||
        x.constructs_keyword != y.constructs_keyword)
      return false;
    for (std::size_t j = 0; j < x.modifies.size(); ++j)
      if (!same_term(x.modifies[j], y.modifies[j])) return false;
  }
  return true;
}

bool same_interaction(const InteractionAst& a, const InteractionAst& b) {
  if (a.name != b.name || a.classes.size() != b.classes.size()) return false;
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    const auto& x = a.classes[i];
    const auto& y = b.classes[i];
    if (x.name != y.name || x.methods.size() != y.methods.size()) return false;
    for (std::size_t j = 0; j < x.methods.size(); ++j) {
      const auto& m = x.methods[j];
      const auto& n = y.methods[j];
      if (m.name != n.name || !same_params(m.params, n.params) ||
          !same_action(*m.body, *n.body))
        return false;
    }
  }
  return true;
}

}  // namespace

bool same_unit(const SourceUnit& a, const SourceUnit& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  switch (a.kind) {
    case UnitKind::Trait:
      return same_trait(a.trait(), b.trait());
    case UnitKind::Role:
      return same_role(a.role(), b.role());
    case UnitKind::Interaction:
      return same_interaction(a.interaction(), b.interaction());
  }
  return false;
}

}  // namespace tierspec
