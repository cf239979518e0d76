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

#include "tierspec/contracts.hpp"

#include <algorithm>
#include <set>

#include "tierspec/checker.hpp"

namespace tierspec {

std::string Category::label() const {
  if (non_canonical) return "non-canonical";
  if (e) return "O-E";
  if (o) return "O";
  if (v) return "V";
  return "-";
}

const MethodContract* BoundRole::find(const std::string& method) const {
  for (const auto& m : methods)
    if (m.name == method) return &m;
  return nullptr;
}

namespace {

bool mentions(const Term& t, const std::string& name) {
  std::vector<std::string> ids;
  collect_identifiers(t, ids);
  return std::find(ids.begin(), ids.end(), name) != ids.end();
}

bool is_self(const TermPtr& t) { return t && t->kind == TermKind::Ident && t->name == "self"; }

Native native_of(const Term& t, const FlatTheory& th) {
  if (t.kind != TermKind::Apply || t.op < 0 || t.builtin != Builtin::None) return Native::None;
  return th.op(t.op).native;
}

void conjuncts(const TermPtr& t, const FlatTheory& th, std::vector<TermPtr>& out) {
  if (native_of(*t, th) == Native::And) {
    conjuncts(t->args[0], th, out);
    conjuncts(t->args[1], th, out);
    return;
  }
  out.push_back(t);
}

// Reads one ensures conjunct as an update of the post-state, if it has one
// of the executable shapes.
std::optional<ConstructiveStep> step_for(const TermPtr& c, const FlatTheory& th) {
  if (c->builtin == Builtin::Eq) {
    const TermPtr& lhs = c->args[0];
    const TermPtr& rhs = c->args[1];
    if (lhs->kind == TermKind::StateValue && lhs->state_ref == StateRef::Post)
      return ConstructiveStep{StepKind::SetValue, lhs->args[0], rhs};
    if (lhs->kind == TermKind::Ident && lhs->name == "result")
      return ConstructiveStep{StepKind::Result, nullptr, rhs};
    if (native_of(*lhs, th) == Native::LinkOwner)
      return ConstructiveStep{StepKind::SetOwner, lhs->args[0], rhs};
    return std::nullopt;
  }
  const Native n = native_of(*c, th);
  if ((n == Native::SetIn || n == Native::SetNotIn) &&
      native_of(*c->args[1], th) == Native::LinkMembers)
    return ConstructiveStep{n == Native::SetIn ? StepKind::AddMember : StepKind::RemoveMember,
                            c->args[1]->args[0], c->args[0]};
  return std::nullopt;
}

}  // namespace

BoundRole bind_role(const SourceUnit& unit, TheoryPtr theory, Diagnostics* lint) {
  const RoleAst& ast = unit.role();
  const FlatTheory& th = *theory;
  BoundRole role;
  role.name = ast.name;
  role.uses = ast.uses;
  role.self_sort = ast.name;
  role.theory = theory;
  role.span = ast.span;
  if (!th.is_object_sort(ast.name))
    throw SpecError(ast.uses_span, "role '" + ast.name + "': trait " + ast.uses +
                                       " declares no object sort " + ast.name);

  std::set<std::string> seen;
  for (const MethodSpecAst& m : ast.methods) {
    if (!seen.insert(m.name).second)
      throw SpecError(m.span, "method '" + m.name + "' is specified twice");
    MethodContract c;
    c.role = ast.name;
    c.name = m.name;
    c.return_sort = m.return_sort;
    c.has_modifies = m.has_modifies;
    c.constructs = m.constructs;
    c.span = m.span;

    SortContext ctx;
    ctx.lint = lint;
    ctx.state_tokens = true;
    ctx.bind("self", role.self_sort);
    for (const Param& p : m.params) {
      if (p.sort.empty())
        throw SpecError(p.span, "parameter '" + p.name + "' of " + ast.name + "." + m.name +
                                    " needs a sort");
      if (!th.has_sort(p.sort))
        throw SpecError(p.span, "unknown sort '" + p.sort + "'");
      ctx.bind(p.name, p.sort);
      c.params.push_back(p);
    }
    if (m.return_sort && !th.has_sort(*m.return_sort))
      throw SpecError(m.span, "unknown sort '" + *m.return_sort + "'");

    if (m.constructs) {
      if (!c.is_constructor() || m.return_sort)
        throw SpecError(m.span, "'" + m.constructs_keyword + " self' on method '" + m.name +
                                    "', which is not a constructor of " + ast.name);
      if (lint && m.constructs_keyword != "constructs")
        lint->warning(m.span, "'" + m.constructs_keyword + "' read as 'constructs'");
    } else if (c.is_constructor() && lint) {
      lint->warning(m.span, "constructor " + m.name + " has no constructs clause");
    }

    if (m.requires_clause) c.requires_clause = check_formula(m.requires_clause, th, ctx);

    for (const TermPtr& f : m.modifies) {
      FrameItem item;
      item.span = f->span;
      if (f->kind == TermKind::Apply && f->name == "containedObjects" &&
          th.lookup("containedObjects").empty()) {
        if (f->args.size() != 2)
          throw SpecError(f->span, "containedObjects takes a set and a state");
        item.kind = FrameKind::Contained;
        item.term = check_term(f->args[0], th, ctx);
        const auto elem = th.element_sort(item.term->sort);
        if (!elem || !th.is_object_sort(*elem))
          throw SpecError(f->span, "containedObjects needs a set of objects, not " +
                                       item.term->sort);
        item.state = check_term(f->args[1], th, ctx, "State");
      } else {
        item.term = check_term(f, th, ctx);
        if (th.is_object_sort(item.term->sort)) {
          item.kind = FrameKind::Object;
        } else if (item.term->kind == TermKind::Apply && !item.term->args.empty() &&
                   th.is_object_sort(item.term->args[0]->sort)) {
          item.kind = FrameKind::Attribute;
        } else {
          throw SpecError(f->span, "modifies: '" + render_term(f) +
                                       "' denotes neither an object nor an object attribute");
        }
      }
      c.frame.push_back(std::move(item));
    }

    if (mentions(*m.ensures_clause, "result") && !m.return_sort)
      throw SpecError(m.ensures_clause->span,
                      "'result' used in method '" + m.name + "', which returns no value");
    if (m.return_sort) ctx.bind("result", *m.return_sort);
    c.ensures_clause = check_formula(m.ensures_clause, th, ctx);

    std::vector<TermPtr> parts;
    conjuncts(c.ensures_clause, th, parts);
    for (const TermPtr& p : parts) {
      if (auto s = step_for(p, th)) {
        c.steps.push_back(*s);
      } else if (c.non_constructive.empty()) {
        c.non_constructive = "'" + render_term(p) + "' has no executable reading";
      }
    }
    role.methods.push_back(std::move(c));
  }
  return role;
}

Category categorize(const MethodContract& c, const FlatTheory& theory) {
  Category cat;
  bool frame_self = false;
  bool frame_other = false;
  for (const FrameItem& f : c.frame) {
    switch (f.kind) {
      case FrameKind::Object:
        (is_self(f.term) ? frame_self : frame_other) = true;
        break;
      case FrameKind::Attribute:
        (is_self(f.term->args[0]) ? frame_self : frame_other) = true;
        break;
      case FrameKind::Contained:
        frame_other = true;
        break;
    }
  }
  bool object_param = false;
  for (const Param& p : c.params)
    if (theory.is_object_sort(p.sort) && mentions(*c.ensures_clause, p.name))
      object_param = true;
  cat.o = frame_self || c.constructs;
  cat.e = frame_other || (c.constructs && object_param);
  if (cat.e) cat.o = true;
  cat.v = c.return_sort.has_value() && c.frame.empty() && !c.constructs;
  cat.non_canonical = c.return_sort.has_value() && cat.o;
  return cat;
}

bool eval_clause(const TermPtr& clause, const FlatTheory& theory, const Store& pre,
                 const Store& post, const Bindings& bindings) {
  if (!clause) return true;
  EvalContext ctx;
  ctx.pre = &pre;
  ctx.post = &post;
  ctx.current = &post;
  return eval_guard(clause, theory, bindings, ctx);
}

std::string FrameVerdict::str() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

FrameVerdict check_frame(const MethodContract& c, const FlatTheory& theory, const Store& pre,
                         const Store& post, const Bindings& bindings) {
  EvalContext ctx;
  ctx.pre = &pre;
  ctx.post = &post;
  ctx.current = &pre;
  Evaluator ev(theory, ctx);

  std::set<ObjectId> values;  // objects whose value may change
  std::set<ObjectId> links;   // objects whose attachments may change
  auto object_of = [&](const TermPtr& t) {
    Value v = ev.eval(t, bindings);
    if (!v.is(Value::Kind::Object))
      throw EvalError(EvalError::Kind::Domain, t->span,
                      "frame item '" + render_term(t) + "' does not evaluate to an object");
    return v.object_id();
  };
  for (const FrameItem& f : c.frame) {
    switch (f.kind) {
      case FrameKind::Object: {
        const ObjectId id = object_of(f.term);
        values.insert(id);
        links.insert(id);
        break;
      }
      case FrameKind::Attribute:
        links.insert(object_of(f.term->args[0]));
        break;
      case FrameKind::Contained: {
        Value st = ev.eval(f.state, bindings);
        EvalContext at = ctx;
        at.current = st.text() == "post" ? &post : &pre;
        Evaluator in_state(theory, at);
        Value set = in_state.eval(f.term, bindings);
        for (const Value& m : set.items()) {
          values.insert(m.object_id());
          links.insert(m.object_id());
        }
        break;
      }
    }
  }

  const ObjectNamer name = post.namer();
  FrameVerdict verdict;
  for (ObjectId id : pre.objects()) {
    const Value* before = pre.value(id);
    const Value* after = post.value(id);
    if (!after) {
      verdict.violations.push_back({id, name(id) + " was destroyed"});
      continue;
    }
    if (*before != *after && !values.count(id))
      verdict.violations.push_back({id, "value of " + name(id) + " changed from " +
                                            before->str(name) + " to " + after->str(name) +
                                            " outside the frame of " + c.role + "." + c.name});
  }

  std::set<ObjectId> members;
  for (const auto& [m, o] : pre.links()) members.insert(m);
  for (const auto& [m, o] : post.links()) members.insert(m);
  for (ObjectId m : members) {
    const auto before = pre.owner(m);
    const auto after = post.owner(m);
    if (before == after || !pre.contains(m)) continue;
    std::vector<ObjectId> involved{m};
    if (before) involved.push_back(*before);
    if (after) involved.push_back(*after);
    const bool covered = std::any_of(involved.begin(), involved.end(), [&](ObjectId o) {
      return links.count(o) > 0 || !pre.contains(o);
    });
    if (!covered)
      verdict.violations.push_back(
          {m, "attachment of " + name(m) + " changed from " +
                  (before ? name(*before) : std::string("none")) + " to " +
                  (after ? name(*after) : std::string("none")) + " outside the frame of " +
                  c.role + "." + c.name});
  }
  return verdict;
}

}  // namespace tierspec
