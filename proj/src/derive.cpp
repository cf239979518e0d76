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

#include "tierspec/derive.hpp"

#include <sstream>

namespace tierspec {

namespace {

TermPtr conj(const TermPtr& a, const TermPtr& b) {
  if (!a) return b;
  if (!b) return a;
  return make_apply("__/\\__", {a, b});
}

TermPtr disj(const TermPtr& a, const TermPtr& b) {
  if (!a || !b) return nullptr;
  return make_apply("__\\/__", {a, b});
}

TermPtr implies(const TermPtr& a, const TermPtr& b) {
  if (!b) return nullptr;
  if (!a) return b;
  return make_apply("__=>__", {a, b});
}

std::string text(const TermPtr& t) { return t ? render_term(t) : "true"; }

DerivedNode derive(const Action& a, const MethodTable& table) {
  DerivedNode n;
  n.action = &a;
  switch (a.kind) {
    case ActionKind::Invoke: {
      n.rule = "invoke";
      const MethodContract* c = table.contract(a.receiver_sort, a.method);
      if (!table.signature(a.receiver_sort, a.method))
        throw SpecError(a.span, "no method '" + a.method + "' for " + a.receiver_sort);
      if (!c) break;
      std::vector<std::pair<std::string, TermPtr>> subst;
      if (a.receiver) subst.emplace_back("self", a.receiver);
      for (std::size_t i = 0; i < c->params.size() && i < a.args.size(); ++i)
        subst.emplace_back(c->params[i].name, a.args[i]);
      if (c->requires_clause) n.pre = substitute(c->requires_clause, subst);
      n.post = substitute(c->ensures_clause, subst);
      break;
    }
    case ActionKind::Seq: {
      n.rule = "seq";
      n.children = {derive(*a.children[0], table), derive(*a.children[1], table)};
      const auto& [a1, a2] = std::tie(n.children[0], n.children[1]);
      n.pre = a1.pre;
      n.post = conj(a1.post, a2.post);
      n.conditions = {"pre(a0) => " + text(a1.pre), text(a1.post) + " => " + text(a2.pre),
                      text(a2.post) + " => post(a0)"};
      break;
    }
    case ActionKind::Indep:
    case ActionKind::Choice: {
      const bool indep = a.kind == ActionKind::Indep;
      n.rule = indep ? "indep" : "choice";
      if (a.distributed) {
        n.children = {derive(*a.children[0], table)};
        const DerivedNode& c = n.children[0];
        const std::vector<VarDecl> binder{{a.var, a.var_sort, {}}};
        auto over = [&](const TermPtr& body) -> TermPtr {
          if (!body) return nullptr;
          const TermPtr member = make_apply("__in__", {make_ident(a.var), a.term});
          return indep ? make_quantifier("forall", binder, implies(member, body))
                       : make_quantifier("exists", binder, conj(member, body));
        };
        n.pre = over(c.pre);
        n.post = over(c.post);
        n.rule += " over " + a.var + " in " + render_term(a.term);
      } else {
        n.children = {derive(*a.children[0], table), derive(*a.children[1], table)};
        const auto& [a1, a2] = std::tie(n.children[0], n.children[1]);
        n.pre = indep ? conj(a1.pre, a2.pre) : disj(a1.pre, a2.pre);
        n.post = indep ? conj(a1.post, a2.post) : disj(a1.post, a2.post);
      }
      if (indep) {
        n.conditions = {"pre(a0) => pre of every component",
                        "posts of all components => post(a0)"};
      } else {
        n.conditions = {"(pre(a0) => pre(a_i)) => (post(a_i) => post(a0)) for some branch i"};
      }
      break;
    }
    case ActionKind::Let: {
      n.rule = "let " + a.var;
      if (a.yielder) {
        n.children = {derive(*a.children[1], table)};
        n.pre = n.children[0].pre;
        n.post = n.children[0].post;
      } else {
        n.children = {derive(*a.children[0], table), derive(*a.children[1], table)};
        n.pre = n.children[0].pre;
        n.post = conj(n.children[0].post, n.children[1].post);
      }
      break;
    }
    case ActionKind::If: {
      n.rule = "if";
      n.children = {derive(*a.children[0], table)};
      const DerivedNode& a1 = n.children[0];
      n.pre = implies(a.term, a1.pre);
      n.post = implies(a.term, a1.post);
      n.conditions = {"pre(a0) /\\ " + render_term(a.term) + " => " + text(a1.pre),
                      "pre(a0) /\\ ~(" + render_term(a.term) + ") => post(a0)"};
      break;
    }
    case ActionKind::While: {
      n.rule = "while";
      n.children = {derive(*a.children[0], table)};
      const DerivedNode& a1 = n.children[0];
      n.pre = implies(a.term, a1.pre);
      n.post = make_apply("~__", {a.term});
      n.conditions = {"pre(a0) /\\ " + render_term(a.term) + " => " + text(a1.pre),
                      text(a1.post) + " => pre(a0)",
                      "pre(a0) /\\ ~(" + render_term(a.term) + ") => post(a0)"};
      break;
    }
  }
  return n;
}

void render_node(const DerivedNode& n, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << n.rule;
  if (n.action && n.action->kind == ActionKind::Invoke)
    os << " " << (n.action->receiver ? render_term(n.action->receiver) + "." : "")
       << n.action->method;
  os << "\n" << pad << "  pre:  " << text(n.pre) << "\n" << pad << "  post: " << text(n.post)
     << "\n";
  for (const auto& c : n.conditions) os << pad << "  cond: " << c << "\n";
  for (const auto& c : n.children) render_node(c, indent + 1, os);
}

struct Pointwise {
  const MethodTable& table;
  const FlatTheory& th;
  std::vector<std::string>& failures;

  bool clause(const TermPtr& t, const Store& pre, const Store& post, const Bindings& b,
              const std::string& what) {
    if (!t) return true;
    try {
      return eval_clause(t, th, pre, post, b);
    } catch (const EvalError& e) {
      failures.push_back(what + ": " + e.what());
      return false;
    }
  }

  // Returns {pre, post} of a recorded node, appending failed table rows.
  std::pair<bool, bool> eval(const ExecRecord& r) {
    const Action& a = *r.action;
    std::vector<std::pair<bool, bool>> kids;
    for (const auto& c : r.children)
      if (c->action) kids.push_back(eval(*c));
    auto all = [&](bool post) {
      bool ok = true;
      for (const auto& k : kids) ok = ok && (post ? k.second : k.first);
      return ok;
    };
    switch (a.kind) {
      case ActionKind::Invoke: {
        const MethodContract* c = table.contract(r.receiver_sort, a.method);
        if (!c) return {true, true};
        Bindings b{{"self", Value::object(r.receiver_sort, r.receiver)}};
        for (std::size_t i = 0; i < c->params.size() && i < r.args.size(); ++i)
          b.emplace_back(c->params[i].name, r.args[i]);
        const bool pre = clause(c->requires_clause, r.entry, r.entry, b, a.method + " requires");
        if (r.result) b.emplace_back("result", *r.result);
        const bool post = clause(c->ensures_clause, r.entry, r.exit, b, a.method + " ensures");
        return {pre, post};
      }
      case ActionKind::Seq: {
        // Invocation records nest their callee's body; keep direct children.
        if (kids.size() == 2 && kids[0].second && !kids[1].first)
          failures.push_back("post of '" + render_action(*a.children[0]) +
                             "' holds but pre of '" + render_action(*a.children[1]) +
                             "' does not");
        return {kids.empty() || kids[0].first, all(true)};
      }
      case ActionKind::Indep:
        return {all(false), all(true)};
      case ActionKind::Choice:
      case ActionKind::Let:
        return {kids.empty() || kids[0].first, all(true)};
      case ActionKind::If:
        if (r.guards.empty() || !r.guards[0]) return {true, true};
        return {kids.empty() || kids[0].first, all(true)};
      case ActionKind::While:
        for (std::size_t i = 1; i < kids.size(); ++i)
          if (kids[i - 1].second && !kids[i].first)
            failures.push_back("loop iteration " + std::to_string(i) +
                               " ends where the body's pre fails");
        return {kids.empty() || kids[0].first, all(true)};
    }
    return {true, true};
  }
};

}  // namespace

CompoundContract derive_contract(const BoundMethod& m, const MethodTable& table,
                                 const FlatTheory& theory) {
  (void)theory;
  CompoundContract c;
  c.cls = m.cls;
  c.method = m.name;
  if (m.contract) {
    c.role_pre = m.contract->requires_clause;
    c.role_post = m.contract->ensures_clause;
  }
  c.root = derive(*m.body, table);
  return c;
}

std::string render_derivation(const CompoundContract& c) {
  std::ostringstream os;
  os << c.cls << "." << c.method << "\n";
  if (c.role_post)
    os << "  role pre:  " << text(c.role_pre) << "\n  role post: " << text(c.role_post) << "\n";
  render_node(c.root, 1, os);
  return os.str();
}

DerivedCheck check_derived(const CompoundContract& c, const ExecRecord& run,
                           const Store& entry, const Store& exit, const Bindings& bindings,
                           const MethodTable& table, const FlatTheory& theory) {
  DerivedCheck out;
  Pointwise pw{table, theory, out.failures};
  out.pre_holds = pw.clause(c.role_pre, entry, entry, bindings, "role requires");
  const ExecRecord* body = nullptr;
  for (const auto& r : run.children)
    if (r->action == c.root.action) body = r.get();
  if (!body) {
    out.failures.push_back("no recorded execution of the body");
    return out;
  }
  const auto [pre, post] = pw.eval(*body);
  if (out.pre_holds && !pre)
    out.failures.push_back("role requires holds but the body's derived pre does not");
  if (post && c.role_post && !pw.clause(c.role_post, entry, exit, bindings, "role ensures"))
    out.failures.push_back("derived post of the body holds but the role ensures '" +
                           render_term(c.role_post) + "' does not");
  return out;
}

}  // namespace tierspec
