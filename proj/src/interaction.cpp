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

#include "tierspec/interaction.hpp"

namespace tierspec {

const BoundMethod* BoundInteraction::find(const std::string& cls,
                                          const std::string& method) const {
  for (const auto& m : methods)
    if (m.cls == cls && m.name == method) return &m;
  return nullptr;
}

const BoundRole* MethodTable::role(const std::string& sort) const {
  auto it = roles_.find(sort);
  return it == roles_.end() ? nullptr : it->second;
}

const MethodContract* MethodTable::contract(const std::string& sort,
                                            const std::string& method) const {
  const BoundRole* r = role(sort);
  return r ? r->find(method) : nullptr;
}

const BoundMethod* MethodTable::body(const std::string& sort, const std::string& method) const {
  return interaction_ ? interaction_->find(sort, method) : nullptr;
}

std::optional<MethodTable::Signature> MethodTable::signature(const std::string& sort,
                                                             const std::string& method) const {
  if (const MethodContract* c = contract(sort, method)) return Signature{c->params, c->return_sort};
  if (const BoundMethod* b = body(sort, method)) return Signature{b->params, std::nullopt};
  return std::nullopt;
}

namespace {

class Binder {
 public:
  Binder(const FlatTheory& th, const MethodTable& table, std::string self_sort)
      : th_(th), table_(table), self_sort_(std::move(self_sort)) {}

  ActionPtr bind(const ActionPtr& a, SortContext& scope) {
    auto out = std::make_shared<Action>(*a);
    out->bound = true;
    switch (a->kind) {
      case ActionKind::Invoke:
        bind_invoke(*out, scope);
        break;
      case ActionKind::Seq:
      case ActionKind::Indep:
      case ActionKind::Choice:
        if (a->distributed) {
          out->term = check_term(a->term, th_, scope);
          const auto elem = th_.element_sort(out->term->sort);
          if (!elem || !th_.is_object_sort(*elem))
            throw SpecError(a->term->span, "distributed composition ranges over '" +
                                               render_term(a->term) + "' of sort " +
                                               out->term->sort + ", not a set of objects");
          out->var_sort = *elem;
          scope.bind(a->var, *elem);
          out->children = {bind(a->children[0], scope)};
          scope.vars.pop_back();
        } else {
          out->children = {bind(a->children[0], scope), bind(a->children[1], scope)};
        }
        break;
      case ActionKind::Let: {
        if (!th_.has_sort(a->var_sort))
          throw SpecError(a->span, "unknown sort '" + a->var_sort + "'");
        const Action& value = *a->children[0];
        if (is_yielder(value)) {
          out->yielder = true;
          out->term = check_term(make_apply(value.method, value.args, value.span), th_, scope,
                                 a->var_sort);
        } else {
          if (value.kind != ActionKind::Invoke)
            throw SpecError(value.span, "let binds '" + a->var +
                                            "' to a compound action; only value-returning "
                                            "invocations can be bound");
          ActionPtr v = bind(a->children[0], scope);
          const auto sig = table_.signature(v->receiver_sort, v->method);
          if (!sig->return_sort)
            throw SpecError(value.span, "let binds '" + a->var + "' to " + v->receiver_sort +
                                            "." + v->method + ", which returns no value");
          if (*sig->return_sort != a->var_sort)
            throw SpecError(value.span, v->receiver_sort + "." + v->method + " returns " +
                                            *sig->return_sort + ", not " + a->var_sort);
          out->children[0] = v;
        }
        scope.bind(a->var, a->var_sort);
        out->children[1] = bind(a->children[1], scope);
        scope.vars.pop_back();
        break;
      }
      case ActionKind::If:
      case ActionKind::While:
        out->term = check_formula(a->term, th_, scope);
        out->children = {bind(a->children[0], scope)};
        break;
    }
    return out;
  }

 private:
  bool is_yielder(const Action& v) const {
    if (v.kind != ActionKind::Invoke || v.receiver) return false;
    if (!self_sort_.empty() && table_.signature(self_sort_, v.method)) return false;
    return !th_.lookup(v.method).empty();
  }

  void bind_invoke(Action& a, SortContext& scope) {
    if (a.receiver) {
      a.receiver = check_term(a.receiver, th_, scope);
      a.receiver_sort = a.receiver->sort;
      if (!th_.is_object_sort(a.receiver_sort))
        throw SpecError(a.receiver->span, "receiver '" + render_term(a.receiver) +
                                              "' has sort " + a.receiver_sort +
                                              ", not an object sort");
    } else {
      if (self_sort_.empty())
        throw SpecError(a.span, "invocation of '" + a.method + "' needs an explicit receiver");
      a.receiver_sort = self_sort_;
    }
    const auto sig = table_.signature(a.receiver_sort, a.method);
    if (!sig)
      throw SpecError(a.span, "no method '" + a.method + "' for " + a.receiver_sort);
    if (sig->params.size() != a.args.size())
      throw SpecError(a.span, a.receiver_sort + "." + a.method + " takes " +
                                  std::to_string(sig->params.size()) + " argument(s), not " +
                                  std::to_string(a.args.size()));
    for (std::size_t i = 0; i < a.args.size(); ++i)
      a.args[i] = check_term(a.args[i], th_, scope, sig->params[i].sort);
  }

  const FlatTheory& th_;
  const MethodTable& table_;
  std::string self_sort_;
};

}  // namespace

ActionPtr bind_action(const ActionPtr& a, const FlatTheory& theory, const MethodTable& table,
                      const SortContext& scope, const std::string& self_sort) {
  SortContext local = scope;
  local.state_tokens = true;
  Binder b(theory, table, self_sort);
  return b.bind(a, local);
}

BoundInteraction bind_interaction(const SourceUnit& unit, const MethodTable& roles,
                                  Diagnostics* lint) {
  const InteractionAst& ast = unit.interaction();
  BoundInteraction out;
  out.name = ast.name;
  out.span = ast.span;
  for (const InteractionClass& cls : ast.classes) {
    const BoundRole* role = roles.role(cls.name);
    if (!role)
      throw SpecError(cls.span, "class '" + cls.name + "' has no role specification");
    if (!out.theory) {
      out.theory = role->theory;
    } else if (out.theory != role->theory) {
      throw SpecError(cls.span, "role " + cls.name + " uses trait " + role->uses +
                                    "; every class of an interaction must use " +
                                    out.theory->name);
    }
    for (const InteractionMethod& m : cls.methods) {
      if (out.find(cls.name, m.name))
        throw SpecError(m.span, "method '" + cls.name + "." + m.name + "' is defined twice");
      BoundMethod bm;
      bm.cls = cls.name;
      bm.name = m.name;
      bm.body = m.body;
      bm.span = m.span;
      bm.contract = role->find(m.name);
      if (bm.contract && bm.contract->params.size() != m.params.size())
        throw SpecError(m.span, cls.name + "." + m.name + " has " +
                                    std::to_string(m.params.size()) +
                                    " parameter(s); its role contract has " +
                                    std::to_string(bm.contract->params.size()));
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        Param p = m.params[i];
        if (p.sort.empty()) {
          if (!bm.contract)
            throw SpecError(p.span, "parameter '" + p.name + "' needs a sort");
          p.sort = bm.contract->params[i].sort;
          if (lint)
            lint->warning(p.span, "untyped parameter '" + p.name + "' takes sort " + p.sort +
                                      " from the role contract");
        } else if (bm.contract && p.sort != bm.contract->params[i].sort) {
          throw SpecError(p.span, "parameter '" + p.name + "' has sort " + p.sort +
                                      "; the role contract says " +
                                      bm.contract->params[i].sort);
        }
        if (!role->theory->has_sort(p.sort))
          throw SpecError(p.span, "unknown sort '" + p.sort + "'");
        bm.params.push_back(std::move(p));
      }
      out.methods.push_back(std::move(bm));
    }
  }

  MethodTable table = roles;
  table.set_interaction(&out);
  for (BoundMethod& m : out.methods) {
    SortContext scope;
    scope.lint = lint;
    scope.bind("self", m.cls);
    for (const Param& p : m.params) scope.bind(p.name, p.sort);
    m.body = bind_action(m.body, *out.theory, table, scope, m.cls);
  }
  return out;
}

}  // namespace tierspec
