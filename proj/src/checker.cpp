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

#include "tierspec/checker.hpp"

#include <algorithm>

namespace tierspec {

const std::string* SortContext::find(const std::string& name) const {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

namespace {

bool is_state_token(const std::string& s) { return s == "pre" || s == "post" || s == "any"; }

std::string display_op(const std::string& name) {
  if (name.size() > 4 && name.rfind("__", 0) == 0 &&
      name.compare(name.size() - 2, 2, "__") == 0)
    return name.substr(2, name.size() - 4);
  if (name.size() > 2 && name.compare(name.size() - 2, 2, "__") == 0)
    return name.substr(0, name.size() - 2);
  return name;
}

std::shared_ptr<Term> annotated(const Term& t, std::string sort) {
  auto c = std::make_shared<Term>(t);
  c->sort = std::move(sort);
  c->checked = true;
  return c;
}

class Checker {
 public:
  Checker(const FlatTheory& th, Diagnostics* lint) : th_(th), lint_(lint) {}

  TermPtr check(const TermPtr& t, SortContext& ctx, const std::string& expected) {
    TermPtr out = check_node(t, ctx, expected);
    if (!expected.empty() && out->sort != expected)
      throw SpecError(t->span, "term '" + render_term(*t) + "' has sort " + out->sort +
                                   "; expected " + expected);
    return out;
  }

 private:
  TermPtr check_node(const TermPtr& t, SortContext& ctx, const std::string& expected) {
    switch (t->kind) {
      case TermKind::Ident:
        return check_ident(t, ctx, expected);
      case TermKind::Const: {
        std::string sort = t->value.sort();
        if (sort.empty() || (t->value.is(Value::Kind::Set) && t->value.items().empty() &&
                             !expected.empty()))
          sort = expected;
        return annotated(*t, sort);
      }
      case TermKind::Tuple:
        return check_tuple(t, ctx, expected);
      case TermKind::Project: {
        TermPtr inner = check(t->args[0], ctx, {});
        const TupleSort* ts = th_.tuple(inner->sort);
        if (!ts)
          throw SpecError(t->span, "projection '." + t->name + "' applied to sort " +
                                       inner->sort + ", which is not a tuple sort");
        const int idx = ts->field_index(t->name);
        if (idx < 0)
          throw SpecError(t->span, "sort " + inner->sort + " has no field '" + t->name + "'");
        auto c = annotated(*t, ts->fields[static_cast<std::size_t>(idx)].sort);
        c->args = {inner};
        c->op = idx;
        return c;
      }
      case TermKind::StateValue: {
        TermPtr inner = check(t->args[0], ctx, {});
        auto it = th_.object_sorts.find(inner->sort);
        if (it == th_.object_sorts.end())
          throw SpecError(t->span, "'" + render_term(*t) + "' extracts a value from sort " +
                                       inner->sort + ", which is not an object sort");
        if (t->state_ref == StateRef::At && !is_state_token(t->name))
          throw SpecError(t->span, "unknown state '" + t->name + "'");
        auto c = annotated(*t, it->second);
        c->args = {inner};
        return c;
      }
      case TermKind::Quantifier: {
        const std::size_t mark = ctx.vars.size();
        for (const auto& b : t->binders) {
          if (!th_.has_sort(b.sort))
            throw SpecError(b.span.known() ? b.span : t->span, "unknown sort '" + b.sort + "'");
          ctx.bind(b.name, b.sort);
        }
        TermPtr body;
        try {
          body = check(t->args[0], ctx, "Bool");
        } catch (...) {
          ctx.vars.resize(mark);
          throw;
        }
        ctx.vars.resize(mark);
        auto c = annotated(*t, "Bool");
        c->args = {body};
        return c;
      }
      case TermKind::Apply:
        return check_apply(t, ctx, expected);
    }
    throw SpecError(t->span, "malformed term");
  }

  TermPtr check_ident(const TermPtr& t, SortContext& ctx, const std::string& expected) {
    if (const std::string* s = ctx.find(t->name)) return annotated(*t, *s);
    if (ctx.state_tokens && is_state_token(t->name))
      return annotated(*make_const(Value::state(t->name), t->span), "State");
    std::vector<int> nullary;
    for (int id : th_.lookup(t->name))
      if (th_.op(id).domain.empty()) nullary.push_back(id);
    if (nullary.empty()) {
      if (th_.lookup(t->name).empty())
        throw SpecError(t->span, "unknown identifier '" + t->name + "'");
      throw SpecError(t->span, "operator '" + t->name + "' needs arguments");
    }
    const int id = pick_by_range(nullary, expected, t);
    auto c = annotated(*make_apply(t->name, {}, t->span), th_.op(id).range);
    c->op = id;
    return c;
  }

  int pick_by_range(const std::vector<int>& ids, const std::string& expected, const TermPtr& t) {
    if (ids.size() == 1) return ids[0];
    std::vector<int> keep;
    for (int id : ids)
      if (!expected.empty() && th_.op(id).range == expected) keep.push_back(id);
    if (keep.size() == 1) return keep[0];
    throw SpecError(t->span, "ambiguous use of overloaded operator '" +
                                 display_op(t->name) + "'");
  }

  TermPtr check_tuple(const TermPtr& t, SortContext& ctx, const std::string& expected) {
    std::vector<std::string> candidates;
    if (!t->annotation.empty()) {
      candidates.push_back(t->annotation);
    } else if (!expected.empty() && th_.tuple(expected)) {
      candidates.push_back(expected);
    } else {
      for (const auto& [name, ts] : th_.tuples)
        if (ts.fields.size() == t->args.size()) candidates.push_back(name);
    }
    std::vector<TermPtr> results;
    std::optional<SpecError> first_error;
    for (const auto& sort : candidates) {
      const TupleSort* ts = th_.tuple(sort);
      if (!ts) throw SpecError(t->span, "unknown tuple sort '" + sort + "'");
      if (ts->fields.size() != t->args.size()) {
        if (candidates.size() == 1)
          throw SpecError(t->span, "tuple literal has " + std::to_string(t->args.size()) +
                                       " fields; sort " + sort + " has " +
                                       std::to_string(ts->fields.size()));
        continue;
      }
      try {
        std::vector<TermPtr> fields;
        for (std::size_t i = 0; i < t->args.size(); ++i)
          fields.push_back(check(t->args[i], ctx, ts->fields[i].sort));
        auto c = annotated(*t, sort);
        c->args = std::move(fields);
        results.push_back(c);
      } catch (const SpecError& e) {
        if (!first_error) first_error = e;
      }
    }
    if (results.size() == 1) return results[0];
    if (results.empty()) {
      if (first_error && candidates.size() == 1) throw *first_error;
      throw SpecError(t->span, "no tuple sort matches literal '" + render_term(*t) + "'");
    }
    throw SpecError(t->span, "tuple literal '" + render_term(*t) +
                                 "' matches several sorts; annotate it as [..]:Sort");
  }

  TermPtr check_equality(const TermPtr& t, SortContext& ctx) {
    if (t->args.size() != 2) throw SpecError(t->span, "equality needs two operands");
    TermPtr a;
    TermPtr b;
    try {
      a = check(t->args[0], ctx, {});
      b = check(t->args[1], ctx, a->sort);
    } catch (const SpecError&) {
      b = check(t->args[1], ctx, {});
      a = check(t->args[0], ctx, b->sort);
    }
    auto c = annotated(*t, "Bool");
    c->args = {a, b};
    c->builtin = t->name == "__=__" ? Builtin::Eq : Builtin::Neq;
    return c;
  }

  TermPtr check_apply(const TermPtr& t, SortContext& ctx, const std::string& expected) {
    if ((t->name == "__=__" || t->name == "__~=__") && th_.lookup(t->name).empty())
      return check_equality(t, ctx);
    if (t->name == "if__then__else__" && t->args.size() == 3) {
      TermPtr cond = check(t->args[0], ctx, "Bool");
      TermPtr a = check(t->args[1], ctx, expected);
      TermPtr b = check(t->args[2], ctx, a->sort);
      auto c = annotated(*t, a->sort);
      c->args = {cond, a, b};
      c->builtin = Builtin::Ite;
      return c;
    }
    const std::vector<int> all = th_.lookup(t->name);
    if (all.empty())
      throw SpecError(t->span, "unknown operator '" + display_op(t->name) + "'");
    std::vector<int> candidates;
    for (int id : all)
      if (th_.op(id).domain.size() == t->args.size()) candidates.push_back(id);
    if (candidates.empty()) {
      // A nullary observer applied to a value of its own range, as in
      // `currentTime(self\any)`: read as that value.
      if (t->args.size() == 1) {
        for (int id : all) {
          if (!th_.op(id).domain.empty()) continue;
          TermPtr arg = check(t->args[0], ctx, th_.op(id).range);
          if (lint_)
            lint_->warning(t->span, "operator '" + t->name +
                                        "' is declared without arguments; '" +
                                        render_term(*t) + "' is read as its argument");
          auto c = annotated(*t, th_.op(id).range);
          c->args = {arg};
          c->op = id;
          c->builtin = Builtin::ArgValue;
          return c;
        }
      }
      throw SpecError(t->span, "operator '" + display_op(t->name) + "' takes " +
                                   std::to_string(th_.op(all[0]).domain.size()) +
                                   " argument(s), not " + std::to_string(t->args.size()));
    }
    std::vector<std::shared_ptr<Term>> results;
    std::optional<SpecError> first_error;
    for (int id : candidates) {
      const OpInfo& op = th_.op(id);
      try {
        std::vector<TermPtr> args;
        for (std::size_t i = 0; i < t->args.size(); ++i)
          args.push_back(check(t->args[i], ctx, op.domain[i]));
        auto c = annotated(*t, op.range);
        c->args = std::move(args);
        c->op = id;
        results.push_back(c);
      } catch (const SpecError& e) {
        if (!first_error) first_error = e;
      }
    }
    if (results.size() > 1 && !expected.empty()) {
      std::vector<std::shared_ptr<Term>> keep;
      for (auto& r : results)
        if (r->sort == expected) keep.push_back(r);
      if (!keep.empty()) results = std::move(keep);
    }
    if (results.size() == 1) return results[0];
    if (results.empty()) {
      if (candidates.size() == 1) throw *first_error;
      throw SpecError(t->span, "no signature of '" + display_op(t->name) +
                                   "' matches the arguments of '" + render_term(*t) + "'");
    }
    throw SpecError(t->span, "ambiguous use of overloaded operator '" +
                                 display_op(t->name) + "' in '" + render_term(*t) + "'");
  }

  const FlatTheory& th_;
  Diagnostics* lint_;
};

}  // namespace

TermPtr check_term(const TermPtr& t, const FlatTheory& theory, const SortContext& ctx,
                   const std::string& expected) {
  SortContext local = ctx;
  Checker c(theory, ctx.lint);
  return c.check(t, local, expected);
}

std::string sort_of(const TermPtr& t, const FlatTheory& theory, const SortContext& ctx) {
  return check_term(t, theory, ctx)->sort;
}

TermPtr check_formula(const TermPtr& t, const FlatTheory& theory, const SortContext& ctx) {
  return check_term(t, theory, ctx, "Bool");
}

}  // namespace tierspec
