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

#include "tierspec/evaluator.hpp"

#include <algorithm>

namespace tierspec {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - b * floor_div(a, b); }

/// Resets the step counter for each outermost call.
class DepthGuard {
 public:
  DepthGuard(int& depth, int& steps) : depth_(depth) {
    if (depth_++ == 0) steps = 0;
  }
  ~DepthGuard() { --depth_; }

 private:
  int& depth_;
};

}  // namespace

TermPtr value_to_term(const Value& v) {
  if (v.is_stuck() && v.stuck_term()) return v.stuck_term();
  return make_const(v);
}

Evaluator::Evaluator(const FlatTheory& theory, EvalContext ctx) : th_(theory), ctx_(ctx) {}

ObjectNamer Evaluator::namer() const {
  if (ctx_.current) return ctx_.current->namer();
  if (ctx_.post) return ctx_.post->namer();
  if (ctx_.pre) return ctx_.pre->namer();
  return {};
}

Value Evaluator::eval(const TermPtr& t, const Bindings& b) {
  DepthGuard g(depth_, steps_);
  Bindings local = b;
  return eval_rec(*t, local);
}

bool Evaluator::eval_bool(const TermPtr& t, const Bindings& b) {
  const Value v = eval(t, b);
  if (v.is_stuck())
    throw EvalError(EvalError::Kind::Stuck, t->span,
                    "evaluation of '" + render_term(*t) + "' is stuck at '" + v.text() +
                        "': no axiom applies");
  if (!v.is(Value::Kind::Bool))
    throw EvalError(EvalError::Kind::Domain, t->span,
                    "'" + render_term(*t) + "' did not evaluate to a Boolean");
  return v.as_bool();
}

const Store* Evaluator::store_for(const std::string& token) const {
  if (token == "pre" && ctx_.pre) return ctx_.pre;
  if (token == "post" && ctx_.post) return ctx_.post;
  if (ctx_.current) return ctx_.current;
  return ctx_.post ? ctx_.post : ctx_.pre;
}

Value Evaluator::state_value(const Value& object, const std::string& token,
                             const SourceSpan& span) {
  if (!object.is(Value::Kind::Object))
    throw EvalError(EvalError::Kind::Domain, span, "value extraction from a non-object");
  auto read = [&](const Store* s) -> const Value* {
    return s ? s->value(object.object_id()) : nullptr;
  };
  if (token == "any") {
    const Store* a = ctx_.pre ? ctx_.pre : store_for("current");
    const Store* b = ctx_.post ? ctx_.post : store_for("current");
    const Value* va = read(a);
    const Value* vb = read(b);
    if (va && vb && !equal(*va, *vb, va->sort().empty() ? vb->sort() : va->sort())) {
      const auto n = namer();
      throw EvalError(EvalError::Kind::AnyDisagrees, span,
                      "value of " + object.str(n) + " in state any is ambiguous: " +
                          va->str(n) + " before, " + vb->str(n) + " after");
    }
    if (va) return *va;
    if (vb) return *vb;
  } else if (const Value* v = read(store_for(token))) {
    return *v;
  }
  return Value::stuck(make_apply("__!__", {value_to_term(object),
                                           value_to_term(Value::state(token))}),
                      th_.object_sorts.count(object.sort()) ? th_.object_sorts.at(object.sort())
                                                            : std::string());
}

std::vector<Value> Evaluator::domain(const std::string& sort, const SourceSpan& span) {
  std::vector<Value> out;
  if (sort == "Bool") return {Value::boolean(false), Value::boolean(true)};
  if (th_.is_object_sort(sort)) {
    const Store* s = store_for("current");
    if (s)
      for (ObjectId id : s->objects_of(sort)) out.push_back(Value::object(sort, id));
    return out;
  }
  throw EvalError(EvalError::Kind::Domain, span,
                  "cannot quantify over sort " + sort + " during evaluation");
}

Value Evaluator::quantify(const Term& t, Bindings& b, std::size_t i) {
  const bool forall = t.name == "forall";
  if (i == t.binders.size()) return eval_rec(*t.args[0], b);
  for (const Value& v : domain(t.binders[i].sort, t.span)) {
    b.emplace_back(t.binders[i].name, v);
    Value r = quantify(t, b, i + 1);
    b.pop_back();
    if (r.is_stuck()) return r;
    if (r.as_bool() != forall) return Value::boolean(!forall);
  }
  return Value::boolean(forall);
}

Value Evaluator::eval_rec(const Term& t, Bindings& b) {
  switch (t.kind) {
    case TermKind::Ident:
      for (auto it = b.rbegin(); it != b.rend(); ++it)
        if (it->first == t.name) return it->second;
      throw EvalError(EvalError::Kind::Domain, t.span, "unbound variable '" + t.name + "'");
    case TermKind::Const:
      return t.value;
    case TermKind::Tuple: {
      std::vector<Value> fields;
      for (const auto& a : t.args) {
        Value v = eval_rec(*a, b);
        fields.push_back(std::move(v));
      }
      for (const auto& f : fields)
        if (f.is_stuck()) {
          std::vector<TermPtr> parts;
          for (const auto& x : fields) parts.push_back(value_to_term(x));
          return Value::stuck(make_tuple(parts), t.sort);
        }
      return Value::tuple(t.sort, std::move(fields));
    }
    case TermKind::Project: {
      Value inner = eval_rec(*t.args[0], b);
      if (inner.is_stuck())
        return Value::stuck(make_project(value_to_term(inner), t.name), t.sort);
      if (!inner.is(Value::Kind::Tuple) || t.op < 0 ||
          static_cast<std::size_t>(t.op) >= inner.items().size())
        throw EvalError(EvalError::Kind::Domain, t.span, "projection of a non-tuple value");
      return inner.items()[static_cast<std::size_t>(t.op)];
    }
    case TermKind::StateValue: {
      Value obj = eval_rec(*t.args[0], b);
      if (obj.is_stuck()) return Value::stuck(value_to_term(obj), t.sort);
      const std::string token = t.state_ref == StateRef::Pre    ? "pre"
                                : t.state_ref == StateRef::Post ? "post"
                                                                : t.name;
      return state_value(obj, token, t.span);
    }
    case TermKind::Quantifier:
      return quantify(t, b, 0);
    case TermKind::Apply:
      return eval_apply(t, b);
  }
  throw EvalError(EvalError::Kind::Domain, t.span, "malformed term");
}

Value Evaluator::eval_apply(const Term& t, Bindings& b) {
  switch (t.builtin) {
    case Builtin::Eq:
    case Builtin::Neq: {
      Value x = eval_rec(*t.args[0], b);
      Value y = eval_rec(*t.args[1], b);
      if (x.is_stuck() || y.is_stuck())
        return Value::stuck(make_apply(t.name, {value_to_term(x), value_to_term(y)}), "Bool");
      const bool eq = equal(x, y, t.args[0]->sort);
      return Value::boolean(t.builtin == Builtin::Eq ? eq : !eq);
    }
    case Builtin::Ite: {
      Value c = eval_rec(*t.args[0], b);
      if (c.is_stuck()) return Value::stuck(value_to_term(c), t.sort);
      return eval_rec(*t.args[c.as_bool() ? 1 : 2], b);
    }
    case Builtin::ArgValue:
      return eval_rec(*t.args[0], b);
    case Builtin::None:
      break;
  }
  const OpInfo& op = th_.op(t.op);
  // Connectives are lazy in their second operand.
  switch (op.native) {
    case Native::And:
    case Native::Or:
    case Native::Implies: {
      Value x = eval_rec(*t.args[0], b);
      if (x.is_stuck()) return Value::stuck(value_to_term(x), "Bool");
      if (op.native == Native::And && !x.as_bool()) return Value::boolean(false);
      if (op.native == Native::Or && x.as_bool()) return Value::boolean(true);
      if (op.native == Native::Implies && !x.as_bool()) return Value::boolean(true);
      return eval_rec(*t.args[1], b);
    }
    default:
      break;
  }
  std::vector<Value> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(eval_rec(*a, b));
  for (const auto& a : args)
    if (a.is_stuck()) return stuck_apply(op, args);
  if (op.native != Native::None) return native(op, args, t.span);
  return rewrite(op, args, t.span);
}

Value Evaluator::apply(int op_id, std::vector<Value> args, const SourceSpan& span) {
  DepthGuard g(depth_, steps_);
  const OpInfo& op = th_.op(op_id);
  for (const auto& a : args)
    if (a.is_stuck()) return stuck_apply(op, args);
  if (op.native != Native::None) return native(op, args, span);
  return rewrite(op, args, span);
}

Value Evaluator::stuck_apply(const OpInfo& op, const std::vector<Value>& args) {
  std::vector<TermPtr> parts;
  for (const auto& a : args) parts.push_back(value_to_term(a));
  return Value::stuck(make_apply(op.name, std::move(parts)), op.range);
}

bool Evaluator::match(const Term& p, const Value& v, Bindings& b) {
  switch (p.kind) {
    case TermKind::Ident:
      for (const auto& [name, bound] : b)
        if (name == p.name) return equal(bound, v, p.sort);
      b.emplace_back(p.name, v);
      return true;
    case TermKind::Const:
      return equal(p.value, v, p.sort);
    case TermKind::Tuple:
      if (!v.is(Value::Kind::Tuple) || v.items().size() != p.args.size()) return false;
      for (std::size_t i = 0; i < p.args.size(); ++i)
        if (!match(*p.args[i], v.items()[i], b)) return false;
      return true;
    default:
      return false;
  }
}

Value Evaluator::rewrite(const OpInfo& op, std::vector<Value>& args, const SourceSpan& span) {
  if (op.env) {
    const auto* env = ctx_.env;
    if (!env) {
      const Store* s = store_for("current");
      if (s) env = &s->env();
    }
    if (env)
      if (auto it = env->find(op.name); it != env->end()) return it->second;
    return stuck_apply(op, args);
  }
  for (int idx : th_.rules_by_op[static_cast<std::size_t>(op.id)]) {
    const Rule& r = th_.rules[static_cast<std::size_t>(idx)];
    Bindings rb;
    bool ok = true;
    for (std::size_t i = 0; ok && i < args.size(); ++i) ok = match(*r.lhs->args[i], args[i], rb);
    if (!ok) continue;
    if (++steps_ > ctx_.budget)
      throw EvalError(EvalError::Kind::Budget, span.known() ? span : r.span,
                      "rewrite budget of " + std::to_string(ctx_.budget) +
                          " rule applications exceeded while evaluating '" + op.name + "'");
    if (r.cond) {
      Value c = eval_rec(*r.cond, rb);
      if (c.is_stuck()) return stuck_apply(op, args);
      if (!c.as_bool()) continue;
    }
    return eval_rec(*r.rhs, rb);
  }
  return stuck_apply(op, args);
}

Value Evaluator::native(const OpInfo& op, std::vector<Value>& a, const SourceSpan& span) {
  auto i = [&](std::size_t k) { return a[k].as_int(); };
  switch (op.native) {
    case Native::True:
      return Value::boolean(true);
    case Native::False:
      return Value::boolean(false);
    case Native::Not:
      return Value::boolean(!a[0].as_bool());
    case Native::And:
      return Value::boolean(a[0].as_bool() && a[1].as_bool());
    case Native::Or:
      return Value::boolean(a[0].as_bool() || a[1].as_bool());
    case Native::Implies:
      return Value::boolean(!a[0].as_bool() || a[1].as_bool());
    case Native::Iff:
      return Value::boolean(a[0].as_bool() == a[1].as_bool());
    case Native::Add:
      return Value::integer(i(0) + i(1));
    case Native::Sub:
      return Value::integer(i(0) - i(1));
    case Native::Mul:
      return Value::integer(i(0) * i(1));
    case Native::Div:
      if (i(1) == 0) return stuck_apply(op, a);
      return Value::integer(floor_div(i(0), i(1)));
    case Native::Mod:
      if (i(1) == 0) return stuck_apply(op, a);
      return Value::integer(floor_mod(i(0), i(1)));
    case Native::Neg:
      return Value::integer(-i(0));
    case Native::Lt:
      return Value::boolean(i(0) < i(1));
    case Native::Le:
      return Value::boolean(i(0) <= i(1));
    case Native::Gt:
      return Value::boolean(i(0) > i(1));
    case Native::Ge:
      return Value::boolean(i(0) >= i(1));
    case Native::StrLen:
      return Value::integer(static_cast<std::int64_t>(a[0].text().size()));
    case Native::SetEmpty:
      return Value::set(op.range, {});
    case Native::SetInsert: {
      std::vector<Value> items = a[1].items();
      items.push_back(a[0]);
      return Value::set(op.range, std::move(items));
    }
    case Native::SetDelete: {
      std::vector<Value> items;
      for (const auto& x : a[1].items())
        if (!equal(x, a[0], op.domain[0])) items.push_back(x);
      return Value::set(op.range, std::move(items));
    }
    case Native::SetIn:
    case Native::SetNotIn: {
      bool found = false;
      for (const auto& x : a[1].items()) found = found || equal(x, a[0], op.domain[0]);
      return Value::boolean(op.native == Native::SetIn ? found : !found);
    }
    case Native::SetSize:
      return Value::integer(static_cast<std::int64_t>(a[0].items().size()));
    case Native::ValueIn:
      if (!a[1].is(Value::Kind::State))
        throw EvalError(EvalError::Kind::Domain, span, "'!' needs a state");
      return state_value(a[0], a[1].text(), span);
    case Native::LinkOwner: {
      const Store* s = store_for("current");
      if (s)
        if (auto o = s->owner(a[0].object_id())) return Value::object(op.range, *o);
      return stuck_apply(op, a);
    }
    case Native::LinkMembers: {
      const Store* s = store_for("current");
      std::vector<Value> items;
      const std::string member_sort = th_.link ? th_.link->member_sort : std::string();
      if (s)
        for (ObjectId m : s->members(a[0].object_id()))
          items.push_back(Value::object(member_sort, m));
      return Value::set(op.range, std::move(items));
    }
    case Native::None:
      break;
  }
  return stuck_apply(op, a);
}

bool Evaluator::equal(const Value& a, const Value& b, const std::string& sort) {
  if (a.is_stuck() || b.is_stuck())
    throw EvalError(EvalError::Kind::Stuck, {},
                    "cannot compare '" + (a.is_stuck() ? a.text() : b.text()) +
                        "': no axiom applies");
  if (auto it = th_.partitions.find(sort); it != th_.partitions.end()) {
    if (a == b) return true;
    for (int obs : it->second) {
      Value x = apply(obs, {a});
      Value y = apply(obs, {b});
      if (!equal(x, y, th_.op(obs).range)) return false;
    }
    return true;
  }
  if (const TupleSort* ts = th_.tuple(sort);
      ts && a.is(Value::Kind::Tuple) && b.is(Value::Kind::Tuple) &&
      a.items().size() == ts->fields.size() && b.items().size() == ts->fields.size()) {
    for (std::size_t k = 0; k < ts->fields.size(); ++k)
      if (!equal(a.items()[k], b.items()[k], ts->fields[k].sort)) return false;
    return true;
  }
  return a == b;
}

TermPtr normalize(const TermPtr& t, const FlatTheory& theory, const EvalContext& ctx) {
  Evaluator ev(theory, ctx);
  return value_to_term(ev.eval(t));
}

bool eval_guard(const TermPtr& guard, const FlatTheory& theory, const Bindings& b,
                const EvalContext& ctx) {
  Evaluator ev(theory, ctx);
  return ev.eval_bool(guard, b);
}

}  // namespace tierspec
