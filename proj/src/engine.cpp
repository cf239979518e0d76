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

#include "tierspec/engine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tierspec {

void Trace::emit(Json event) {
  if (enabled) events_.push_back(std::move(event));
}

void Trace::write(std::ostream& os) const {
  for (const auto& e : events_) os << e.dump() << "\n";
}

std::string Trace::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Requires: return "requires";
    case ViolationKind::Ensures: return "ensures";
    case ViolationKind::Frame: return "frame";
    case ViolationKind::NoChoice: return "no-enabled-choice";
    case ViolationKind::WhileCap: return "while-cap";
    case ViolationKind::Divergence: return "independence";
    case ViolationKind::NonConstructive: return "non-constructive";
    case ViolationKind::Evaluation: return "evaluation";
    case ViolationKind::Policy: return "policy";
  }
  return "unknown";
}

ContractViolation::ContractViolation(ViolationKind kind, std::string receiver,
                                     std::string method, SourceSpan span,
                                     const std::string& message)
    : std::runtime_error(message),
      kind_(kind),
      receiver_(std::move(receiver)),
      method_(std::move(method)),
      span_(std::move(span)) {}

Engine::Engine(const Workspace& ws, RunPolicy policy, Trace* trace)
    : ws_(ws), th_(*ws.runtime_theory()), policy_(policy), trace_(trace), rng_(policy.seed) {}

void Engine::emit(Json event) {
  if (trace_ && !replaying_) trace_->emit(std::move(event));
}

void Engine::fail(ViolationKind kind, const std::string& receiver, const std::string& method,
                  const SourceSpan& span, const std::string& message, int depth,
                  std::vector<std::string> objects) {
  Json ev;
  ev["kind"] = "violation";
  ev["depth"] = depth;
  ev["violation"] = to_string(kind);
  ev["blame"] = kind == ViolationKind::Requires ? "caller" : "specification";
  ev["receiver"] = receiver;
  ev["method"] = method;
  ev["message"] = message;
  if (!objects.empty()) ev["objects"] = objects;
  emit(std::move(ev));
  ContractViolation v(kind, receiver, method, span, message);
  v.objects = std::move(objects);
  throw v;
}

namespace {

Json value_list(const std::vector<Value>& vs, const ObjectNamer& namer) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.str(namer));
  return out;
}

Bindings bindings_for(const std::string& sort, ObjectId self, const std::vector<Param>& params,
                      const std::vector<Value>& args) {
  Bindings b{{"self", Value::object(sort, self)}};
  for (std::size_t i = 0; i < params.size() && i < args.size(); ++i)
    b.emplace_back(params[i].name, args[i]);
  return b;
}

}  // namespace

Value Engine::eval(const TermPtr& t, const Store& store, const Frame& f) {
  EvalContext ctx;
  ctx.pre = f.entry ? f.entry : &store;
  ctx.post = &store;
  ctx.current = &store;
  ctx.budget = policy_.budget;
  Evaluator ev(th_, ctx);
  return ev.eval(t, f.vars);
}

std::optional<Value> Engine::call(Store& store, ObjectId receiver, const std::string& method,
                                  const std::vector<Value>& args) {
  Store work = store;
  auto result = invoke(work, receiver, method, args, 1);
  store = std::move(work);
  return result;
}

void Engine::run(Store& store, const ActionPtr& action, const Bindings& locals) {
  Store work = store;
  Frame f{locals, &store, ""};
  exec(*action, work, f, 0);
  store = std::move(work);
}

ObjectId Engine::construct(Store& store, const std::string& sort,
                           const std::vector<Value>& args, Value initial,
                           const std::string& name) {
  if (!th_.is_object_sort(sort))
    throw SpecError({}, "'" + sort + "' is not an object sort");
  const bool has_ctor = ws_.table().signature(sort, sort).has_value();
  if (!has_ctor && !args.empty())
    throw SpecError({}, sort + " has no constructor taking arguments");
  Store work = store;
  const ObjectId id = work.create(sort, std::move(initial), name);
  Json ev;
  ev["kind"] = "create";
  ev["depth"] = 0;
  ev["receiver"] = work.name(id);
  ev["sort"] = sort;
  ev["value"] = work.value(id)->str(work.namer());
  emit(std::move(ev));
  if (has_ctor) {
    // The constructor's pre-state is the store without the fresh object.
    Store pre = store;
    invoke(work, id, sort, args, 1, &pre);
  }
  store = std::move(work);
  return id;
}

std::optional<Value> Engine::invoke(Store& store, ObjectId receiver, const std::string& method,
                                    const std::vector<Value>& args, int depth,
                                    const Store* pre_override) {
  const StoredObject* obj = store.find(receiver);
  const std::string rname = store.name(receiver);
  if (!obj)
    fail(ViolationKind::Evaluation, rname, method, {}, "no object " + rname, depth);
  const std::string sort = obj->sort;
  const MethodContract* contract = ws_.table().contract(sort, method);
  const BoundMethod* body = ws_.table().body(sort, method);
  if (!contract && !body)
    fail(ViolationKind::Evaluation, rname, method, {}, "no method " + sort + "." + method,
         depth);
  const std::vector<Param>& params = contract ? contract->params : body->params;
  const SourceSpan span = contract ? contract->span : body->span;
  Bindings bindings = bindings_for(sort, receiver, params, args);
  const std::string qualified = sort + "." + method;

  Json begin;
  begin["kind"] = "begin";
  begin["depth"] = depth;
  begin["receiver"] = rname;
  begin["method"] = method;
  begin["args"] = value_list(args, store.namer());
  emit(std::move(begin));

  Json verdicts;
  verdicts["requires"] = contract && contract->requires_clause ? "skipped" : "none";
  verdicts["ensures"] = contract ? "skipped" : "none";
  verdicts["frame"] = contract ? "skipped" : "none";
  auto end_event = [&](const std::optional<Value>& result, bool ok) {
    Json ev;
    ev["kind"] = "end";
    ev["depth"] = depth;
    ev["receiver"] = rname;
    ev["method"] = method;
    ev["verdicts"] = verdicts;
    ev["result"] = result ? Json(result->str(store.namer())) : Json(nullptr);
    ev["status"] = ok ? "committed" : "aborted";
    emit(std::move(ev));
  };

  const Store pre = pre_override ? *pre_override : store;
  const Store& pre_ref = pre;
  std::optional<Value> result;
  // Which clause an evaluation error belongs to.
  std::string phase = "requires";
  try {
    if (contract && contract->requires_clause) {
      if (!eval_clause(contract->requires_clause, th_, pre_ref, pre_ref, bindings)) {
        verdicts["requires"] = "fail";
        fail(ViolationKind::Requires, rname, method, contract->requires_clause->span,
             "requires of " + qualified + " does not hold for " + rname + ": " +
                 render_term(contract->requires_clause),
             depth);
      }
      verdicts["requires"] = "pass";
    }

    phase = "body";
    if (body) {
      Frame f{bindings, &pre_ref, rname};
      exec(*body->body, store, f, depth);
    } else {
      if (!contract->non_constructive.empty())
        fail(ViolationKind::NonConstructive, rname, method, contract->span,
             qualified + " cannot be executed: " + contract->non_constructive, depth);
      EvalContext ctx;
      ctx.pre = &pre_ref;
      ctx.post = &pre_ref;
      ctx.current = &pre_ref;
      ctx.budget = policy_.budget;
      Evaluator ev(th_, ctx);
      struct Planned {
        StepKind kind;
        Value target;
        Value value;
      };
      std::vector<Planned> plan;
      for (const ConstructiveStep& s : contract->steps) {
        Planned p{s.kind, s.target ? ev.eval(s.target, bindings) : Value(),
                  ev.eval(s.value, bindings)};
        if (p.value.is_stuck() || p.target.is_stuck())
          fail(ViolationKind::Evaluation, rname, method, contract->span,
               qualified + ": cannot compute '" + render_term(s.value) +
                   "': no axiom applies to " + p.value.str(store.namer()),
               depth);
        plan.push_back(std::move(p));
      }
      auto attach = [&](ObjectId member, ObjectId owner) {
        const auto current = store.owner(member);
        if (current && *current != owner)
          fail(ViolationKind::Policy, rname, method, contract->span,
               "re-attachment of " + store.name(member) + " from " + store.name(*current) +
                   " to " + store.name(owner) + " is rejected",
               depth);
        store.attach(member, owner);
      };
      for (const Planned& p : plan) {
        switch (p.kind) {
          case StepKind::SetValue:
            store.set_value(p.target.object_id(), p.value);
            break;
          case StepKind::AddMember:
            attach(p.value.object_id(), p.target.object_id());
            break;
          case StepKind::RemoveMember:
            if (store.owner(p.value.object_id()) == p.target.object_id())
              store.detach(p.value.object_id());
            break;
          case StepKind::SetOwner:
            attach(p.target.object_id(), p.value.object_id());
            break;
          case StepKind::Result:
            result = p.value;
            break;
        }
      }
    }

    if (contract) {
      phase = "ensures";
      Bindings post_bindings = bindings;
      if (result) post_bindings.emplace_back("result", *result);
      if (!eval_clause(contract->ensures_clause, th_, pre_ref, store, post_bindings)) {
        verdicts["ensures"] = "fail";
        fail(ViolationKind::Ensures, rname, method, contract->ensures_clause->span,
             "ensures of " + qualified + " does not hold for " + rname + ": " +
                 render_term(contract->ensures_clause),
             depth);
      }
      verdicts["ensures"] = "pass";
      phase = "frame";
      FrameVerdict fv = check_frame(*contract, th_, pre_ref, store, post_bindings);
      if (!fv.ok()) {
        verdicts["frame"] = "fail";
        std::vector<std::string> names;
        for (const auto& v : fv.violations) names.push_back(store.name(v.object));
        fail(ViolationKind::Frame, rname, method, contract->span, fv.str(), depth,
             std::move(names));
      }
      verdicts["frame"] = "pass";
    }
  } catch (const ContractViolation&) {
    end_event(std::nullopt, false);
    throw;
  } catch (const EvalError& e) {
    if (phase != "body") verdicts[phase] = "fail";
    try {
      fail(ViolationKind::Evaluation, rname, method, e.span(),
           qualified + " (" + phase + "): " + e.what(), depth);
    } catch (const ContractViolation&) {
      end_event(std::nullopt, false);
      throw;
    }
  }
  end_event(result, true);
  return result;
}

std::optional<Value> Engine::exec(const Action& a, Store& store, Frame& f, int depth) {
  if (!recorder_ || replaying_) return exec_node(a, store, f, depth);
  auto rec = std::make_shared<ExecRecord>();
  rec->action = &a;
  rec->entry = store;
  rec->vars = f.vars;
  recorder_->children.push_back(rec);
  ExecRecord* parent = recorder_;
  recorder_ = rec.get();
  struct Restore {
    ExecRecord*& slot;
    ExecRecord* value;
    ~Restore() { slot = value; }
  } restore{recorder_, parent};
  std::optional<Value> out = exec_node(a, store, f, depth);
  rec->exit = store;
  rec->result = out;
  return out;
}

std::optional<Value> Engine::exec_node(const Action& a, Store& store, Frame& f, int depth) {
  switch (a.kind) {
    case ActionKind::Invoke: {
      ObjectId recv;
      std::string label;
      if (a.receiver) {
        Value r = eval(a.receiver, store, f);
        if (!r.is(Value::Kind::Object))
          fail(ViolationKind::Evaluation, f.self_name, a.method, a.span,
               "receiver '" + render_term(a.receiver) + "' does not denote an object: " +
                   r.str(store.namer()),
               depth + 1);
        recv = r.object_id();
      } else {
        auto it = std::find_if(f.vars.begin(), f.vars.end(),
                               [](const auto& p) { return p.first == "self"; });
        recv = it->second.object_id();
      }
      std::vector<Value> args;
      for (const auto& t : a.args) {
        Value v = eval(t, store, f);
        if (v.is_stuck())
          fail(ViolationKind::Evaluation, store.name(recv), a.method, t->span,
               "argument '" + render_term(t) + "' is stuck at " + v.str(store.namer()),
               depth + 1);
        args.push_back(std::move(v));
      }
      if (recorder_ && !replaying_ && recorder_->action == &a) {
        recorder_->receiver = recv;
        recorder_->receiver_sort = a.receiver_sort;
        recorder_->args = args;
      }
      return invoke(store, recv, a.method, args, depth + 1);
    }
    case ActionKind::Seq:
      if (a.distributed) {
        exec_components(a, store, f, depth, false);
      } else {
        exec(*a.children[0], store, f, depth);
        exec(*a.children[1], store, f, depth);
      }
      return std::nullopt;
    case ActionKind::Indep:
      exec_components(a, store, f, depth, true);
      return std::nullopt;
    case ActionKind::Choice:
      exec_components(a, store, f, depth, false);
      return std::nullopt;
    case ActionKind::Let: {
      std::optional<Value> v;
      if (a.yielder) {
        v = eval(a.term, store, f);
        if (v->is_stuck())
          fail(ViolationKind::Evaluation, f.self_name, "let", a.span,
               "yielder '" + render_term(a.term) + "' is stuck at " + v->str(store.namer()),
               depth);
      } else {
        v = exec(*a.children[0], store, f, depth);
      }
      Frame inner = f;
      inner.vars.emplace_back(a.var, *v);
      return exec(*a.children[1], store, inner, depth);
    }
    case ActionKind::If:
    case ActionKind::While: {
      for (int iteration = 0;; ++iteration) {
        EvalContext ctx;
        ctx.pre = f.entry ? f.entry : &store;
        ctx.post = &store;
        ctx.current = &store;
        ctx.budget = policy_.budget;
        bool g = false;
        try {
          g = eval_guard(a.term, th_, f.vars, ctx);
        } catch (const EvalError& e) {
          fail(ViolationKind::Evaluation, f.self_name, "guard", a.term->span,
               "guard '" + render_term(a.term) + "': " + e.what(), depth);
        }
        Json ev;
        ev["kind"] = "guard";
        ev["depth"] = depth;
        ev["receiver"] = f.self_name;
        ev["guard"] = render_term(a.term);
        ev["value"] = g;
        emit(std::move(ev));
        if (recorder_ && !replaying_ && recorder_->action == &a) recorder_->guards.push_back(g);
        if (!g) break;
        if (a.kind == ActionKind::While && iteration >= policy_.while_cap)
          fail(ViolationKind::WhileCap, f.self_name, "while", a.span,
               "loop exceeded " + std::to_string(policy_.while_cap) + " iterations", depth);
        exec(*a.children[0], store, f, depth);
        if (a.kind == ActionKind::If) break;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

void Engine::exec_components(const Action& a, Store& store, Frame& f, int depth, bool indep) {
  struct Component {
    const Action* action;
    Frame frame;
    std::string label;
  };
  std::vector<Component> comps;
  if (a.distributed) {
    Value set = eval(a.term, store, f);
    if (set.is_stuck())
      fail(ViolationKind::Evaluation, f.self_name, "", a.term->span,
           "'" + render_term(a.term) + "' is stuck", depth);
    for (const Value& e : set.items()) {
      Frame cf = f;
      cf.vars.emplace_back(a.var, e);
      comps.push_back({a.children[0].get(), std::move(cf), e.str(store.namer())});
    }
  } else {
    for (std::size_t i = 0; i < a.children.size(); ++i)
      comps.push_back({a.children[i].get(), f, std::to_string(i)});
  }

  if (a.kind == ActionKind::Choice) {
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (enabled(*comps[i].action, store, comps[i].frame)) on.push_back(i);
    if (on.empty())
      fail(ViolationKind::NoChoice, f.self_name, "", a.span, "no branch of the choice is enabled",
           depth);
    const std::size_t pick = on[rng_() % on.size()];
    Json ev;
    ev["kind"] = "choice";
    ev["depth"] = depth;
    ev["receiver"] = f.self_name;
    ev["seed"] = policy_.seed;
    Json labels = Json::array();
    for (std::size_t i : on) labels.push_back(comps[i].label);
    ev["enabled"] = labels;
    ev["picked"] = comps[pick].label;
    emit(std::move(ev));
    exec(*comps[pick].action, store, comps[pick].frame, depth);
    return;
  }

  const bool check = indep && comps.size() >= 2 && policy_.perm_samples > 0 && !replaying_;
  std::optional<Store> snapshot;
  if (check) snapshot = store;
  for (auto& c : comps) exec(*c.action, store, c.frame, depth);
  if (!check) return;

  std::vector<std::size_t> order(comps.size());
  Json orders = Json::array();
  for (int k = 0; k < policy_.perm_samples; ++k) {
    std::iota(order.begin(), order.end(), 0);
    if (k == 0) {
      std::reverse(order.begin(), order.end());
    } else {
      for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[rng_() % (i + 1)]);
    }
    Json labels = Json::array();
    for (std::size_t i : order) labels.push_back(comps[i].label);
    orders.push_back(labels);

    Store replay = *snapshot;
    std::string failure;
    replaying_ = true;
    try {
      for (std::size_t i : order) {
        Frame cf = comps[i].frame;
        exec(*comps[i].action, replay, cf, depth);
      }
    } catch (const ContractViolation& e) {
      failure = e.what();
    } catch (const EvalError& e) {
      failure = e.what();
    }
    replaying_ = false;
    if (failure.empty() && replay.same_state(store)) continue;

    Json ev;
    ev["kind"] = "permutation";
    ev["depth"] = depth;
    ev["receiver"] = f.self_name;
    ev["seed"] = policy_.seed;
    ev["orders"] = orders;
    ev["verdict"] = "divergent";
    emit(std::move(ev));
    std::string msg = "independent components interfere: order " + labels.dump();
    if (!failure.empty())
      msg += " fails (" + failure + ")";
    else
      msg += " ends in\n" + replay.describe() + "while canonical order ends in\n" +
             store.describe();
    fail(ViolationKind::Divergence, f.self_name, "", a.span, msg, depth);
  }
  Json ev;
  ev["kind"] = "permutation";
  ev["depth"] = depth;
  ev["receiver"] = f.self_name;
  ev["seed"] = policy_.seed;
  ev["orders"] = orders;
  ev["verdict"] = "identical";
  emit(std::move(ev));
}

bool Engine::enabled(const Action& a, const Store& store, Frame& f) {
  switch (a.kind) {
    case ActionKind::Invoke: {
      Value recv = a.receiver ? eval(a.receiver, store, f) : Value();
      if (!a.receiver)
        for (const auto& [n, v] : f.vars)
          if (n == "self") recv = v;
      if (!recv.is(Value::Kind::Object)) return false;
      const MethodContract* c = ws_.table().contract(a.receiver_sort, a.method);
      if (!c || !c->requires_clause) return true;
      std::vector<Value> args;
      for (const auto& t : a.args) args.push_back(eval(t, store, f));
      Bindings b = bindings_for(a.receiver_sort, recv.object_id(), c->params, args);
      return eval_clause(c->requires_clause, th_, store, store, b);
    }
    case ActionKind::Seq:
      return a.distributed ? true : enabled(*a.children[0], store, f);
    case ActionKind::Indep:
      if (a.distributed) {
        for (const Value& e : eval(a.term, store, f).items()) {
          Frame cf = f;
          cf.vars.emplace_back(a.var, e);
          if (!enabled(*a.children[0], store, cf)) return false;
        }
        return true;
      }
      return enabled(*a.children[0], store, f) && enabled(*a.children[1], store, f);
    case ActionKind::Choice:
      if (a.distributed) {
        for (const Value& e : eval(a.term, store, f).items()) {
          Frame cf = f;
          cf.vars.emplace_back(a.var, e);
          if (enabled(*a.children[0], store, cf)) return true;
        }
        return false;
      }
      return enabled(*a.children[0], store, f) || enabled(*a.children[1], store, f);
    case ActionKind::Let:
      return a.yielder || enabled(*a.children[0], store, f);
    case ActionKind::If:
    case ActionKind::While: {
      Value g = eval(a.term, store, f);
      if (!g.is(Value::Kind::Bool) || !g.as_bool()) return true;
      return enabled(*a.children[0], store, f);
    }
  }
  return true;
}

}  // namespace tierspec
