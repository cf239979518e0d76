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

#include "tierspec/scenario.hpp"

#include <fstream>
#include <sstream>

#include "tierspec/parser.hpp"

namespace tierspec {

Scenario parse_scenario(const std::string& text, const std::string& file) {
  Parser p(text, file);
  Scenario s;
  s.file = file;
  while (!p.at_end()) {
    const Token start = p.peek();
    ScenarioStep step;
    if (p.accept_keyword("scenario")) {
      if (p.peek().kind != TokenKind::String) p.fail({"scenario name string"});
      s.name = p.next().text;
    } else if (p.accept_keyword("seed")) {
      s.seed = static_cast<std::uint64_t>(p.expect_int());
    } else if (p.accept_keyword("permutations")) {
      s.permutations = static_cast<int>(p.expect_int());
    } else if (p.accept_keyword("env")) {
      step.kind = ScenarioStep::Kind::Env;
      step.name = p.expect_ident("environment constant").text;
      p.expect_symbol("=");
      step.term = p.term();
    } else if (p.accept_keyword("new")) {
      step.kind = ScenarioStep::Kind::New;
      step.sort = p.sort();
      step.name = p.expect_ident("object name").text;
      if (p.accept_symbol("(") && !p.accept_symbol(")")) {
        do step.args.push_back(p.term());
        while (p.accept_symbol(","));
        p.expect_symbol(")");
      }
      p.expect_symbol("=");
      step.term = p.term();
    } else if (p.accept_keyword("run")) {
      step.kind = ScenarioStep::Kind::Run;
      step.action = p.action();
    } else if (p.accept_keyword("assert")) {
      step.kind = ScenarioStep::Kind::Assert;
      if (p.peek().kind != TokenKind::String) p.fail({"assertion name string"});
      step.name = p.next().text;
      p.expect_symbol(":");
      step.term = p.term();
    } else {
      p.fail({"'scenario'", "'seed'", "'permutations'", "'env'", "'new'", "'run'", "'assert'"});
    }
    p.accept_symbol(";");
    if (start.text == "scenario" || start.text == "seed" || start.text == "permutations")
      continue;
    step.span = p.span_from(start);
    s.steps.push_back(std::move(step));
  }
  if (s.name.empty()) s.name = file;
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError({path, 0, 0, 0, 0}, "cannot read scenario");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

RunPolicy resolve_policy(const Scenario& s, const ScenarioOverrides& o) {
  RunPolicy p;
  p.seed = o.seed ? *o.seed : s.seed.value_or(42);
  p.perm_samples = o.perm_samples ? *o.perm_samples : s.permutations.value_or(5);
  p.while_cap = o.while_cap;
  return p;
}

ScenarioOutcome run_scenario(const Scenario& s, const Workspace& ws,
                             const ScenarioOverrides& o) {
  ScenarioOutcome out;
  const FlatTheory& th = *ws.runtime_theory();
  Engine engine(ws, resolve_policy(s, o), &out.trace);
  {
    Json ev;
    ev["kind"] = "scenario";
    ev["name"] = s.name;
    out.trace.emit(std::move(ev));
  }

  SortContext scope;
  scope.state_tokens = true;
  Bindings locals;
  auto ground = [&](const TermPtr& t, const std::string& sort) {
    TermPtr c = check_term(t, th, scope, sort);
    EvalContext ctx;
    ctx.current = &out.store;
    Evaluator ev(th, ctx);
    Value v = ev.eval(c, locals);
    if (v.is_stuck())
      throw SpecError(t->span, "'" + render_term(t) + "' has no value: " + v.str());
    return v;
  };

  std::string status = "pass";
  try {
    for (const ScenarioStep& step : s.steps) {
      switch (step.kind) {
        case ScenarioStep::Kind::Env: {
          std::optional<int> op;
          for (int id : th.env_constants())
            if (th.op(id).name == step.name) op = id;
          if (!op)
            throw SpecError(step.span, "'" + step.name + "' is not an environment constant");
          out.store.set_env(step.name, ground(step.term, th.op(*op).range));
          break;
        }
        case ScenarioStep::Kind::New: {
          if (!th.is_object_sort(step.sort))
            throw SpecError(step.span, "'" + step.sort + "' is not an object sort");
          if (scope.find(step.name))
            throw SpecError(step.span, "object '" + step.name + "' is already defined");
          Value initial = ground(step.term, th.object_sorts.at(step.sort));
          std::vector<Value> args;
          const auto sig = ws.table().signature(step.sort, step.sort);
          if (sig && sig->params.size() != step.args.size())
            throw SpecError(step.span, "constructor " + step.sort + " takes " +
                                           std::to_string(sig->params.size()) +
                                           " argument(s)");
          for (std::size_t i = 0; i < step.args.size(); ++i)
            args.push_back(ground(step.args[i], sig ? sig->params[i].sort : std::string()));
          const ObjectId id =
              engine.construct(out.store, step.sort, args, std::move(initial), step.name);
          scope.bind(step.name, step.sort);
          locals.emplace_back(step.name, Value::object(step.sort, id));
          break;
        }
        case ScenarioStep::Kind::Run: {
          ActionPtr a = bind_action(step.action, th, ws.table(), scope, "");
          engine.run(out.store, a, locals);
          ++out.runs;
          break;
        }
        case ScenarioStep::Kind::Assert: {
          TermPtr c = check_formula(step.term, th, scope);
          EvalContext ctx;
          ctx.pre = ctx.post = ctx.current = &out.store;
          const bool ok = eval_guard(c, th, locals, ctx);
          out.assertions.emplace_back(step.name, ok);
          Json ev;
          ev["kind"] = "assert";
          ev["name"] = step.name;
          ev["term"] = render_term(step.term);
          ev["verdict"] = ok ? "pass" : "fail";
          out.trace.emit(std::move(ev));
          if (!ok) {
            status = "assertion-failed";
            out.exit_code = 2;
            if (out.message.empty()) out.message = "assertion '" + step.name + "' failed";
          }
          break;
        }
      }
    }
  } catch (const ContractViolation& v) {
    status = "violation";
    out.exit_code = 2;
    out.message = to_string(v.kind()) + " violation (" + v.blame() + "): " + v.what();
  } catch (const EvalError& e) {
    status = "violation";
    out.exit_code = 2;
    out.message = std::string("evaluation error: ") + e.what();
  }
  Json ev;
  ev["kind"] = "summary";
  ev["status"] = status;
  ev["runs"] = out.runs;
  out.trace.emit(std::move(ev));
  return out;
}

}  // namespace tierspec
