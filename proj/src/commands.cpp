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

#include "tierspec/commands.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tierspec/layering.hpp"
#include "tierspec/obligations.hpp"
#include "tierspec/redundancy.hpp"
#include "tierspec/scenario.hpp"

namespace tierspec {

namespace {

Json span_json(const SourceSpan& s) {
  Json j;
  j["file"] = s.file;
  j["line"] = s.line;
  j["column"] = s.column;
  return j;
}

void report(const Diagnostic& d, std::ostream& out, std::ostream& err) {
  err << d << "\n";
  Json j;
  j["kind"] = "diagnostic";
  j["severity"] = d.severity == Severity::Error ? "error" : "warning";
  j["location"] = span_json(d.span);
  j["message"] = d.message;
  out << j.dump() << "\n";
}

Json bindings_json(const Bindings& b) {
  Json j = Json::object();
  for (const auto& [name, v] : b) j[name] = v.str();
  return j;
}

TestBudget budget_for(const CommandOptions& opts) {
  TestBudget b;
  if (opts.seed) b.seed = *opts.seed;
  b.random_count = opts.random_count;
  for (const auto& g : opts.grid) b.grid.set(g);
  return b;
}

}  // namespace

int prepare_workspace(Workspace& ws, const CommandOptions& opts, std::ostream& out,
                      std::ostream& err) {
  try {
    ws.load(opts.paths);
    const LayeringReport layers = check_layering(ws.units());
    for (const auto& v : layers.violations)
      report(Diagnostic{Severity::Error, v.span, v.message()}, out, err);
    if (!layers.ok()) return kExitSpec;
    ws.bind();
    ws.trait_theories();
  } catch (const SpecError& e) {
    for (const auto& d : ws.lint().items()) report(d, out, err);
    report(e.diagnostic(), out, err);
    return kExitSpec;
  }
  for (const auto& d : ws.lint().items()) report(d, out, err);
  return ws.lint().has_errors() ? kExitSpec : kExitOk;
}

namespace {

WorkspaceOptions ws_options(const CommandOptions& opts) {
  WorkspaceOptions w;
  w.lib_dir = opts.lib;
  w.paper_literal = opts.paper_literal;
  return w;
}

}  // namespace

int cmd_check(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  Workspace ws(ws_options(opts));
  const int rc = prepare_workspace(ws, opts, out, err);
  Json j;
  j["kind"] = "check";
  j["status"] = rc == kExitOk ? "ok" : "error";
  j["units"] = ws.units().size();
  out << j.dump() << "\n";
  return rc;
}

int cmd_test(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  Workspace ws(ws_options(opts));
  if (int rc = prepare_workspace(ws, opts, out, err)) return rc;
  const TestBudget budget = budget_for(opts);

  ObligationReport ob;
  std::set<std::string> seen;
  try {
    for (const TheoryPtr& th : ws.trait_theories()) check_obligations(*th, budget, ob, &seen);
  } catch (const SpecError& e) {
    report(e.diagnostic(), out, err);
    return kExitSpec;
  }
  for (const auto& r : ob.obligations) {
    Json j;
    j["kind"] = "obligation";
    j["theory"] = r.theory;
    j["origin"] = r.origin;
    j["source"] = r.source;
    j["text"] = r.text;
    j["location"] = span_json(r.span);
    j["cases"] = r.cases;
    j["verdict"] = r.verdict;
    if (!r.counterexample.empty()) j["counterexample"] = bindings_json(r.counterexample);
    if (!r.detail.empty()) j["detail"] = r.detail;
    out << j.dump() << "\n";
    if (r.verdict == "fail" || r.verdict == "error")
      err << r.span.str() << ": obligation " << r.verdict << ": " << r.text
          << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
  }
  for (const auto& p : ob.partitions) {
    Json j;
    j["kind"] = "partition";
    j["sort"] = p.sort;
    j["observers"] = p.observers;
    j["pairs"] = p.pairs;
    j["checks"] = p.checks;
    j["verdict"] = p.verdict;
    if (!p.detail.empty()) j["detail"] = p.detail;
    out << j.dump() << "\n";
  }
  for (const auto& g : ob.generated) {
    Json j;
    j["kind"] = "generated";
    j["sort"] = g.sort;
    j["ops"] = g.ops;
    j["verdict"] = "assumed";
    out << j.dump() << "\n";
  }

  RedundancyReport red;
  if (ws.interaction()) {
    RedundancyOptions ro;
    ro.samples = opts.samples;
    if (opts.seed) ro.seed = *opts.seed;
    ro.grid = budget.grid;
    ro.policy.seed = ro.seed;
    if (opts.perm_samples) ro.policy.perm_samples = *opts.perm_samples;
    ro.policy.while_cap = opts.while_cap;
    try {
      red = check_redundancy(ws, ro);
    } catch (const SpecError& e) {
      report(e.diagnostic(), out, err);
      return kExitSpec;
    } catch (const ContractViolation& v) {
      // Raised while preparing samples.
      err << "redundancy: " << v.what() << "\n";
      return kExitViolation;
    }
  }
  for (const auto& c : red.cases) {
    if (c.verdict == "pass") continue;
    Json j;
    j["kind"] = "redundancy-case";
    j["class"] = c.cls;
    j["method"] = c.method;
    j["sample"] = c.sample;
    j["verdict"] = c.verdict;
    if (!c.violation.empty()) j["violation"] = c.violation;
    j["detail"] = c.detail;
    out << j.dump() << "\n";
    if (c.verdict == "fail")
      err << "redundancy fail: " << c.cls << "." << c.method << " on sample " << c.sample
          << ": " << c.detail << "\n";
  }
  for (const auto& m : red.methods) {
    Json j;
    j["kind"] = "redundancy";
    j["class"] = m.cls;
    j["method"] = m.method;
    j["passed"] = m.passed;
    j["failed"] = m.failed;
    j["skipped"] = m.skipped;
    j["verdict"] = m.verdict;
    out << j.dump() << "\n";
  }
  for (const auto& i : red.independence) {
    Json j;
    j["kind"] = "independence";
    j["class"] = i.cls;
    j["method"] = i.method;
    j["stores"] = i.stores;
    j["permutations"] = i.permutations;
    j["verdict"] = i.verdict;
    if (!i.detail.empty()) j["detail"] = i.detail;
    out << j.dump() << "\n";
  }

  const std::size_t failures = ob.failures();
  Json s;
  s["kind"] = "summary";
  s["obligations"] = ob.obligations.size();
  s["failures"] = failures;
  s["redundancy"] = red.ok() ? "pass" : "fail";
  out << s.dump() << "\n";
  if (failures) return kExitSpec;
  return red.ok() ? kExitOk : kExitViolation;
}

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  Workspace ws(ws_options(opts));
  std::ostringstream sink;  // diagnostics only; stdout carries the trace
  if (int rc = prepare_workspace(ws, opts, sink, err)) return rc;
  ScenarioOutcome outcome;
  try {
    const Scenario s = load_scenario(opts.scenario);
    ScenarioOverrides o;
    o.seed = opts.seed;
    o.perm_samples = opts.perm_samples;
    o.while_cap = opts.while_cap;
    outcome = run_scenario(s, ws, o);
  } catch (const SpecError& e) {
    err << e.diagnostic() << "\n";
    return kExitSpec;
  }
  if (!opts.trace_out.empty()) {
    std::ofstream f(opts.trace_out, std::ios::binary);
    if (!f) {
      err << "cannot write " << opts.trace_out << "\n";
      return kExitSpec;
    }
    outcome.trace.write(f);
  } else {
    outcome.trace.write(out);
  }
  if (!outcome.message.empty()) err << outcome.message << "\n";
  return outcome.exit_code;
}

int cmd_categorize(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  Workspace ws(ws_options(opts));
  std::ostringstream sink;
  if (int rc = prepare_workspace(ws, opts, opts.text ? sink : out, err)) return rc;
  for (const SourceUnit& u : ws.units()) {
    if (u.kind != UnitKind::Role) continue;
    const BoundRole* role = ws.role(u.name);
    if (!role) continue;
    std::map<std::string, std::vector<std::string>> groups;
    std::vector<std::string> order;
    for (const MethodContract& m : role->methods) {
      const Category c = categorize(m, *role->theory);
      const std::string label = c.label();
      if (!groups.count(label)) order.push_back(label);
      groups[label].push_back(m.name);
      if (c.non_canonical)
        err << m.span.str() << ": warning: " << role->name << "." << m.name
            << " returns a value and changes state (non-canonical)\n";
      if (opts.text) {
        out << role->name << "." << m.name << " " << label
            << (c.non_canonical ? " non-canonical" : "") << "\n";
        continue;
      }
      Json j;
      j["kind"] = "category";
      j["role"] = role->name;
      j["method"] = m.name;
      j["category"] = label;
      j["v"] = c.v;
      j["o"] = c.o;
      j["e"] = c.e;
      j["non_canonical"] = c.non_canonical;
      out << j.dump() << "\n";
    }
    // Canonical combinations first, in the order O, O-E, V.
    std::stable_sort(order.begin(), order.end(), [](const std::string& a, const std::string& b) {
      static const std::vector<std::string> rank{"O", "O-E", "V"};
      auto pos = [](const std::string& l) {
        return std::find(rank.begin(), rank.end(), l) - rank.begin();
      };
      return pos(a) < pos(b);
    });
    if (opts.text) {
      for (const auto& label : order) {
        out << role->name << " " << label << ": {";
        for (std::size_t i = 0; i < groups[label].size(); ++i)
          out << (i ? ", " : "") << groups[label][i];
        out << "}\n";
      }
      continue;
    }
    Json j;
    j["kind"] = "role";
    j["role"] = role->name;
    for (const auto& label : order) j[label] = groups[label];
    out << j.dump() << "\n";
  }
  return kExitOk;
}

}  // namespace tierspec
