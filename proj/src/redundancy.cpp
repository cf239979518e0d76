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

#include "tierspec/redundancy.hpp"

#include <functional>
#include <map>

namespace tierspec {

namespace {

bool has_indep(const Action& a) {
  if (a.kind == ActionKind::Indep) return true;
  for (const auto& c : a.children)
    if (has_indep(*c)) return true;
  return false;
}

}  // namespace

bool RedundancyReport::ok() const {
  for (const auto& m : methods)
    if (m.verdict == "fail") return false;
  for (const auto& i : independence)
    if (i.verdict == "fail") return false;
  return true;
}

std::vector<Store> sample_stores(const Workspace& ws, const RedundancyOptions& opts) {
  const FlatTheory& th = *ws.runtime_theory();
  ValueGenerator gen(th, opts.grid, opts.seed);
  std::vector<Store> out;
  if (!th.link) return out;
  const LinkInfo& link = *th.link;
  const std::string owner_value = th.object_sorts.at(link.owner_sort);
  const std::string member_value = th.object_sorts.at(link.member_sort);

  RunPolicy quiet = opts.policy;
  quiet.perm_samples = 0;
  Engine settle(ws, quiet);
  std::vector<std::string> settlers;
  if (const BoundInteraction* bi = ws.interaction())
    for (const auto& m : bi->methods)
      if (m.cls == link.member_sort && m.name != m.cls && m.params.empty())
        settlers.push_back(m.name);

  for (int k = 0; k < opts.samples; ++k) {
    Store s;
    for (int e : th.env_constants()) {
      const OpInfo& op = th.op(e);
      if (gen.supports(op.range)) s.set_env(op.name, gen.random(op.range));
    }
    const ObjectId owner = s.create(link.owner_sort, gen.random(owner_value), "m");
    for (int i = 0; i < k % 4; ++i) {
      const ObjectId z = s.create(link.member_sort, gen.random(member_value),
                                  "z" + std::to_string(i + 1));
      s.attach(z, owner);
    }
    if (k % 2 == 1) {
      for (ObjectId z : s.members(owner))
        for (const auto& name : settlers) settle.call(s, z, name, {});
    }
    out.push_back(std::move(s));
  }
  return out;
}

RedundancyReport check_redundancy(const Workspace& ws, const RedundancyOptions& opts) {
  RedundancyReport report;
  const BoundInteraction* bi = ws.interaction();
  if (!bi) return report;
  const FlatTheory& th = *ws.runtime_theory();
  const std::vector<Store> stores = sample_stores(ws, opts);
  ValueGenerator gen(th, opts.grid, opts.seed + 1);

  for (const BoundMethod& m : bi->methods) {
    if (!m.contract) continue;
    const CompoundContract derived = derive_contract(m, ws.table(), th);
    const bool ctor = m.name == m.cls;
    RedundancySummary sum{m.cls, m.name, 0, 0, 0, {}};
    IndependenceResult indep{m.cls, m.name, 0, opts.policy.perm_samples, "pass", {}};
    const bool track_indep = has_indep(*m.body);

    for (std::size_t k = 0; k < stores.size(); ++k) {
      const Store& sample = stores[k];
      RedundancyCase rc{m.cls, m.name, static_cast<int>(k), "pass", {}, {}, {}};
      std::vector<ObjectId> receivers =
          ctor ? std::vector<ObjectId>{ObjectId{}} : sample.objects_of(m.cls);
      if (receivers.empty()) {
        rc.verdict = "skipped";
        rc.detail = "no " + m.cls + " in sample";
        ++sum.skipped;
        report.cases.push_back(std::move(rc));
        continue;
      }
      // Arguments: objects of the parameter's sort in the sample, else values.
      std::vector<Value> args;
      bool args_ok = true;
      for (const Param& p : m.params) {
        if (th.is_object_sort(p.sort)) {
          const auto objs = sample.objects_of(p.sort);
          if (objs.empty()) {
            args_ok = false;
            break;
          }
          args.push_back(Value::object(p.sort, objs.front()));
        } else {
          args.push_back(gen.random(p.sort));
        }
      }
      if (!args_ok) {
        rc.verdict = "skipped";
        rc.detail = "no argument objects in sample";
        ++sum.skipped;
        report.cases.push_back(std::move(rc));
        continue;
      }

      Store store = sample;
      Engine engine(ws, opts.policy);
      ExecRecord root;
      engine.set_recorder(&root);
      ObjectId self = receivers.front();
      try {
        if (ctor) {
          const std::string vsort = th.object_sorts.at(m.cls);
          self = engine.construct(store, m.cls, args, gen.random(vsort), "fresh");
        } else {
          engine.call(store, self, m.name, args);
        }
        Bindings b{{"self", Value::object(m.cls, self)}};
        for (std::size_t i = 0; i < m.params.size(); ++i) b.emplace_back(m.params[i].name, args[i]);
        const DerivedCheck dc =
            check_derived(derived, root, sample, store, b, ws.table(), th);
        if (!dc.ok()) {
          rc.verdict = "fail";
          rc.violation = "derived";
          for (const auto& f : dc.failures) rc.detail += (rc.detail.empty() ? "" : "; ") + f;
        }
      } catch (const ContractViolation& v) {
        if (v.kind() == ViolationKind::Requires && v.method() == m.name &&
            v.receiver() == sample.name(self)) {
          rc.verdict = "skipped";
          rc.detail = "requires does not hold";
        } else {
          rc.verdict = "fail";
          rc.violation = to_string(v.kind());
          rc.detail = v.what();
          if (v.kind() == ViolationKind::Divergence) {
            indep.verdict = "fail";
            if (indep.detail.empty()) indep.detail = v.what();
          }
        }
      }
      if (rc.verdict == "fail") rc.store = sample.describe();
      if (rc.verdict == "pass") ++sum.passed;
      if (rc.verdict == "fail") ++sum.failed;
      if (rc.verdict == "skipped") ++sum.skipped;
      if (rc.verdict != "skipped") ++indep.stores;
      report.cases.push_back(std::move(rc));
    }
    sum.verdict = sum.failed ? "fail" : sum.passed ? "pass" : "vacuous";
    report.methods.push_back(std::move(sum));
    if (track_indep) report.independence.push_back(std::move(indep));
  }
  return report;
}

}  // namespace tierspec
