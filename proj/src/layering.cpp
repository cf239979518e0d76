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

#include "tierspec/layering.hpp"

#include <map>
#include <set>

namespace tierspec {

namespace {

using Names = std::map<std::string, std::string>;  // name -> what it is

void scan(const TermPtr& t, const Names& names, const std::string& unit,
          LayeringReport& out) {
  if (!t) return;
  if (t->kind == TermKind::Apply || t->kind == TermKind::Ident) {
    auto it = names.find(t->name);
    if (it != names.end()) out.violations.push_back({unit, t->name, it->second, t->span});
  }
  for (const auto& a : t->args) scan(a, names, unit, out);
}

}  // namespace

std::string LayeringViolation::message() const {
  return "layering: " + unit + " refers to " + target + " '" + name +
         "' of a higher tier; there are no up-calls";
}

LayeringReport check_layering(const std::vector<SourceUnit>& units) {
  Names upper;  // everything above tier 1
  Names interaction_only;
  std::set<std::string> traits;  // `uses`/`includes` resolve to these first
  for (const SourceUnit& u : units)
    if (u.kind == UnitKind::Trait) traits.insert(u.name);
  for (const SourceUnit& u : units) {
    if (u.kind == UnitKind::Role) {
      upper.emplace(u.name, "role");
      for (const auto& m : u.role().methods)
        if (m.name != u.name) upper.emplace(m.name, "role method");
    } else if (u.kind == UnitKind::Interaction) {
      upper.emplace(u.name, "interaction");
      interaction_only.emplace(u.name, "interaction");
      for (const auto& c : u.interaction().classes)
        for (const auto& m : c.methods) {
          if (m.name == c.name) continue;  // constructors share the sort's name
          upper.emplace(m.name, "interaction method");
          interaction_only.emplace(m.name, "interaction method");
        }
    }
  }
  // Roles may not name any method at all: contracts are tier-1 terms.
  Names methods = interaction_only;
  for (const auto& [n, what] : upper)
    if (what != "role" && what != "interaction") methods.emplace(n, what);

  LayeringReport out;
  for (const SourceUnit& u : units) {
    if (u.kind == UnitKind::Trait) {
      const TraitAst& t = u.trait();
      for (const auto& inc : t.includes) {
        auto it = upper.find(inc.name);
        if (it != upper.end() && !traits.count(inc.name)) out.violations.push_back({u.name, inc.name, it->second, inc.span});
      }
      for (const auto& op : t.ops) {
        auto it = upper.find(op.name);
        if (it != upper.end() && it->second != "role" && it->second != "interaction")
          out.violations.push_back({u.name, op.name, it->second, op.span});
      }
      for (const auto* groups : {&t.asserts, &t.implies})
        for (const auto& g : *groups)
          for (const auto& e : g.equations) {
            scan(e.lhs, upper, u.name, out);
            scan(e.rhs, upper, u.name, out);
          }
    } else if (u.kind == UnitKind::Role) {
      const RoleAst& r = u.role();
      auto it = upper.find(r.uses);
      if (it != upper.end() && !traits.count(r.uses)) out.violations.push_back({u.name, r.uses, it->second, r.uses_span});
      for (const auto& m : r.methods) {
        scan(m.requires_clause, methods, u.name, out);
        scan(m.ensures_clause, methods, u.name, out);
        for (const auto& f : m.modifies) scan(f, methods, u.name, out);
      }
    }
  }
  return out;
}

}  // namespace tierspec
