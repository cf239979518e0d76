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

#include <sstream>

#include "tierspec/parser.hpp"

namespace tierspec {

std::string render_op_name(const std::string& name) {
  if (name.size() > 4 && name.rfind("__", 0) == 0 &&
      name.compare(name.size() - 2, 2, "__") == 0)
    return "__ " + name.substr(2, name.size() - 4) + " __";
  return name;
}

namespace {

void join_sorts(std::ostream& os, const std::vector<std::string>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
}

void render_vars(std::ostream& os, const std::vector<VarDecl>& vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    os << (i ? ", " : "") << vars[i].name << ": " << vars[i].sort;
}

void render_groups(std::ostream& os, const std::vector<EquationGroup>& groups) {
  for (const auto& g : groups) {
    std::string indent = "    ";
    if (!g.vars.empty()) {
      os << "    forall ";
      render_vars(os, g.vars);
      os << '\n';
      indent = "      ";
    }
    for (const auto& eq : g.equations) {
      os << indent << render_term(eq.lhs);
      if (eq.rhs) os << " == " << render_term(eq.rhs);
      os << ";\n";
    }
  }
}

void render_clause(std::ostream& os, const SortClause& c, const char* word) {
  os << "    " << c.sort << ' ' << word << " by ";
  for (std::size_t i = 0; i < c.ops.size(); ++i)
    os << (i ? ", " : "") << render_op_name(c.ops[i]);
  os << ";\n";
}

void render_trait(std::ostream& os, const TraitAst& t) {
  os << t.name;
  if (!t.formals.empty()) {
    os << '(';
    join_sorts(os, t.formals);
    os << ')';
  }
  os << " : trait\n";
  if (!t.includes.empty()) {
    os << "  includes ";
    for (std::size_t i = 0; i < t.includes.size(); ++i) {
      const TraitRef& r = t.includes[i];
      os << (i ? ", " : "") << r.name;
      if (r.args.empty()) continue;
      os << '(';
      for (std::size_t k = 0; k < r.args.size(); ++k) {
        os << (k ? ", " : "") << render_op_name(r.args[k].actual);
        if (!r.args[k].replaced.empty()) os << " for " << render_op_name(r.args[k].replaced);
      }
      os << ')';
    }
    os << '\n';
  }
  for (const auto& d : t.tuples) {
    os << "  " << d.sort << " tuple of ";
    for (std::size_t i = 0; i < d.fields.size(); ++i)
      os << (i ? ", " : "") << d.fields[i].name << ": " << d.fields[i].sort;
    os << '\n';
  }
  if (!t.ops.empty()) {
    os << "  introduces\n";
    for (const auto& op : t.ops) {
      os << "    " << render_op_name(op.name) << " : ";
      join_sorts(os, op.domain);
      os << (op.domain.empty() ? "-> " : " -> ") << op.range << '\n';
    }
  }
  if (!t.partitions.empty() || !t.generators.empty() || !t.asserts.empty()) {
    os << "  asserts\n";
    for (const auto& c : t.partitions) render_clause(os, c, "partitioned");
    for (const auto& c : t.generators) render_clause(os, c, "generated");
    render_groups(os, t.asserts);
  }
  if (!t.implies.empty()) {
    os << "  implies\n";
    render_groups(os, t.implies);
  }
}

void render_params(std::ostream& os, const std::vector<Param>& params) {
  os << '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    os << (i ? ", " : "") << params[i].name;
    if (!params[i].sort.empty()) os << ": " << params[i].sort;
  }
  os << ')';
}

void render_role(std::ostream& os, const RoleAst& r) {
  os << r.name << " : role specification\n\nuses " << r.uses << ";\n";
  for (const auto& m : r.methods) {
    os << '\n';
    if (m.return_sort) os << *m.return_sort << ' ';
    os << m.name;
    render_params(os, m.params);
    os << " {\n";
    if (m.constructs)
      os << "  " << (m.constructs_keyword.empty() ? "constructs" : m.constructs_keyword)
         << " self;\n";
    if (m.requires_clause) os << "  requires " << render_term(m.requires_clause) << ";\n";
    if (m.has_modifies && !m.modifies.empty()) {
      os << "  modifies ";
      for (std::size_t i = 0; i < m.modifies.size(); ++i)
        os << (i ? ", " : "") << render_term(m.modifies[i]);
      os << ";\n";
    }
    os << "  ensures " << render_term(m.ensures_clause) << ";\n}\n";
  }
}

void render_interaction(std::ostream& os, const InteractionAst& s) {
  if (!s.name.empty()) os << s.name << " : interaction\n";
  for (const auto& c : s.classes) {
    os << "\nclass " << c.name << " {\n";
    for (const auto& m : c.methods) {
      os << "  method " << m.name;
      render_params(os, m.params);
      os << " { " << render_action(*m.body) << " }\n";
    }
    os << "}\n";
  }
}

}  // namespace

std::string render(const SourceUnit& unit) {
  std::ostringstream os;
  switch (unit.kind) {
    case UnitKind::Trait:
      render_trait(os, unit.trait());
      break;
    case UnitKind::Role:
      render_role(os, unit.role());
      break;
    case UnitKind::Interaction:
      render_interaction(os, unit.interaction());
      break;
  }
  return os.str();
}

}  // namespace tierspec
