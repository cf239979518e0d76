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

#include "tierspec/theory.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tierspec/checker.hpp"
#include "tierspec/parser.hpp"

#ifndef TIERSPEC_DEFAULT_LIB
#define TIERSPEC_DEFAULT_LIB "traitlib"
#endif

namespace tierspec {

int TupleSort::field_index(const std::string& field) const {
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == field) return static_cast<int>(i);
  return -1;
}

std::vector<int> FlatTheory::lookup(const std::string& op_name) const {
  auto it = by_name_.find(op_name);
  return it == by_name_.end() ? std::vector<int>{} : it->second;
}

const TupleSort* FlatTheory::tuple(const std::string& sort) const {
  auto it = tuples.find(sort);
  return it == tuples.end() ? nullptr : &it->second;
}

std::optional<std::string> FlatTheory::element_sort(const std::string& set_sort) const {
  for (const auto& op : ops)
    if (op.native == Native::SetIn && op.domain.size() == 2 && op.domain[1] == set_sort)
      return op.domain[0];
  return std::nullopt;
}

std::vector<int> FlatTheory::env_constants() const {
  std::vector<int> out;
  for (const auto& op : ops)
    if (op.env) out.push_back(op.id);
  return out;
}

// ---------------------------------------------------------------------------

void TraitLibrary::add(const SourceUnit& unit) {
  if (unit.kind != UnitKind::Trait) return;
  units_[unit.name] = unit;
  builtin_.erase(unit.name);
}

const SourceUnit* TraitLibrary::find(const std::string& name) const {
  auto it = units_.find(name);
  return it == units_.end() ? nullptr : &it->second;
}

std::vector<std::string> TraitLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& [name, unit] : units_) out.push_back(name);
  return out;
}

void load_builtin_traits(TraitLibrary& lib, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw SpecError({dir, 0, 0, 0, 0}, "trait library directory not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".trait") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    SourceUnit u = parse_trait(ss.str(), p.string());
    lib.add(u);
    lib.mark_builtin(u.name);
  }
}

std::string default_library_dir(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("TIERSPEC_LIB"); env && *env) return env;
  return TIERSPEC_DEFAULT_LIB;
}

// ---------------------------------------------------------------------------
// Sort names
// ---------------------------------------------------------------------------

namespace {

/// Splits `Name[a,b[c]]` into `Name` and its top-level arguments.
void split_sort(const std::string& s, std::string& head, std::vector<std::string>& args) {
  const auto open = s.find('[');
  if (open == std::string::npos || s.back() != ']') {
    head = s;
    return;
  }
  head = s.substr(0, open);
  int depth = 0;
  std::string cur;
  for (std::size_t i = open + 1; i + 1 < s.size(); ++i) {
    const char c = s[i];
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  args.push_back(cur);
}

}  // namespace

std::string substitute_sort(const std::string& sort,
                            const std::map<std::string, std::string>& map) {
  if (auto it = map.find(sort); it != map.end()) return it->second;
  std::string head;
  std::vector<std::string> args;
  split_sort(sort, head, args);
  if (args.empty()) return sort;
  std::string out = head + '[';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += substitute_sort(args[i], map);
  }
  out += ']';
  if (auto it = map.find(out); it != map.end()) return it->second;
  return out;
}

// ---------------------------------------------------------------------------
// Include expansion
// ---------------------------------------------------------------------------

namespace {

struct PendingOp {
  OpDecl decl;
  std::string origin;
};

struct PendingEquation {
  std::vector<VarDecl> vars;
  TermPtr lhs;
  TermPtr rhs;
  SourceSpan span;
  std::string origin;
  bool implied = false;
};

TermPtr rename_term(const TermPtr& t, const std::map<std::string, std::string>& sorts,
                    const std::map<std::string, std::string>& ops) {
  if (!t) return t;
  auto c = std::make_shared<Term>(*t);
  if (c->kind == TermKind::Apply) {
    if (auto it = ops.find(c->name); it != ops.end()) c->name = it->second;
  }
  if (c->kind == TermKind::Ident) {
    if (auto it = ops.find(c->name); it != ops.end()) c->name = it->second;
  }
  if (!c->annotation.empty()) c->annotation = substitute_sort(c->annotation, sorts);
  for (auto& b : c->binders) b.sort = substitute_sort(b.sort, sorts);
  for (auto& a : c->args) a = rename_term(a, sorts, ops);
  return c;
}

struct Accum {
  std::vector<PendingOp> ops;
  std::vector<TupleDecl> tuples;
  std::vector<SortClause> partitions;
  std::vector<SortClause> generators;
  std::vector<PendingEquation> equations;
  std::vector<std::string> traits;

  std::set<std::string> sorts() const {
    std::set<std::string> out;
    auto add = [&](const std::string& s) {
      out.insert(s);
      std::string head;
      std::vector<std::string> args;
      split_sort(s, head, args);
      for (const auto& a : args) out.insert(a);
    };
    for (const auto& op : ops) {
      for (const auto& d : op.decl.domain) add(d);
      add(op.decl.range);
    }
    for (const auto& t : tuples) {
      add(t.sort);
      for (const auto& f : t.fields) add(f.sort);
    }
    for (const auto& e : equations)
      for (const auto& v : e.vars) add(v.sort);
    return out;
  }

  bool declares_op(const std::string& name) const {
    return std::any_of(ops.begin(), ops.end(),
                       [&](const PendingOp& o) { return o.decl.name == name; });
  }

  void rename(const std::map<std::string, std::string>& map) {
    auto s = [&](const std::string& x) { return substitute_sort(x, map); };
    for (auto& op : ops) {
      if (auto it = map.find(op.decl.name); it != map.end()) op.decl.name = it->second;
      for (auto& d : op.decl.domain) d = s(d);
      op.decl.range = s(op.decl.range);
    }
    for (auto& t : tuples) {
      t.sort = s(t.sort);
      for (auto& f : t.fields) f.sort = s(f.sort);
    }
    for (auto* clauses : {&partitions, &generators}) {
      for (auto& c : *clauses) {
        c.sort = s(c.sort);
        for (auto& o : c.ops)
          if (auto it = map.find(o); it != map.end()) o = it->second;
      }
    }
    for (auto& e : equations) {
      for (auto& v : e.vars) v.sort = s(v.sort);
      e.lhs = rename_term(e.lhs, map, map);
      e.rhs = rename_term(e.rhs, map, map);
    }
  }

  void merge(const Accum& other) {
    for (const auto& op : other.ops) add_op(op);
    for (const auto& t : other.tuples) add_tuple(t);
    for (const auto& c : other.partitions) add_clause(partitions, c);
    for (const auto& c : other.generators) add_clause(generators, c);
    for (const auto& e : other.equations) add_equation(e);
    for (const auto& t : other.traits)
      if (std::find(traits.begin(), traits.end(), t) == traits.end()) traits.push_back(t);
  }

  void add_op(const PendingOp& op) {
    for (const auto& o : ops)
      if (o.decl.name == op.decl.name && o.decl.domain == op.decl.domain &&
          o.decl.range == op.decl.range)
        return;
    ops.push_back(op);
  }

  void add_tuple(const TupleDecl& t) {
    for (const auto& existing : tuples) {
      if (existing.sort != t.sort) continue;
      bool same = existing.fields.size() == t.fields.size();
      for (std::size_t i = 0; same && i < t.fields.size(); ++i)
        same = existing.fields[i].name == t.fields[i].name &&
               existing.fields[i].sort == t.fields[i].sort;
      if (!same)
        throw SpecError(t.span, "conflicting tuple declarations for sort " + t.sort +
                                    " (other at " + existing.span.str() + ")");
      return;
    }
    tuples.push_back(t);
  }

  static void add_clause(std::vector<SortClause>& to, const SortClause& c) {
    for (const auto& x : to)
      if (x.sort == c.sort && x.ops == c.ops) return;
    to.push_back(c);
  }

  void add_equation(const PendingEquation& e) {
    for (const auto& x : equations) {
      if (x.implied != e.implied || !same_term(x.lhs, e.lhs) || !same_term(x.rhs, e.rhs) ||
          x.vars.size() != e.vars.size())
        continue;
      bool same = true;
      for (std::size_t i = 0; same && i < e.vars.size(); ++i)
        same = same_decl(x.vars[i], e.vars[i]);
      if (same) return;
    }
    equations.push_back(e);
  }
};

class Expander {
 public:
  explicit Expander(const TraitLibrary& lib) : lib_(lib) {}

  Accum expand(const std::string& name, const std::vector<std::string>& actuals,
               const SourceSpan& site) {
    const SourceUnit* unit = lib_.find(name);
    if (!unit) throw SpecError(site, "unknown trait '" + name + "'");
    if (std::find(stack_.begin(), stack_.end(), name) != stack_.end()) {
      std::string cycle;
      for (const auto& s : stack_) cycle += s + " -> ";
      throw SpecError(site, "include cycle: " + cycle + name);
    }
    const TraitAst& t = unit->trait();
    if (actuals.size() > t.formals.size())
      throw SpecError(site, "trait '" + name + "' takes " + std::to_string(t.formals.size()) +
                                " parameter(s), given " + std::to_string(actuals.size()));
    std::map<std::string, std::string> formals;
    for (std::size_t i = 0; i < actuals.size(); ++i) formals[t.formals[i]] = actuals[i];

    stack_.push_back(name);
    Accum acc;
    for (const auto& inc : t.includes) {
      std::vector<std::string> positional;
      std::map<std::string, std::string> renames;
      for (const auto& arg : inc.args) {
        if (arg.replaced.empty())
          positional.push_back(substitute_sort(arg.actual, formals));
        else
          renames[substitute_sort(arg.replaced, formals)] = substitute_sort(arg.actual, formals);
      }
      Accum sub = expand(inc.name, positional, inc.span);
      const auto sorts = sub.sorts();
      for (const auto& [from, to] : renames)
        if (!sorts.count(from) && !sub.declares_op(from))
          throw SpecError(inc.span, "renaming '" + to + " for " + from + "': trait '" +
                                        inc.name + "' has no sort or operator '" + from + "'");
      if (!renames.empty()) sub.rename(renames);
      acc.merge(sub);
    }
    stack_.pop_back();

    Accum own;
    own.traits.push_back(name);
    for (const auto& op : t.ops) own.ops.push_back({op, name});
    own.tuples = t.tuples;
    own.partitions = t.partitions;
    own.generators = t.generators;
    auto add_groups = [&](const std::vector<EquationGroup>& groups, bool implied) {
      for (const auto& g : groups)
        for (const auto& eq : g.equations)
          own.equations.push_back({g.vars, eq.lhs, eq.rhs, eq.span, name, implied});
    };
    add_groups(t.asserts, false);
    add_groups(t.implies, true);
    if (!formals.empty()) own.rename(formals);
    acc.merge(own);
    return acc;
  }

 private:
  const TraitLibrary& lib_;
  std::vector<std::string> stack_;
};

// ---------------------------------------------------------------------------
// Theory construction
// ---------------------------------------------------------------------------

Native native_for(const std::string& origin, const OpDecl& d) {
  struct Entry {
    const char* trait;
    const char* name;
    std::size_t arity;
    Native native;
  };
  static const Entry table[] = {
      {"Boolean", "true", 0, Native::True},       {"Boolean", "false", 0, Native::False},
      {"Boolean", "~__", 1, Native::Not},         {"Boolean", "__/\\__", 2, Native::And},
      {"Boolean", "__\\/__", 2, Native::Or},      {"Boolean", "__=>__", 2, Native::Implies},
      {"Boolean", "__<=>__", 2, Native::Iff},     {"Integer", "__+__", 2, Native::Add},
      {"Integer", "__-__", 2, Native::Sub},       {"Integer", "__*__", 2, Native::Mul},
      {"Integer", "__div__", 2, Native::Div},     {"Integer", "__mod__", 2, Native::Mod},
      {"Integer", "-__", 1, Native::Neg},         {"Integer", "__<__", 2, Native::Lt},
      {"Integer", "__<=__", 2, Native::Le},       {"Integer", "__>__", 2, Native::Gt},
      {"Integer", "__>=__", 2, Native::Ge},       {"String", "len", 1, Native::StrLen},
      {"Set", "{}", 0, Native::SetEmpty},         {"Set", "insert", 2, Native::SetInsert},
      {"Set", "delete", 2, Native::SetDelete},    {"Set", "__in__", 2, Native::SetIn},
      {"Set", "__notin__", 2, Native::SetNotIn},  {"Set", "|__|", 1, Native::SetSize},
      {"MutableObj", "__!__", 2, Native::ValueIn},
  };
  for (const auto& e : table)
    if (origin == e.trait && d.name == e.name && d.domain.size() == e.arity) return e.native;
  return Native::None;
}

bool is_pattern(const Term& t, const std::vector<VarDecl>& vars) {
  switch (t.kind) {
    case TermKind::Ident:
      return t.op < 0 && std::any_of(vars.begin(), vars.end(),
                                     [&](const VarDecl& v) { return v.name == t.name; });
    case TermKind::Const:
      return true;
    case TermKind::Tuple:
      return std::all_of(t.args.begin(), t.args.end(),
                         [&](const TermPtr& a) { return is_pattern(*a, vars); });
    default:
      return false;
  }
}

void free_vars(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (t.kind == TermKind::Ident && t.op < 0) {
    if (std::find(bound.begin(), bound.end(), t.name) == bound.end()) out.insert(t.name);
    return;
  }
  const std::size_t mark = bound.size();
  if (t.kind == TermKind::Quantifier)
    for (const auto& b : t.binders) bound.push_back(b.name);
  for (const auto& a : t.args) free_vars(*a, bound, out);
  bound.resize(mark);
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  if (!t) return out;
  std::vector<std::string> bound;
  free_vars(*t, bound, out);
  return out;
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// A user-defined (rule-defined) application with pattern arguments.
bool definable_head(const Term& t, const FlatTheory& th, const std::vector<VarDecl>& vars) {
  if (t.kind != TermKind::Apply || t.op < 0 || t.builtin != Builtin::None) return false;
  if (th.op(t.op).native != Native::None) return false;
  return std::all_of(t.args.begin(), t.args.end(),
                     [&](const TermPtr& a) { return is_pattern(*a, vars); });
}

bool is_var(const TermPtr& t) { return t->kind == TermKind::Ident && t->op < 0; }

}  // namespace

class TheoryBuilder {
 public:
  TheoryBuilder(const TraitLibrary& lib, Diagnostics* lint) : lib_(lib), lint_(lint) {}

  TheoryPtr build(const std::string& root, const SourceSpan& site) {
    Expander ex(lib_);
    Accum acc;
    if (lib_.find("Boolean") && root != "Boolean") acc = ex.expand("Boolean", {}, site);
    acc.merge(ex.expand(root, {}, site));

    auto th = std::make_shared<FlatTheory>();
    th->name = root;
    th->traits = acc.traits;
    for (const char* s : {"Bool", "Int", "String", "State"}) th->sorts.insert(s);
    for (const auto& t : acc.tuples) {
      if (t.fields.empty()) throw SpecError(t.span, "tuple sort " + t.sort + " has no fields");
      th->tuples[t.sort] = {t.sort, t.fields};
      th->sorts.insert(t.sort);
      for (const auto& f : t.fields) th->sorts.insert(f.sort);
    }
    for (const auto& p : acc.ops) {
      OpInfo op;
      op.id = static_cast<int>(th->ops.size());
      op.name = p.decl.name;
      op.domain = p.decl.domain;
      op.range = p.decl.range;
      op.origin = p.origin;
      op.span = p.decl.span;
      if (lib_.builtin(p.origin)) op.native = native_for(p.origin, p.decl);
      for (const auto& s : op.domain) th->sorts.insert(s);
      th->sorts.insert(op.range);
      if (op.native == Native::ValueIn) th->object_sorts[op.domain[0]] = op.range;
      th->by_name_[op.name].push_back(op.id);
      th->ops.push_back(std::move(op));
    }
    // Objects denote themselves when compared; they are never tuples.
    for (const auto& [obj, value] : th->object_sorts)
      if (th->tuples.count(obj))
        throw SpecError(site, "object sort " + obj + " is also declared as a tuple sort");
    th->rules_by_op.resize(th->ops.size());

    for (const auto& c : acc.partitions) add_partition(*th, c);
    th->generator_clauses = acc.generators;
    for (const auto& c : acc.generators) {
      if (!th->has_sort(c.sort)) throw SpecError(c.span, "unknown sort '" + c.sort + "'");
      for (const auto& o : c.ops)
        if (th->lookup(o).empty()) throw SpecError(c.span, "unknown operator '" + o + "'");
    }

    std::vector<Axiom> checked;
    for (const auto& e : acc.equations) checked.push_back(check_equation(*th, e));
    detect_link(*th, checked, acc.equations);
    orient(*th, checked, acc.equations);
    for (auto& op : th->ops)
      op.env = op.domain.empty() && op.native == Native::None &&
               th->rules_by_op[static_cast<std::size_t>(op.id)].empty();
    return th;
  }

 private:
  void add_partition(FlatTheory& th, const SortClause& c) {
    if (!th.has_sort(c.sort)) throw SpecError(c.span, "unknown sort '" + c.sort + "'");
    std::vector<int> observers;
    for (const auto& name : c.ops) {
      int found = -1;
      for (int id : th.lookup(name))
        if (th.op(id).domain.size() == 1 && th.op(id).domain[0] == c.sort) found = id;
      if (found < 0)
        throw SpecError(c.span, "'" + name + "' is not an observer of sort " + c.sort);
      observers.push_back(found);
    }
    th.partition_clauses.push_back(c);
    auto& list = th.partitions[c.sort];
    for (int id : observers)
      if (std::find(list.begin(), list.end(), id) == list.end()) list.push_back(id);
  }

  Axiom check_equation(FlatTheory& th, const PendingEquation& e) {
    SortContext ctx;
    ctx.lint = lint_;
    for (const auto& v : e.vars) {
      if (!th.has_sort(v.sort))
        throw SpecError(v.span.known() ? v.span : e.span, "unknown sort '" + v.sort + "'");
      ctx.bind(v.name, v.sort);
    }
    Axiom ax;
    ax.vars = e.vars;
    ax.span = e.span;
    ax.origin = e.origin;
    if (e.rhs) {
      try {
        ax.lhs = check_term(e.lhs, th, ctx);
        ax.rhs = check_term(e.rhs, th, ctx, ax.lhs->sort);
      } catch (const SpecError&) {
        ax.rhs = check_term(e.rhs, th, ctx);
        ax.lhs = check_term(e.lhs, th, ctx, ax.rhs->sort);
      }
      ax.text = render_term(e.lhs) + " == " + render_term(e.rhs);
    } else {
      ax.lhs = check_formula(e.lhs, th, ctx);
      ax.text = render_term(e.lhs);
    }
    // Keep only the variables the equation actually uses.
    const auto used = free_vars(ax.lhs);
    const auto used_r = free_vars(ax.rhs);
    std::vector<VarDecl> vars;
    for (const auto& v : ax.vars)
      if (used.count(v.name) || used_r.count(v.name)) vars.push_back(v);
    ax.vars = std::move(vars);
    return ax;
  }

  // `owner(z) = m == z in members(m)` ties two operators to the store's
  // attachment relation.
  void detect_link(FlatTheory& th, std::vector<Axiom>& axioms,
                   const std::vector<PendingEquation>& src) {
    for (std::size_t i = 0; i < axioms.size(); ++i) {
      Axiom& ax = axioms[i];
      if (src[i].implied || !ax.rhs) continue;
      const Term& l = *ax.lhs;
      const Term& r = *ax.rhs;
      if (l.builtin != Builtin::Eq || r.kind != TermKind::Apply || r.op < 0 ||
          th.op(r.op).native != Native::SetIn)
        continue;
      const Term& own = *l.args[0];
      if (own.kind != TermKind::Apply || own.op < 0 || own.args.size() != 1 ||
          !is_var(own.args[0]) || !is_var(l.args[1]))
        continue;
      const Term& mem = *r.args[1];
      if (!is_var(r.args[0]) || r.args[0]->name != own.args[0]->name ||
          mem.kind != TermKind::Apply || mem.op < 0 || mem.args.size() != 1 ||
          !is_var(mem.args[0]) || mem.args[0]->name != l.args[1]->name)
        continue;
      OpInfo& owner = th.ops[static_cast<std::size_t>(own.op)];
      OpInfo& members = th.ops[static_cast<std::size_t>(mem.op)];
      if (!th.is_object_sort(owner.domain[0]) || !th.is_object_sort(owner.range)) continue;
      if (th.link)
        throw SpecError(ax.span, "a second attachment relation is not supported");
      owner.native = Native::LinkOwner;
      members.native = Native::LinkMembers;
      th.link = LinkInfo{owner.id, members.id, owner.range, owner.domain[0], members.range};
    }
  }

  void orient(FlatTheory& th, std::vector<Axiom>& axioms,
              const std::vector<PendingEquation>& src) {
    struct FieldDefs {
      TermPtr app;
      std::vector<VarDecl> vars;
      std::vector<TermPtr> fields;
      SourceSpan span;
      std::string origin;
      std::vector<std::size_t> axioms;
    };
    std::vector<FieldDefs> field_defs;

    for (std::size_t i = 0; i < axioms.size(); ++i) {
      Axiom& ax = axioms[i];
      if (src[i].implied) {
        th.obligations.push_back(ax);
        continue;
      }
      const Term& l = *ax.lhs;
      if (ax.rhs && definable_head(l, th, ax.vars) && subset(free_vars(ax.rhs), free_vars(ax.lhs))) {
        add_rule(th, ax, ax.lhs, ax.rhs, nullptr);
      } else if (ax.rhs && l.builtin == Builtin::Eq && definable_head(*l.args[0], th, ax.vars) &&
                 subset(free_vars(l.args[1]), free_vars(l.args[0])) &&
                 subset(free_vars(ax.rhs), free_vars(l.args[0]))) {
        add_rule(th, ax, l.args[0], l.args[1], ax.rhs);
      } else if (!ax.rhs && l.builtin == Builtin::Eq && l.args[0]->kind == TermKind::Project &&
                 definable_head(*l.args[0]->args[0], th, ax.vars) &&
                 subset(free_vars(l.args[1]), free_vars(l.args[0]))) {
        const TermPtr& app = l.args[0]->args[0];
        const TupleSort* ts = th.tuple(app->sort);
        FieldDefs* defs = nullptr;
        for (auto& d : field_defs)
          if (same_term(d.app, app)) defs = &d;
        if (!defs) {
          field_defs.push_back({app, ax.vars, std::vector<TermPtr>(ts->fields.size()), ax.span,
                                ax.origin, {}});
          defs = &field_defs.back();
        }
        const auto idx = static_cast<std::size_t>(l.args[0]->op);
        if (!defs->fields[idx]) defs->fields[idx] = l.args[1];
        defs->axioms.push_back(th.axioms.size());
      }
      th.axioms.push_back(ax);
    }
    for (auto& d : field_defs) {
      if (std::any_of(d.fields.begin(), d.fields.end(), [](const TermPtr& f) { return !f; })) {
        if (lint_)
          lint_->warning(d.span, "fields of '" + render_term(d.app) +
                                     "' are only partly defined; no rule synthesized");
        continue;
      }
      auto tuple = std::make_shared<Term>(*make_tuple(d.fields, {}, d.span));
      tuple->sort = d.app->sort;
      tuple->checked = true;
      Axiom synth;
      synth.vars = d.vars;
      synth.span = d.span;
      synth.origin = d.origin;
      add_rule(th, synth, d.app, tuple, nullptr);
      for (auto idx : d.axioms) th.axioms[idx].defining = true;
    }
  }

  void add_rule(FlatTheory& th, Axiom& ax, const TermPtr& lhs, const TermPtr& rhs,
                const TermPtr& cond) {
    Rule r;
    r.op = lhs->op;
    r.vars = ax.vars;
    r.lhs = lhs;
    r.rhs = rhs;
    r.cond = cond;
    r.span = ax.span;
    r.origin = ax.origin;
    auto& list = th.rules_by_op[static_cast<std::size_t>(r.op)];
    for (int idx : list) {
      const Rule& other = th.rules[static_cast<std::size_t>(idx)];
      if (!other.cond && !cond && same_term(other.lhs, lhs)) r.shadowed = true;
    }
    ax.defining = !r.shadowed;
    if (!r.shadowed) list.push_back(static_cast<int>(th.rules.size()));
    th.rules.push_back(std::move(r));
  }

  const TraitLibrary& lib_;
  Diagnostics* lint_;
};

TheoryPtr flatten(const std::string& root, const TraitLibrary& lib, Diagnostics* lint,
                  const SourceSpan& use_site) {
  TheoryBuilder b(lib, lint);
  return b.build(root, use_site);
}

}  // namespace tierspec
