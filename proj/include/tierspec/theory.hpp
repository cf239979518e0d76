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

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tierspec/ast.hpp"
#include "tierspec/diagnostics.hpp"

namespace tierspec {

/// Operators whose meaning is computed by the evaluator instead of by
/// rewrite rules.
enum class Native {
  None,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Neg,
  Lt,
  Le,
  Gt,
  Ge,
  StrLen,
  SetEmpty,
  SetInsert,
  SetDelete,
  SetIn,
  SetNotIn,
  SetSize,
  ValueIn,      // o ! st
  LinkOwner,    // state-interpreted, e.g. masterOf
  LinkMembers,  // state-interpreted, e.g. zonalClocksOf
};

struct OpInfo {
  int id = -1;
  std::string name;
  std::vector<std::string> domain;
  std::string range;
  std::string origin;  // trait that declared it
  SourceSpan span;
  Native native = Native::None;
  bool env = false;  // nullary, no rules: supplied per run
};

/// `lhs -> rhs if cond`, with pattern arguments on the left.
struct Rule {
  int op = -1;
  std::vector<VarDecl> vars;
  TermPtr lhs;
  TermPtr rhs;
  TermPtr cond;  // null when unconditional
  SourceSpan span;
  std::string origin;
  bool shadowed = false;  // an earlier rule has the same left-hand side
};

/// An equation or Boolean assertion kept for bounded testing.
struct Axiom {
  std::vector<VarDecl> vars;
  TermPtr lhs;
  TermPtr rhs;  // null for a Boolean assertion
  SourceSpan span;
  std::string origin;
  std::string text;
  bool defining = false;  // turned into (or synthesized) a rewrite rule
};

struct TupleSort {
  std::string sort;
  std::vector<TupleField> fields;

  int field_index(const std::string& name) const;
};

/// The attachment relation read by the state-interpreted operators.
struct LinkInfo {
  int owner_op = -1;    // member -> owner
  int members_op = -1;  // owner -> Set[member]
  std::string owner_sort;
  std::string member_sort;
  std::string set_sort;
};

/// A trait after include expansion and renaming, sort-checked and with its
/// equations split into rewrite rules and checked axioms. Immutable once
/// built.
class FlatTheory {
 public:
  std::string name;
  std::vector<OpInfo> ops;
  std::map<std::string, TupleSort> tuples;
  std::set<std::string> sorts;
  std::vector<Rule> rules;
  std::vector<std::vector<int>> rules_by_op;
  std::map<std::string, std::vector<int>> partitions;  // sort -> observer ops
  std::vector<SortClause> partition_clauses;
  std::vector<SortClause> generator_clauses;
  std::vector<Axiom> axioms;
  std::vector<Axiom> obligations;  // from implies
  std::map<std::string, std::string> object_sorts;  // object sort -> value sort
  std::optional<LinkInfo> link;
  std::vector<std::string> traits;  // every trait expanded into this theory

  std::vector<int> lookup(const std::string& op_name) const;
  const OpInfo& op(int id) const { return ops.at(static_cast<std::size_t>(id)); }
  const TupleSort* tuple(const std::string& sort) const;
  bool has_sort(const std::string& sort) const { return sorts.count(sort) > 0; }
  bool is_object_sort(const std::string& sort) const { return object_sorts.count(sort) > 0; }
  /// Element sort of a set sort, found through its membership operator.
  std::optional<std::string> element_sort(const std::string& set_sort) const;
  std::vector<int> env_constants() const;
  bool is_partitioned(const std::string& sort) const { return partitions.count(sort) > 0; }

 private:
  std::map<std::string, std::vector<int>> by_name_;
  friend class TheoryBuilder;
};

using TheoryPtr = std::shared_ptr<const FlatTheory>;

/// Traits available for inclusion, keyed by name. Later additions replace
/// earlier ones so overlays can shadow library or corpus traits.
class TraitLibrary {
 public:
  void add(const SourceUnit& unit);
  const SourceUnit* find(const std::string& name) const;
  bool builtin(const std::string& name) const { return builtin_.count(name) > 0; }
  void mark_builtin(const std::string& name) { builtin_.insert(name); }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, SourceUnit> units_;
  std::set<std::string> builtin_;
};

/// Loads every `.trait` file of a directory into the library as built-ins.
void load_builtin_traits(TraitLibrary& lib, const std::string& dir);

/// Directory of the shipped trait library: `--lib`, then TIERSPEC_LIB,
/// then the compiled-in default.
std::string default_library_dir(const std::string& override_dir = {});

/// Expands `root` with its transitive includes, sort-checks every equation
/// and orients the defining ones. Warnings go to `lint` when given.
TheoryPtr flatten(const std::string& root, const TraitLibrary& lib,
                  Diagnostics* lint = nullptr, const SourceSpan& use_site = {});

/// Applies formal-parameter and renaming maps to a possibly compound sort
/// name such as `Obj[T]`.
std::string substitute_sort(const std::string& sort,
                            const std::map<std::string, std::string>& map);

}  // namespace tierspec
