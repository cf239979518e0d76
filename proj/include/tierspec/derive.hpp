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

#include <string>
#include <vector>

#include "tierspec/engine.hpp"

namespace tierspec {

/// Pre- and postcondition of an action composed from its parts by the
/// combinator tables. Terms of a component keep that component's own
/// pre/post reading; `conditions` lists the table rows the node imposes.
struct DerivedNode {
  std::string rule;  // invoke, seq, indep, choice, let, if, while
  const Action* action = nullptr;
  TermPtr pre;   // null means true
  TermPtr post;  // null means true
  std::vector<std::string> conditions;
  std::vector<DerivedNode> children;
};

struct CompoundContract {
  std::string cls;
  std::string method;
  TermPtr role_pre;   // contract of the same-named role method, if any
  TermPtr role_post;
  DerivedNode root;
};

/// Throws SpecError when an invoked method has no signature.
CompoundContract derive_contract(const BoundMethod& m, const MethodTable& table,
                                 const FlatTheory& theory);

/// Indented rendering, one node per line.
std::string render_derivation(const CompoundContract& c);

struct DerivedCheck {
  bool pre_holds = true;  // the role's requires held at entry
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks the table conditions pointwise on one recorded run of the body:
/// each component's pre/post is evaluated on the stores around it, and the
/// run's derived post must imply the role's ensures.
DerivedCheck check_derived(const CompoundContract& c, const ExecRecord& run,
                           const Store& entry, const Store& exit, const Bindings& bindings,
                           const MethodTable& table, const FlatTheory& theory);

}  // namespace tierspec
