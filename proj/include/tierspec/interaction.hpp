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
#include <optional>
#include <string>
#include <vector>

#include "tierspec/checker.hpp"
#include "tierspec/contracts.hpp"

namespace tierspec {

/// An interaction method with its body bound: receivers and yielders are
/// sort-checked, guards are Boolean, and every invocation resolves.
struct BoundMethod {
  std::string cls;
  std::string name;
  std::vector<Param> params;  // sorts filled in from the role when omitted
  ActionPtr body;
  const MethodContract* contract = nullptr;  // same-named role method
  SourceSpan span;
};

struct BoundInteraction {
  std::string name;
  TheoryPtr theory;
  std::vector<BoundMethod> methods;
  SourceSpan span;

  const BoundMethod* find(const std::string& cls, const std::string& method) const;
};

/// What may be invoked on an object sort: role contracts first, then
/// interaction methods without a contract.
class MethodTable {
 public:
  struct Signature {
    std::vector<Param> params;
    std::optional<std::string> return_sort;
  };

  void add_role(const BoundRole* role) { roles_[role->name] = role; }
  void set_interaction(const BoundInteraction* i) { interaction_ = i; }

  const BoundRole* role(const std::string& sort) const;
  const BoundInteraction* interaction() const { return interaction_; }
  std::optional<Signature> signature(const std::string& sort, const std::string& method) const;
  const MethodContract* contract(const std::string& sort, const std::string& method) const;
  const BoundMethod* body(const std::string& sort, const std::string& method) const;

 private:
  std::map<std::string, const BoundRole*> roles_;
  const BoundInteraction* interaction_ = nullptr;
};

/// Sort-checks an action in `scope`. `self_sort` is empty where no implicit
/// receiver exists (scenario scripts). A Let whose value is an implicit-self
/// call of an operator rather than a method becomes a yielder.
ActionPtr bind_action(const ActionPtr& a, const FlatTheory& theory, const MethodTable& table,
                      const SortContext& scope, const std::string& self_sort);

/// Binds every class of an interaction against the same-named role. The
/// table must already hold the roles; interaction method signatures are
/// taken from the unit itself.
BoundInteraction bind_interaction(const SourceUnit& unit, const MethodTable& roles,
                                  Diagnostics* lint = nullptr);

}  // namespace tierspec
