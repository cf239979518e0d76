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
#include <utility>
#include <vector>

#include "tierspec/theory.hpp"

namespace tierspec {

/// Typing context for one term: variables in scope (innermost last) and
/// whether the state tokens `pre`, `post`, `any` may appear.
struct SortContext {
  std::vector<std::pair<std::string, std::string>> vars;
  bool state_tokens = false;
  Diagnostics* lint = nullptr;

  void bind(std::string name, std::string sort) {
    vars.emplace_back(std::move(name), std::move(sort));
  }
  const std::string* find(const std::string& name) const;
};

/// Returns a sort-annotated copy of `t`. Overloads are resolved by argument
/// sorts, then by `expected` when given. Throws SpecError on unknown
/// operators, arity or sort mismatches and ambiguity.
TermPtr check_term(const TermPtr& t, const FlatTheory& theory, const SortContext& ctx,
                   const std::string& expected = {});

std::string sort_of(const TermPtr& t, const FlatTheory& theory, const SortContext& ctx);

/// Checks a Boolean-sorted term.
TermPtr check_formula(const TermPtr& t, const FlatTheory& theory, const SortContext& ctx);

}  // namespace tierspec
