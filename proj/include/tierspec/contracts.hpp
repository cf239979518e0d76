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

#include <optional>
#include <string>
#include <vector>

#include "tierspec/evaluator.hpp"
#include "tierspec/theory.hpp"

namespace tierspec {

/// One entry of a modifies clause, evaluated in the pre-state.
enum class FrameKind {
  Object,     // an object expression: its value and attachments may change
  Attribute,  // f(o) for an object o: o's attachments may change
  Contained,  // containedObjects(S, st): every member of S
};

struct FrameItem {
  FrameKind kind = FrameKind::Object;
  TermPtr term;   // object, attribute application, or set
  TermPtr state;  // Contained only
  SourceSpan span;
};

/// Executable reading of an ensures conjunct for methods without an
/// interaction body.
enum class StepKind { SetValue, AddMember, RemoveMember, SetOwner, Result };

struct ConstructiveStep {
  StepKind kind = StepKind::SetValue;
  TermPtr target;  // object whose value or attachment changes
  TermPtr value;   // new value, member, or owner
};

struct MethodContract {
  std::string role;
  std::string name;
  std::vector<Param> params;
  std::optional<std::string> return_sort;
  TermPtr requires_clause;  // null means true
  TermPtr ensures_clause;
  bool has_modifies = false;
  std::vector<FrameItem> frame;
  bool constructs = false;
  SourceSpan span;

  std::vector<ConstructiveStep> steps;
  /// Empty when every ensures conjunct has an executable reading.
  std::string non_constructive;

  bool is_constructor() const { return name == role; }
};

struct Category {
  bool v = false;
  bool o = false;
  bool e = false;
  bool non_canonical = false;

  /// "V", "O", "O-E", "-" for a method that neither returns nor changes
  /// anything, or "non-canonical".
  std::string label() const;
};

struct BoundRole {
  std::string name;
  std::string uses;
  std::string self_sort;
  TheoryPtr theory;
  std::vector<MethodContract> methods;
  SourceSpan span;

  const MethodContract* find(const std::string& method) const;
};

/// Sort-checks every clause of a role against its used theory. Throws
/// SpecError on the first error; warnings go to `lint`.
BoundRole bind_role(const SourceUnit& unit, TheoryPtr theory, Diagnostics* lint = nullptr);

/// V/O/E classification from the signature and the frame. E implies O.
Category categorize(const MethodContract& c, const FlatTheory& theory);

/// Evaluates a clause with `self`, parameters and `result` bound. Requires
/// clauses pass `pre` for both stores. Errors (stuck terms, ambiguous
/// `\any`) propagate as EvalError.
bool eval_clause(const TermPtr& clause, const FlatTheory& theory, const Store& pre,
                 const Store& post, const Bindings& bindings);

struct FrameViolation {
  ObjectId object;
  std::string message;
};

struct FrameVerdict {
  std::vector<FrameViolation> violations;

  bool ok() const { return violations.empty(); }
  std::string str() const;
};

/// Objects whose value or attachments differ between the stores must be
/// covered by the frame evaluated in `pre`. Objects absent from `pre` are
/// fresh and exempt, as are attachment edits that involve them.
FrameVerdict check_frame(const MethodContract& c, const FlatTheory& theory, const Store& pre,
                         const Store& post, const Bindings& bindings);

}  // namespace tierspec
