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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tierspec/store.hpp"
#include "tierspec/theory.hpp"

namespace tierspec {

using Bindings = std::vector<std::pair<std::string, Value>>;

/// Which stores a term is evaluated against. `current` serves the
/// attachment operators, `!` with the `current` token, and quantifiers over
/// object sorts; `pre`/`post` serve superscripts and state tokens. Missing
/// stores fall back to `current`.
struct EvalContext {
  const Store* pre = nullptr;
  const Store* post = nullptr;
  const Store* current = nullptr;
  /// Environment constants; when null, read from `current`.
  const std::map<std::string, Value>* env = nullptr;
  int budget = 10000;
};

class EvalError : public std::runtime_error {
 public:
  enum class Kind { Stuck, Budget, AnyDisagrees, Domain };

  EvalError(Kind kind, SourceSpan span, const std::string& message)
      : std::runtime_error(message), kind_(kind), span_(std::move(span)) {}

  Kind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }

 private:
  Kind kind_;
  SourceSpan span_;
};

/// Call-by-value evaluation of checked terms: arguments are normalized
/// first, then the first matching rule of the head operator fires. This is
/// innermost conditional rewriting specialized to ground terms. A term whose
/// head has no applicable rule yields a Stuck value.
class Evaluator {
 public:
  Evaluator(const FlatTheory& theory, EvalContext ctx);

  Value eval(const TermPtr& t, const Bindings& b = {});
  /// Like eval, but a stuck or non-Boolean result is an error.
  bool eval_bool(const TermPtr& t, const Bindings& b = {});
  Value apply(int op, std::vector<Value> args, const SourceSpan& span = {});
  /// Equality as `=` decides it: observer images for partitioned sorts,
  /// fieldwise for tuples, identity for objects.
  bool equal(const Value& a, const Value& b, const std::string& sort);

  /// Values of a sort that quantifiers range over.
  std::vector<Value> domain(const std::string& sort, const SourceSpan& span);

  int steps() const { return steps_; }
  const EvalContext& context() const { return ctx_; }
  ObjectNamer namer() const;

 private:
  Value eval_rec(const Term& t, Bindings& b);
  Value eval_apply(const Term& t, Bindings& b);
  Value native(const OpInfo& op, std::vector<Value>& args, const SourceSpan& span);
  Value rewrite(const OpInfo& op, std::vector<Value>& args, const SourceSpan& span);
  bool match(const Term& pattern, const Value& v, Bindings& b);
  Value state_value(const Value& object, const std::string& token, const SourceSpan& span);
  const Store* store_for(const std::string& token) const;
  Value quantify(const Term& t, Bindings& b, std::size_t i);
  Value stuck_apply(const OpInfo& op, const std::vector<Value>& args);

  const FlatTheory& th_;
  EvalContext ctx_;
  int steps_ = 0;
  int depth_ = 0;
};

/// Normal form of a ground checked term, as a term.
TermPtr normalize(const TermPtr& t, const FlatTheory& theory, const EvalContext& ctx = {});

/// Evaluates a Boolean guard; stuck evaluation is reported, never returned.
bool eval_guard(const TermPtr& guard, const FlatTheory& theory, const Bindings& b,
                const EvalContext& ctx);

TermPtr value_to_term(const Value& v);

}  // namespace tierspec
