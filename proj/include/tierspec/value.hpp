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

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tierspec {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Identity of a mutable object in a Store.
struct ObjectId {
  std::int64_t value = -1;

  bool valid() const { return value >= 0; }
  auto operator<=>(const ObjectId&) const = default;
};

using ObjectNamer = std::function<std::string(ObjectId)>;

/// A ground abstract value: the normal form of a tier-1 term, an object
/// identity, or a state token. Stuck values wrap a term that no rule could
/// reduce; they are kept apart from proper values so callers can report
/// specification incompleteness.
class Value {
 public:
  enum class Kind { Bool, Int, String, Tuple, Set, Object, State, Stuck };

  Value() = default;

  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value string(std::string s);
  static Value tuple(std::string sort, std::vector<Value> fields);
  static Value set(std::string sort, std::vector<Value> elements);
  static Value object(std::string sort, ObjectId id);
  static Value state(std::string token);
  static Value stuck(TermPtr term, std::string sort);

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  bool is_stuck() const { return kind_ == Kind::Stuck; }

  bool as_bool() const { return b_; }
  std::int64_t as_int() const { return i_; }
  const std::string& text() const { return text_; }
  const std::string& sort() const { return sort_; }
  const std::vector<Value>& items() const { return items_; }
  ObjectId object_id() const { return id_; }
  const TermPtr& stuck_term() const { return stuck_; }

  /// Structural comparison; a total order used for sets and stores.
  std::strong_ordering operator<=>(const Value& other) const;
  bool operator==(const Value& other) const { return (*this <=> other) == 0; }

  std::string str(const ObjectNamer& namer = {}) const;

 private:
  Kind kind_ = Kind::Bool;
  bool b_ = false;
  std::int64_t i_ = 0;
  std::string text_;
  std::string sort_;
  std::vector<Value> items_;
  ObjectId id_;
  TermPtr stuck_;
};

}  // namespace tierspec
