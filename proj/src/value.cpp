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

#include "tierspec/value.hpp"

#include <algorithm>
#include <sstream>

#include "tierspec/ast.hpp"

namespace tierspec {

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.b_ = b;
  v.sort_ = "Bool";
  return v;
}

Value Value::integer(std::int64_t i) {
  Value v;
  v.kind_ = Kind::Int;
  v.i_ = i;
  v.sort_ = "Int";
  return v;
}

Value Value::string(std::string s) {
  Value v;
  v.kind_ = Kind::String;
  v.text_ = std::move(s);
  v.sort_ = "String";
  return v;
}

Value Value::tuple(std::string sort, std::vector<Value> fields) {
  Value v;
  v.kind_ = Kind::Tuple;
  v.sort_ = std::move(sort);
  v.items_ = std::move(fields);
  return v;
}

Value Value::set(std::string sort, std::vector<Value> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Value v;
  v.kind_ = Kind::Set;
  v.sort_ = std::move(sort);
  v.items_ = std::move(elements);
  return v;
}

Value Value::object(std::string sort, ObjectId id) {
  Value v;
  v.kind_ = Kind::Object;
  v.sort_ = std::move(sort);
  v.id_ = id;
  return v;
}

Value Value::state(std::string token) {
  Value v;
  v.kind_ = Kind::State;
  v.sort_ = "State";
  v.text_ = std::move(token);
  return v;
}

Value Value::stuck(TermPtr term, std::string sort) {
  Value v;
  v.kind_ = Kind::Stuck;
  v.sort_ = std::move(sort);
  v.stuck_ = std::move(term);
  v.text_ = v.stuck_ ? render_term(*v.stuck_) : std::string("?");
  return v;
}

std::strong_ordering Value::operator<=>(const Value& o) const {
  if (auto c = kind_ <=> o.kind_; c != 0) return c;
  switch (kind_) {
    case Kind::Bool:
      return b_ <=> o.b_;
    case Kind::Int:
      return i_ <=> o.i_;
    case Kind::String:
    case Kind::State:
    case Kind::Stuck:
      if (auto c = sort_ <=> o.sort_; c != 0) return c;
      return text_ <=> o.text_;
    case Kind::Object:
      return id_ <=> o.id_;
    case Kind::Tuple:
    case Kind::Set: {
      // Empty sets are written `{}` without a sort in some contexts; the
      // element sort carries no information for an empty collection.
      if (!(kind_ == Kind::Set && items_.empty() && o.items_.empty()))
        if (auto c = sort_ <=> o.sort_; c != 0) return c;
      return std::lexicographical_compare_three_way(
          items_.begin(), items_.end(), o.items_.begin(), o.items_.end());
    }
  }
  return std::strong_ordering::equal;
}

std::string Value::str(const ObjectNamer& namer) const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Bool:
      os << (b_ ? "true" : "false");
      break;
    case Kind::Int:
      os << i_;
      break;
    case Kind::String:
      os << '"' << text_ << '"';
      break;
    case Kind::State:
      os << text_;
      break;
    case Kind::Stuck:
      os << text_;
      break;
    case Kind::Object:
      if (namer)
        os << namer(id_);
      else
        os << sort_ << '#' << id_.value;
      break;
    case Kind::Tuple:
    case Kind::Set: {
      os << (kind_ == Kind::Tuple ? '[' : '{');
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i > 0) os << ", ";
        os << items_[i].str(namer);
      }
      os << (kind_ == Kind::Tuple ? ']' : '}');
      break;
    }
  }
  return os.str();
}

}  // namespace tierspec
