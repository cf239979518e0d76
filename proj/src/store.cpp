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

#include "tierspec/store.hpp"

#include <sstream>

namespace tierspec {

ObjectId Store::create(const std::string& sort, Value value, std::string name) {
  ObjectId id{next_++};
  objects_[id] = {sort, std::move(value), std::move(name)};
  ++version_;
  return id;
}

const StoredObject* Store::find(ObjectId id) const {
  auto it = objects_.find(id);
  return it == objects_.end() ? nullptr : &it->second;
}

const Value* Store::value(ObjectId id) const {
  const StoredObject* o = find(id);
  return o ? &o->value : nullptr;
}

void Store::set_value(ObjectId id, Value v) {
  objects_.at(id).value = std::move(v);
  ++version_;
}

std::optional<ObjectId> Store::owner(ObjectId member) const {
  auto it = owner_.find(member);
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

std::vector<ObjectId> Store::members(ObjectId owner) const {
  std::vector<ObjectId> out;
  for (const auto& [member, o] : owner_)
    if (o == owner) out.push_back(member);
  return out;
}

void Store::attach(ObjectId member, ObjectId owner) {
  owner_[member] = owner;
  ++version_;
}

void Store::detach(ObjectId member) {
  owner_.erase(member);
  ++version_;
}

std::vector<ObjectId> Store::objects() const {
  std::vector<ObjectId> out;
  for (const auto& [id, o] : objects_) out.push_back(id);
  return out;
}

std::vector<ObjectId> Store::objects_of(const std::string& sort) const {
  std::vector<ObjectId> out;
  for (const auto& [id, o] : objects_)
    if (o.sort == sort) out.push_back(id);
  return out;
}

std::optional<ObjectId> Store::by_name(const std::string& name) const {
  for (const auto& [id, o] : objects_)
    if (o.name == name) return id;
  return std::nullopt;
}

std::string Store::name(ObjectId id) const {
  const StoredObject* o = find(id);
  if (o && !o->name.empty()) return o->name;
  return (o ? o->sort : std::string("object")) + "#" + std::to_string(id.value);
}

ObjectNamer Store::namer() const {
  // Capture by value: the namer may outlive this store.
  std::map<ObjectId, std::string> names;
  for (const auto& [id, o] : objects_) names[id] = name(id);
  return [names](ObjectId id) {
    auto it = names.find(id);
    return it != names.end() ? it->second : "#" + std::to_string(id.value);
  };
}

bool Store::same_state(const Store& other) const {
  if (objects_.size() != other.objects_.size() || owner_ != other.owner_) return false;
  for (const auto& [id, o] : objects_) {
    const StoredObject* p = other.find(id);
    if (!p || p->sort != o.sort || !(p->value == o.value)) return false;
  }
  return true;
}

std::string Store::describe() const {
  std::ostringstream os;
  const auto n = namer();
  for (const auto& [id, o] : objects_) {
    os << name(id) << ": " << o.sort << " = " << o.value.str(n);
    if (auto own = owner(id)) os << " (attached to " << name(*own) << ")";
    os << '\n';
  }
  return os.str();
}

}  // namespace tierspec
