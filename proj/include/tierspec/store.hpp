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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tierspec/value.hpp"

namespace tierspec {

struct StoredObject {
  std::string sort;
  Value value;
  std::string name;
};

/// Global state of a simulation: object identities with their abstract
/// values, the attachment relation (member -> owner), and the environment
/// constants of the run. Copyable; copies share nothing.
class Store {
 public:
  ObjectId create(const std::string& sort, Value value, std::string name = {});

  bool contains(ObjectId id) const { return objects_.count(id) > 0; }
  const StoredObject* find(ObjectId id) const;
  const Value* value(ObjectId id) const;
  void set_value(ObjectId id, Value v);

  std::optional<ObjectId> owner(ObjectId member) const;
  std::vector<ObjectId> members(ObjectId owner) const;
  void attach(ObjectId member, ObjectId owner);
  void detach(ObjectId member);
  const std::map<ObjectId, ObjectId>& links() const { return owner_; }

  std::vector<ObjectId> objects() const;
  std::vector<ObjectId> objects_of(const std::string& sort) const;
  std::optional<ObjectId> by_name(const std::string& name) const;
  std::string name(ObjectId id) const;
  ObjectNamer namer() const;

  void set_env(const std::string& name, Value v) { env_[name] = std::move(v); }
  const std::map<std::string, Value>& env() const { return env_; }

  std::uint64_t version() const { return version_; }

  /// Equal object values and attachments; ignores version and names.
  bool same_state(const Store& other) const;
  /// One line per object, for diagnostics and divergence reports.
  std::string describe() const;

 private:
  std::map<ObjectId, StoredObject> objects_;
  std::map<ObjectId, ObjectId> owner_;
  std::map<std::string, Value> env_;
  std::int64_t next_ = 1;
  std::uint64_t version_ = 0;
};

}  // namespace tierspec
