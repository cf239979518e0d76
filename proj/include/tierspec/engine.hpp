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
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tierspec/workspace.hpp"

namespace tierspec {

using Json = nlohmann::ordered_json;

/// Line-delimited event log of a run. Field names are stable: kind, depth,
/// receiver, method, args, verdicts, result, seed.
class Trace {
 public:
  void emit(Json event);
  const std::vector<Json>& events() const { return events_; }
  void write(std::ostream& os) const;
  std::string str() const;
  void clear() { events_.clear(); }

  bool enabled = true;

 private:
  std::vector<Json> events_;
};

enum class ViolationKind {
  Requires,
  Ensures,
  Frame,
  NoChoice,
  WhileCap,
  Divergence,
  NonConstructive,
  Evaluation,
  Policy,
};

std::string to_string(ViolationKind k);

/// A dynamic contract failure. Requires failures blame the caller; the
/// others blame the specification.
class ContractViolation : public std::runtime_error {
 public:
  ContractViolation(ViolationKind kind, std::string receiver, std::string method,
                    SourceSpan span, const std::string& message);

  ViolationKind kind() const { return kind_; }
  std::string blame() const {
    return kind_ == ViolationKind::Requires ? "caller" : "specification";
  }
  const std::string& receiver() const { return receiver_; }
  const std::string& method() const { return method_; }
  const SourceSpan& span() const { return span_; }
  /// Objects named by a frame violation.
  std::vector<std::string> objects;

 private:
  ViolationKind kind_;
  std::string receiver_;
  std::string method_;
  SourceSpan span_;
};

/// One executed action node with the stores around it. Built only while a
/// recorder is installed; permutation replays are not recorded.
struct ExecRecord {
  const Action* action = nullptr;
  Store entry;
  Store exit;
  Bindings vars;
  std::vector<bool> guards;  // If/While: one value per evaluation
  // Invoke only.
  ObjectId receiver;
  std::string receiver_sort;
  std::vector<Value> args;
  std::optional<Value> result;
  std::vector<std::shared_ptr<ExecRecord>> children;
};

struct RunPolicy {
  std::uint64_t seed = 42;
  int perm_samples = 5;
  int while_cap = 10000;
  int budget = 10000;
};

/// Executes bound actions over a Store with full contract checking. Every
/// public entry point is atomic: the store is updated only if the whole
/// action succeeds.
class Engine {
 public:
  Engine(const Workspace& ws, RunPolicy policy = {}, Trace* trace = nullptr);

  std::optional<Value> call(Store& store, ObjectId receiver, const std::string& method,
                            const std::vector<Value>& args);
  /// Runs an action bound with no implicit receiver; `locals` binds its free
  /// variables.
  void run(Store& store, const ActionPtr& action, const Bindings& locals);
  /// Allocates an object. With a constructor contract or body, runs it with
  /// `args`; otherwise only `initial` is stored.
  ObjectId construct(Store& store, const std::string& sort, const std::vector<Value>& args,
                     Value initial, const std::string& name);

  /// Executions of interaction bodies become children of `root` until the
  /// recorder is removed with nullptr.
  void set_recorder(ExecRecord* root) { recorder_ = root; }

  const FlatTheory& theory() const { return th_; }
  const RunPolicy& policy() const { return policy_; }

 private:
  struct Frame {
    Bindings vars;
    const Store* entry = nullptr;
    std::string self_name;
  };

  std::optional<Value> invoke(Store& store, ObjectId receiver, const std::string& method,
                              const std::vector<Value>& args, int depth,
                              const Store* pre_override = nullptr);
  std::optional<Value> exec(const Action& a, Store& store, Frame& f, int depth);
  std::optional<Value> exec_node(const Action& a, Store& store, Frame& f, int depth);
  void exec_components(const Action& a, Store& store, Frame& f, int depth, bool indep);
  bool enabled(const Action& a, const Store& store, Frame& f);
  Value eval(const TermPtr& t, const Store& store, const Frame& f);
  void emit(Json event);
  [[noreturn]] void fail(ViolationKind kind, const std::string& receiver, const std::string& method,
            const SourceSpan& span, const std::string& message, int depth,
            std::vector<std::string> objects = {});

  const Workspace& ws_;
  const FlatTheory& th_;
  RunPolicy policy_;
  Trace* trace_;
  std::mt19937_64 rng_;
  bool replaying_ = false;
  ExecRecord* recorder_ = nullptr;
};

}  // namespace tierspec
