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
#include <optional>
#include <string>
#include <vector>

#include "tierspec/engine.hpp"

namespace tierspec {

/// One line of a scenario script.
struct ScenarioStep {
  enum class Kind { Env, New, Run, Assert };

  Kind kind = Kind::Run;
  std::string name;  // env constant, object, or assertion name
  std::string sort;  // New only
  std::vector<TermPtr> args;
  TermPtr term;  // env value, initial value, or assertion
  ActionPtr action;
  SourceSpan span;
};

/// A setup-and-script file:
///
///   scenario "name"
///   seed 42
///   permutations 5
///   env currentTime = [10, 0, 0]
///   new MasterClock m = [10, 0, 0]
///   new ZonalClock z1(m) = ["Paris", 3600, [11, 0, 0]]
///   run m.SetChange()
///   assert "consistent": isConsistent(m, z1, post)
struct Scenario {
  std::string name;
  std::string file;
  std::optional<std::uint64_t> seed;
  std::optional<int> permutations;
  std::vector<ScenarioStep> steps;
};

Scenario parse_scenario(const std::string& text, const std::string& file = {});
Scenario load_scenario(const std::string& path);

struct ScenarioOutcome {
  int exit_code = 0;  // 0 clean, 1 reference error, 2 violation or failed assertion
  std::string message;
  Store store;
  Trace trace;
  int runs = 0;
  std::vector<std::pair<std::string, bool>> assertions;
};

/// Explicit settings win over the scenario's own seed and permutation count.
struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> perm_samples;
  int while_cap = 10000;
};

RunPolicy resolve_policy(const Scenario& s, const ScenarioOverrides& o);

/// Runs setup and script in order. Stops at the first contract violation;
/// failed assertions are recorded and the run continues.
ScenarioOutcome run_scenario(const Scenario& s, const Workspace& ws,
                             const ScenarioOverrides& o = {});

}  // namespace tierspec
