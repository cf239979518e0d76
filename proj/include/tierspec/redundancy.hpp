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
#include <vector>

#include "tierspec/derive.hpp"
#include "tierspec/obligations.hpp"

namespace tierspec {

struct RedundancyOptions {
  int samples = 20;
  std::uint64_t seed = 42;
  RunPolicy policy;
  Grid grid = Grid::defaults();
};

/// One execution of an interaction body against its role contract.
struct RedundancyCase {
  std::string cls;
  std::string method;
  int sample = 0;
  std::string verdict;    // pass, fail, skipped (requires false)
  std::string violation;  // violation kind when failed
  std::string detail;
  std::string store;      // pre-store description on failure
};

struct RedundancySummary {
  std::string cls;
  std::string method;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::string verdict;  // pass, fail, vacuous
};

/// Permutation checking of one method whose body composes independently.
struct IndependenceResult {
  std::string cls;
  std::string method;
  int stores = 0;
  int permutations = 0;  // samples per Indep node
  std::string verdict;   // pass, fail
  std::string detail;
};

struct RedundancyReport {
  std::vector<RedundancyCase> cases;
  std::vector<RedundancySummary> methods;
  std::vector<IndependenceResult> independence;

  bool ok() const;
};

/// Random stores for the workspace's link relation: one owner with 0..3
/// members, object values drawn from the generator. Odd samples are settled
/// first by running every parameterless member method that has a body, so
/// guarded no-op paths are exercised too.
std::vector<Store> sample_stores(const Workspace& ws, const RedundancyOptions& opts);

/// Runs every interaction method that shares its name with a role method on
/// each sample, checking the role's requires, ensures and frame plus the
/// derived contract of the body.
RedundancyReport check_redundancy(const Workspace& ws, const RedundancyOptions& opts);

}  // namespace tierspec
