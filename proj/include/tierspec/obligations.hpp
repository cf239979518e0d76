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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tierspec/evaluator.hpp"

namespace tierspec {

/// Finite value pools keyed by `Sort.field`, field name, or sort name,
/// looked up in that order.
struct Grid {
  std::map<std::string, std::vector<Value>> keys;

  /// hour, minute, second in {0,1,23} x {0,1,59} x {0,1,59}; Int, String.
  static Grid defaults();
  /// Parses `key=v1,v2,...`; integers become Int values, anything else a
  /// String. Replaces the key's pool.
  void set(const std::string& assignment);
  const std::vector<Value>* find(const std::string& key) const;
};

struct TestBudget {
  Grid grid = Grid::defaults();
  std::uint64_t seed = 42;
  int random_count = 1000;
  std::size_t max_grid_cases = 20000;
};

/// Values of a sort for bounded testing: the exhaustive grid and seeded
/// random draws between each pool's extremes. Tuples are built fieldwise,
/// object sorts get bare identities, set sorts small subsets.
class ValueGenerator {
 public:
  ValueGenerator(const FlatTheory& theory, const Grid& grid, std::uint64_t seed);

  /// Throws SpecError when the sort has no generator.
  std::vector<Value> grid(const std::string& sort);
  Value random(const std::string& sort);
  bool supports(const std::string& sort) const;

 private:
  std::vector<Value> grid_for(const std::string& sort, const std::string& key);
  Value random_for(const std::string& sort, const std::string& key);
  const std::vector<Value>* pool(const std::string& sort, const std::string& key) const;

  const FlatTheory& th_;
  Grid g_;
  std::mt19937_64 rng_;
};

struct ObligationResult {
  std::string theory;
  std::string origin;
  std::string source;  // "implies" or "axiom"
  std::string text;
  SourceSpan span;
  long cases = 0;
  std::string verdict;  // pass, fail, error
  Bindings counterexample;
  std::string detail;
};

struct PartitionResult {
  std::string sort;
  std::vector<std::string> observers;
  long pairs = 0;  // distinct observer-equal pairs found
  long checks = 0;
  std::string verdict;  // pass, fail, vacuous
  std::string detail;
};

struct GeneratedResult {
  std::string sort;
  std::vector<std::string> ops;
};

struct ObligationReport {
  std::vector<ObligationResult> obligations;
  std::vector<PartitionResult> partitions;
  std::vector<GeneratedResult> generated;

  bool ok() const;
  std::size_t failures() const;
};

/// Tests every implies equation and every asserted axiom of `theory` over
/// the grid plus `random_count` random cases. Entries whose key is already
/// in `seen` are skipped, so several theories sharing includes can be
/// reported once. Environment constants are quantified like variables.
void check_obligations(const FlatTheory& theory, const TestBudget& budget,
                       ObligationReport& report, std::set<std::string>* seen = nullptr);

}  // namespace tierspec
