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
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "tierspec/workspace.hpp"

namespace tierspec {

/// Exit statuses shared by every command.
enum ExitStatus { kExitOk = 0, kExitSpec = 1, kExitViolation = 2 };

struct CommandOptions {
  std::vector<std::string> paths;
  std::string lib;
  std::set<std::string> paper_literal;
  std::optional<std::uint64_t> seed;
  std::optional<int> perm_samples;
  std::vector<std::string> grid;  // `key=v1,v2` assignments
  int random_count = 1000;
  int samples = 20;               // redundancy stores
  int while_cap = 10000;
  std::string scenario;
  std::string trace_out;          // simulate: file instead of stdout
  bool text = false;              // categorize: table instead of JSON lines
};

/// Loads `opts.paths`, checks layering, binds, and sort-checks every trait.
/// Writes diagnostics to `err` (text) and `out` (JSON lines). Returns 0 or 1.
int prepare_workspace(Workspace& ws, const CommandOptions& opts, std::ostream& out,
                      std::ostream& err);

int cmd_check(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_test(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_categorize(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace tierspec
