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

#include "tierspec/ast.hpp"

namespace tierspec {

struct LayeringViolation {
  std::string unit;   // offending unit
  std::string name;   // the higher-tier name it mentions
  std::string target; // "role method", "interaction method", "role", "interaction"
  SourceSpan span;

  std::string message() const;
};

struct LayeringReport {
  std::vector<LayeringViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Lower tiers may not name anything of a higher tier: traits mention only
/// traits and their operators, role clauses only trait operators. Works on
/// parsed units, so it runs before any binding.
LayeringReport check_layering(const std::vector<SourceUnit>& units);

}  // namespace tierspec
