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

namespace tierspec {

struct CorpusOptions {
  std::string root;  // directory holding manifest.json
  std::string lib;
  bool update_goldens = false;
};

struct CorpusCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CorpusReport {
  std::vector<CorpusCheck> checks;

  bool ok() const;
};

/// Runs everything `manifest.json` lists: check and test of the spec
/// directory, each scenario against its golden trace, each mutant against
/// its expected exit status and message, and the paper-literal runs against
/// their documented failures. Throws SpecError on an unreadable manifest.
CorpusReport verify_corpus(const CorpusOptions& opts);

}  // namespace tierspec
