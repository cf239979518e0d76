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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tierspec/interaction.hpp"

namespace tierspec {

struct WorkspaceOptions {
  std::string lib_dir;  // empty: default_library_dir()
  /// `%% paper-literal[id]` tags to restore; "all" restores every tag.
  std::set<std::string> paper_literal;
};

/// Replaces the line before each selected `%% paper-literal[id]: text`
/// comment with `text`, keeping its indentation.
std::string restore_paper_literal(const std::string& source, const std::set<std::string>& ids);

/// Ids of the paper-literal tags in a source text, in order.
std::vector<std::string> paper_literal_tags(const std::string& source);

/// A set of specification units with everything derived from them. Units
/// loaded later replace earlier units of the same kind and name, so a
/// directory of replacement files can overlay a corpus.
class Workspace {
 public:
  explicit Workspace(WorkspaceOptions opts = {});
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  /// Files or directories; directories contribute their `.trait`, `.role`
  /// and `.inter` files in name order. Parse errors throw.
  void load(const std::vector<std::string>& paths);
  void add_source(const std::string& text, const std::string& file);
  void add_unit(SourceUnit unit);

  const std::vector<SourceUnit>& units() const { return units_; }
  const TraitLibrary& library() const { return lib_; }

  /// Flattens used traits, binds roles and the interaction. Throws
  /// SpecError on the first error; warnings accumulate in lint().
  void bind();
  bool bound() const { return bound_; }

  TheoryPtr theory(const std::string& trait);
  /// Flattens every trait unit of the workspace (not the library).
  std::vector<TheoryPtr> trait_theories();

  const std::map<std::string, BoundRole>& roles() const { return roles_; }
  const BoundRole* role(const std::string& name) const;
  const BoundInteraction* interaction() const {
    return interaction_ ? &*interaction_ : nullptr;
  }
  const MethodTable& table() const { return table_; }
  /// Theory shared by the interaction, or by the roles when there is none.
  TheoryPtr runtime_theory() const;

  Diagnostics& lint() { return lint_; }
  const Diagnostics& lint() const { return lint_; }

 private:
  WorkspaceOptions opts_;
  TraitLibrary lib_;
  std::vector<SourceUnit> units_;
  std::map<std::string, TheoryPtr> theories_;
  std::map<std::string, BoundRole> roles_;
  std::optional<BoundInteraction> interaction_;
  MethodTable table_;
  Diagnostics lint_;
  bool bound_ = false;
};

}  // namespace tierspec
