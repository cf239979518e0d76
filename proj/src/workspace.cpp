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

#include "tierspec/workspace.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "tierspec/parser.hpp"

namespace tierspec {

namespace {

const std::regex& tag_pattern() {
  static const std::regex re(R"(^(\s*)%% paper-literal\[([A-Za-z0-9_-]+)\]:\s?(.*)$)");
  return re;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

bool is_spec_file(const std::filesystem::path& p) {
  const auto ext = p.extension();
  return ext == ".trait" || ext == ".role" || ext == ".inter";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError({path, 0, 0, 0, 0}, "cannot read file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<std::string> paper_literal_tags(const std::string& source) {
  std::vector<std::string> out;
  std::smatch m;
  for (const auto& line : split_lines(source))
    if (std::regex_match(line, m, tag_pattern())) out.push_back(m[2]);
  return out;
}

std::string restore_paper_literal(const std::string& source, const std::set<std::string>& ids) {
  if (ids.empty()) return source;
  std::vector<std::string> lines = split_lines(source);
  std::smatch m;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!std::regex_match(lines[i], m, tag_pattern())) continue;
    if (!ids.count("all") && !ids.count(m[2])) continue;
    const std::string original = m[3];
    // The tagged line is the nearest preceding line that is not a comment.
    for (std::size_t j = i; j-- > 0;) {
      const auto first = lines[j].find_first_not_of(" \t");
      if (first == std::string::npos || lines[j][first] == '%') continue;
      lines[j] = lines[j].substr(0, first) + original;
      break;
    }
  }
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

Workspace::Workspace(WorkspaceOptions opts) : opts_(std::move(opts)) {
  load_builtin_traits(lib_, default_library_dir(opts_.lib_dir));
}

void Workspace::load(const std::vector<std::string>& paths) {
  namespace fs = std::filesystem;
  for (const auto& path : paths) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(path))
        if (e.is_regular_file() && is_spec_file(e.path())) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) add_source(read_file(f.string()), f.string());
    } else if (fs::exists(path, ec)) {
      add_source(read_file(path), path);
    } else {
      throw SpecError({path, 0, 0, 0, 0}, "no such file or directory");
    }
  }
}

void Workspace::add_source(const std::string& text, const std::string& file) {
  add_unit(parse_unit(restore_paper_literal(text, opts_.paper_literal), file));
}

void Workspace::add_unit(SourceUnit unit) {
  bound_ = false;
  theories_.clear();
  lib_.add(unit);
  for (auto& u : units_) {
    if (u.kind == unit.kind && u.name == unit.name) {
      u = std::move(unit);
      return;
    }
  }
  units_.push_back(std::move(unit));
}

TheoryPtr Workspace::theory(const std::string& trait) {
  auto it = theories_.find(trait);
  if (it != theories_.end()) return it->second;
  TheoryPtr th = flatten(trait, lib_, &lint_);
  theories_[trait] = th;
  return th;
}

std::vector<TheoryPtr> Workspace::trait_theories() {
  std::vector<TheoryPtr> out;
  for (const auto& u : units_)
    if (u.kind == UnitKind::Trait) out.push_back(theory(u.name));
  return out;
}

const BoundRole* Workspace::role(const std::string& name) const {
  auto it = roles_.find(name);
  return it == roles_.end() ? nullptr : &it->second;
}

TheoryPtr Workspace::runtime_theory() const {
  if (interaction_) return interaction_->theory;
  if (!roles_.empty()) return roles_.begin()->second.theory;
  return nullptr;
}

void Workspace::bind() {
  roles_.clear();
  interaction_.reset();
  table_ = MethodTable();
  trait_theories();
  for (const auto& u : units_) {
    if (u.kind != UnitKind::Role) continue;
    const RoleAst& r = u.role();
    if (!lib_.find(r.uses))
      throw SpecError(r.uses_span, "role " + r.name + " uses unknown trait '" + r.uses + "'");
    auto pos = roles_.emplace(r.name, bind_role(u, theory(r.uses), &lint_)).first;
    table_.add_role(&pos->second);
  }
  const SourceUnit* inter = nullptr;
  for (const auto& u : units_) {
    if (u.kind != UnitKind::Interaction) continue;
    if (inter)
      throw SpecError(u.interaction().span,
                      "a workspace holds one interaction; " + inter->file + " defines another");
    inter = &u;
  }
  if (inter) {
    interaction_ = bind_interaction(*inter, table_, &lint_);
    table_.set_interaction(&*interaction_);
  }
  if (interaction_) {
    for (const auto& [name, role] : roles_)
      if (role.theory != interaction_->theory)
        throw SpecError(role.span, "role " + name + " uses " + role.uses +
                                       "; the interaction runs over " +
                                       interaction_->theory->name);
  }
  for (const auto& [name, role] : roles_) {
    for (const auto& c : role.methods) {
      if (c.non_constructive.empty() || table_.body(name, c.name)) continue;
      throw SpecError(c.ensures_clause->span,
                      name + "." + c.name + " has no interaction body and its ensures "
                                            "clause is not executable: " + c.non_constructive);
    }
  }
  bound_ = true;
}

}  // namespace tierspec
