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

#include <array>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "tierspec/checker.hpp"
#include "tierspec/engine.hpp"
#include "tierspec/parser.hpp"
#include "tierspec/workspace.hpp"

namespace testsupport {

using namespace tierspec;

inline std::string corpus(const std::string& rel) {
  return std::string(TIERSPEC_CORPUS_DIR) + "/" + rel;
}

inline std::string spec_dir() { return corpus("worldclock"); }
inline std::string mutant(const std::string& name) { return corpus("mutants/" + name); }

inline std::unique_ptr<Workspace> load(std::vector<std::string> paths, WorkspaceOptions o = {}) {
  auto ws = std::make_unique<Workspace>(o);
  ws->load(paths);
  ws->bind();
  return ws;
}

inline TermPtr checked(const FlatTheory& th, const std::string& text,
                       std::vector<std::pair<std::string, std::string>> vars = {}) {
  SortContext ctx;
  ctx.state_tokens = true;
  for (auto& [n, s] : vars) ctx.bind(n, s);
  return check_term(parse_term(text), th, ctx);
}

inline Value eval_in(const FlatTheory& th, const std::string& text, const Store* s = nullptr,
                     const Bindings& b = {},
                     std::vector<std::pair<std::string, std::string>> vars = {}) {
  EvalContext ec;
  ec.pre = ec.post = ec.current = s;
  Evaluator ev(th, ec);
  return ev.eval(checked(th, text, vars), b);
}

// Independent time arithmetic: seconds since midnight, wrapped to a day.
inline long secs(long h, long m, long s) { return h * 3600 + m * 60 + s; }
inline std::array<long, 3> hms(long i) {
  i = ((i % 86400) + 86400) % 86400;
  return {i / 3600, (i % 3600) / 60, i % 60};
}
inline Value time_value(long i) {
  const auto t = hms(i);
  return Value::tuple("Time", {Value::integer(t[0]), Value::integer(t[1]), Value::integer(t[2])});
}
inline long secs_of(const Value& t) {
  return secs(t.items()[0].as_int(), t.items()[1].as_int(), t.items()[2].as_int());
}
inline Value zone_value(const std::string& name, long offset, long time) {
  return Value::tuple("Zone", {Value::string(name), Value::integer(offset), time_value(time)});
}

inline std::vector<Json> events(const Trace& t) { return t.events(); }

inline int count_begins(const Trace& t, const std::string& method) {
  int n = 0;
  for (const auto& e : t.events())
    if (e["kind"] == "begin" && e["method"] == method) ++n;
  return n;
}

}  // namespace testsupport
