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

#include "tierspec/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "tierspec/commands.hpp"
#include "tierspec/engine.hpp"

namespace fs = std::filesystem;

namespace tierspec {

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// First differing line of two traces, for the report.
std::string first_difference(const std::string& want, const std::string& got) {
  std::istringstream a(want), b(got);
  std::string la, lb;
  for (int line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) return {};
    if (!ha || !hb || la != lb)
      return "line " + std::to_string(line) + ":\n  golden: " + (ha ? la : "<end>") +
             "\n  actual: " + (hb ? lb : "<end>");
  }
}

std::set<std::string> failing_obligations(const std::string& jsonl) {
  std::set<std::string> out;
  std::istringstream in(jsonl);
  for (std::string line; std::getline(in, line);) {
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || j.value("kind", "") != "obligation") continue;
    const std::string v = j.value("verdict", "");
    if (v == "fail" || v == "error") out.insert(j.value("text", ""));
  }
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : "; ") + x;
  return out.empty() ? "none" : out;
}

}  // namespace

bool CorpusReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return !checks.empty();
}

CorpusReport verify_corpus(const CorpusOptions& opts) {
  const fs::path root(opts.root);
  const fs::path manifest_path = root / "manifest.json";
  if (!fs::exists(manifest_path)) throw SpecError({}, "no manifest.json in " + opts.root);
  const Json manifest = Json::parse(slurp(manifest_path), nullptr, false);
  if (manifest.is_discarded()) throw SpecError({}, manifest_path.string() + ": malformed JSON");

  CorpusReport report;
  CommandOptions base;
  base.lib = opts.lib;
  base.paths = {(root / manifest.value("spec", "worldclock")).string()};

  auto run = [&](const std::string& name, int (*cmd)(const CommandOptions&, std::ostream&,
                                                     std::ostream&),
                 const CommandOptions& o, int want) {
    std::ostringstream out, err;
    const int rc = cmd(o, out, err);
    CorpusCheck c{name, rc == want, {}};
    if (!c.ok)
      c.detail = "exit " + std::to_string(rc) + ", expected " + std::to_string(want) + "\n" +
                 err.str();
    return std::make_pair(c, out.str() + err.str());
  };

  report.checks.push_back(run("check", cmd_check, base, kExitOk).first);
  report.checks.push_back(run("test", cmd_test, base, kExitOk).first);

  for (const Json& s : manifest.value("scenarios", Json::array())) {
    CommandOptions o = base;
    o.scenario = (root / s.at("file").get<std::string>()).string();
    const fs::path golden = root / s.at("golden").get<std::string>();
    std::ostringstream out, err;
    const int rc = cmd_simulate(o, out, err);
    const int want = s.value("exit", 0);
    CorpusCheck c{"scenario " + s.at("file").get<std::string>(), rc == want, {}};
    if (rc != want)
      c.detail = "exit " + std::to_string(rc) + ", expected " + std::to_string(want) + "\n" +
                 err.str();
    if (opts.update_goldens) {
      std::ofstream(golden, std::ios::binary) << out.str();
    } else if (!fs::exists(golden)) {
      c.ok = false;
      c.detail += "missing golden " + golden.string();
    } else if (const std::string diff = first_difference(slurp(golden), out.str());
               !diff.empty()) {
      c.ok = false;
      c.detail += "trace differs from " + golden.string() + " at " + diff;
    }
    report.checks.push_back(std::move(c));
  }

  for (const Json& m : manifest.value("mutants", Json::array())) {
    CommandOptions o = base;
    o.paths.push_back((root / m.at("overlay").get<std::string>()).string());
    if (m.contains("scenario")) o.scenario = (root / m.at("scenario").get<std::string>()).string();
    const std::string command = m.at("command").get<std::string>();
    auto* cmd = command == "check" ? cmd_check : command == "test" ? cmd_test : cmd_simulate;
    auto [c, text] = run("mutant " + m.at("name").get<std::string>(), cmd, o, m.at("exit").get<int>());
    const std::string expect = m.value("expect", "");
    if (c.ok && text.find(expect) == std::string::npos) {
      c.ok = false;
      c.detail = "output does not mention '" + expect + "'";
    }
    report.checks.push_back(std::move(c));
  }

  for (const Json& p : manifest.value("paper_literal", Json::array())) {
    CommandOptions o = base;
    for (const auto& id : p.at("ids")) o.paper_literal.insert(id.get<std::string>());
    std::string ids;
    for (const auto& id : o.paper_literal) ids += (ids.empty() ? "" : ",") + id;
    auto [c, text] = run("paper-literal " + ids, cmd_test, o, p.value("exit", 1));
    std::set<std::string> want;
    for (const auto& t : p.at("expect_failures")) want.insert(t.get<std::string>());
    const std::set<std::string> got = failing_obligations(text);
    if (got != want) {
      c.ok = false;
      c.detail += "failing obligations: " + join(got) + "\nexpected: " + join(want);
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace tierspec
