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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"
#include "tierspec/commands.hpp"
#include "tierspec/layering.hpp"

using namespace tierspec;
using namespace testsupport;

namespace {

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run run(int (*cmd)(const CommandOptions&, std::ostream&, std::ostream&), CommandOptions o) {
  std::ostringstream out, err;
  const int rc = cmd(o, out, err);
  return {rc, out.str(), err.str()};
}

CommandOptions on(std::vector<std::string> paths) {
  CommandOptions o;
  o.paths = std::move(paths);
  return o;
}

std::vector<Json> lines(const std::string& s) {
  std::vector<Json> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(Json::parse(l));
  return out;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "tierspec-cli-test";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check accepts the corpus") {
    const Run r = run(cmd_check, on({spec_dir()}));
    CHECK(r.rc == 0);
    const auto ls = lines(r.out);
    CHECK(ls.back()["status"] == "ok");
  }

  TEST_CASE("check names an unknown operator and where it is") {
    const std::string f = temp_file("Bad.trait",
                                    "Bad : trait\n"
                                    "  includes Integer\n"
                                    "  introduces g : Int -> Int\n"
                                    "  asserts forall i : Int\n"
                                    "    g(i) == nosuch(i)\n");
    const Run r = run(cmd_check, on({f}));
    CHECK(r.rc == 1);
    CHECK(r.err.find("nosuch") != std::string::npos);
    CHECK(r.err.find("Bad.trait:5:") != std::string::npos);
  }

  TEST_CASE("check cites the layering rule for up-calls") {
    for (const char* m : {"upcall-trait", "upcall-role"}) {
      CAPTURE(m);
      const Run r = run(cmd_check, on({spec_dir(), mutant(m)}));
      CHECK(r.rc == 1);
      CHECK(r.err.find("no up-calls") != std::string::npos);
    }
  }

  TEST_CASE("layering report on parsed units") {
    Workspace ws;
    ws.load({spec_dir(), mutant("upcall-role")});
    const LayeringReport rep = check_layering(ws.units());
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].name == "SetZonalClocks");
    CHECK(rep.violations[0].target == "interaction method");
    Workspace clean;
    clean.load({spec_dir()});
    CHECK(check_layering(clean.units()).ok());
  }

  TEST_CASE("test reports are JSON lines") {
    CommandOptions o = on({spec_dir()});
    o.random_count = 100;
    const Run r = run(cmd_test, o);
    CHECK(r.rc == 0);
    const auto ls = lines(r.out);
    REQUIRE_FALSE(ls.empty());
    CHECK(ls.back()["kind"] == "summary");
    CHECK(ls.back()["failures"] == 0);
  }

  TEST_CASE("seed flag leaves verdicts alone") {
    auto verdicts = [](std::uint64_t seed) {
      CommandOptions o = on({spec_dir()});
      o.random_count = 100;
      o.seed = seed;
      std::vector<std::string> v;
      for (const auto& j : lines(run(cmd_test, o).out))
        if (j.contains("verdict")) v.push_back(j["kind"].get<std::string>() + j["verdict"].get<std::string>());
      return v;
    };
    CHECK(verdicts(1) == verdicts(2024));
  }

  TEST_CASE("paper-literal test run fails with a counterexample") {
    CommandOptions o = on({spec_dir()});
    o.paper_literal = {"second-bound"};
    o.random_count = 50;
    const Run r = run(cmd_test, o);
    CHECK(r.rc == 1);
    bool counterexample = false;
    for (const auto& j : lines(r.out))
      if (j["kind"] == "obligation" && j["verdict"] == "fail" && j.contains("counterexample"))
        counterexample = true;
    CHECK(counterexample);
  }

  TEST_CASE("simulate exit statuses") {
    CommandOptions o = on({spec_dir()});
    o.scenario = corpus("scenarios/detach-unattached.scenario");
    const Run bad = run(cmd_simulate, o);
    CHECK(bad.rc == 2);
    CHECK(bad.out.find("\"violation\":\"requires\"") != std::string::npos);
    o.scenario = corpus("scenarios/empty.scenario");
    const Run empty = run(cmd_simulate, o);
    CHECK(empty.rc == 0);
    for (const auto& j : lines(empty.out)) CHECK(j["kind"] != "begin");
    o.scenario = temp_file("broken.scenario", "new Nope x = 1\n");
    CHECK(run(cmd_simulate, o).rc == 1);
  }

  TEST_CASE("failed assertions exit 2") {
    CommandOptions o = on({spec_dir()});
    o.scenario = temp_file("assert.scenario",
                           "new MasterClock m = [1, 0, 0]\nassert \"wrong\": m ! post = [2, 0, 0]\n");
    CHECK(run(cmd_simulate, o).rc == 2);
  }

  TEST_CASE("categorize") {
    CommandOptions o = on({spec_dir()});
    o.text = true;
    const Run r = run(cmd_categorize, o);
    CHECK(r.rc == 0);
    CHECK(r.out.find("MasterClock O: {Attach, Detach, SetSecond}\n") != std::string::npos);
    CHECK(r.out.find("MasterClock O-E: {SetZonalClocks, SetChange}\n") != std::string::npos);
    CHECK(r.out.find("MasterClock V: {GetTime}\n") != std::string::npos);
    CHECK(r.out.find("ZonalClock.ZonalClock O-E\n") != std::string::npos);
    o.text = false;
    for (const auto& j : lines(run(cmd_categorize, o).out))
      if (j["kind"] == "category" && j["method"] == "GetTime") CHECK(j["category"] == "V");
  }

  TEST_CASE("categorize of an empty role") {
    const std::string f =
        temp_file("MasterClock.role", "MasterClock : role specification\nuses WorldClock\n");
    CommandOptions o = on({corpus("worldclock/Time.trait"), corpus("worldclock/Zone.trait"),
                           corpus("worldclock/WorldClock.trait"), f});
    o.text = true;
    const Run r = run(cmd_categorize, o);
    CHECK(r.rc == 0);
    CHECK(r.out.empty());
  }
}
