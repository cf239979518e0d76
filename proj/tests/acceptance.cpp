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

// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "support.hpp"
#include "tierspec/commands.hpp"
#include "tierspec/layering.hpp"
#include "tierspec/obligations.hpp"
#include "tierspec/redundancy.hpp"
#include "tierspec/scenario.hpp"

using namespace tierspec;
using namespace testsupport;

namespace {

struct Outcome {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

struct Captured {
  int rc;
  std::string out;
  std::string err;
};

Captured capture(int (*cmd)(const CommandOptions&, std::ostream&, std::ostream&),
                 const CommandOptions& o) {
  std::ostringstream out, err;
  const int rc = cmd(o, out, err);
  return {rc, out.str(), err.str()};
}

CommandOptions on(std::vector<std::string> paths) {
  CommandOptions o;
  o.paths = std::move(paths);
  return o;
}

std::vector<Json> json_lines(const std::string& s) {
  std::vector<Json> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) v.push_back(Json::parse(l));
  return v;
}

const Json* obligation(const std::vector<Json>& ls, const std::string& text) {
  for (const auto& j : ls)
    if (j["kind"] == "obligation" && j["text"] == text) return &j;
  return nullptr;
}

// Oracle: a zonal is consistent when its time is master plus offset, mod a day.
bool consistent(long master, const Value& zone) {
  const long off = zone.items()[1].as_int();
  return secs_of(zone.items()[2]) == ((master + off) % 86400 + 86400) % 86400;
}

struct Clocks {
  Store store;
  ObjectId m;
  std::vector<ObjectId> zonals;
};

Clocks clocks(Engine& e, long master, const std::vector<std::pair<long, bool>>& zones) {
  Clocks c;
  c.m = e.construct(c.store, "MasterClock", {}, time_value(master), "m");
  int i = 0;
  for (auto [off, fresh] : zones) {
    const long t = fresh ? master + off : master + off - 7;
    c.zonals.push_back(e.construct(c.store, "ZonalClock", {Value::object("MasterClock", c.m)},
                                   zone_value("z" + std::to_string(i), off, t),
                                   "z" + std::to_string(i)));
    ++i;
  }
  return c;
}

Outcome obligations() {
  Outcome r;
  const Captured c = capture(cmd_test, on({spec_dir()}));
  const auto ls = json_lines(c.out);
  r.require(c.rc == kExitOk, "test exit " + std::to_string(c.rc));
  for (const char* text : {"succ(pred(t)) == t", "isUpToDate(t, update(t, z))"}) {
    const Json* j = obligation(ls, text);
    r.require(j != nullptr, std::string("no obligation ") + text);
    if (!j) continue;
    r.require((*j)["verdict"] == "pass", std::string(text) + " not passed");
    r.require((*j)["cases"].get<long>() >= 1000, std::string(text) + " tested on too few cases");
  }
  r.require(!ls.empty() && ls.back()["kind"] == "summary" && ls.back()["failures"] == 0,
            "nonzero failures");
  return r;
}

Outcome typo_sensitivity() {
  Outcome r;
  WorkspaceOptions lit;
  lit.paper_literal = {"second-bound"};
  auto ws = load({spec_dir()}, lit);
  ObligationReport rep;
  check_obligations(*ws->theory("Time"), TestBudget{}, rep);
  int valid_failures = 0;
  bool time_example = false;
  for (const auto& o : rep.obligations) {
    if (o.verdict != "fail" || o.text.find("isValid") == std::string::npos) continue;
    ++valid_failures;
    for (const auto& [name, v] : o.counterexample)
      if (v.sort() == "Time") time_example = true;
  }
  r.require(valid_failures > 0, "no isValid obligation fails with the literal axiom");
  r.require(time_example, "no Time counterexample");
  CommandOptions o = on({spec_dir()});
  o.paper_literal = {"second-bound"};
  r.require(capture(cmd_test, o).rc == kExitSpec, "literal run does not exit 1");
  auto fixed = load({spec_dir()});
  ObligationReport rep2;
  check_obligations(*fixed->theory("Time"), TestBudget{}, rep2);
  r.require(rep2.failures() == 0, "corrected axiom still fails");
  return r;
}

Outcome consistency() {
  Outcome r;
  auto ws = load({spec_dir()});
  Engine e(*ws);
  const long start = secs(10, 0, 0);
  Clocks c = clocks(e, start, {{0, true}, {3600, true}, {-18000, true}});
  for (int tick = 1; tick <= 5; ++tick) {
    e.call(c.store, c.m, "SetChange", {});
    const long master = secs_of(*c.store.value(c.m));
    r.require(master == start + tick, "master off after tick " + std::to_string(tick));
    for (ObjectId z : c.store.members(c.m))
      r.require(consistent(master, *c.store.value(z)),
                "inconsistent zonal after tick " + std::to_string(tick));
  }
  r.require(*c.store.value(c.m) == time_value(secs(10, 0, 5)), "master is not 10:00:05");
  CommandOptions o = on({spec_dir()});
  o.scenario = corpus("scenarios/consistency.scenario");
  const Captured s = capture(cmd_simulate, o);
  r.require(s.rc == kExitOk, "consistency scenario exit " + std::to_string(s.rc));
  return r;
}

Outcome trace_shape() {
  Outcome r;
  auto ws = load({spec_dir()});
  for (const auto& zones : std::vector<std::vector<std::pair<long, bool>>>{
           {{3600, true}, {-18000, true}},
           {{3600, false}, {-18000, true}},
           {{3600, false}, {-18000, false}}}) {
    Trace trace;
    Engine e(*ws, {}, &trace);
    Clocks c = clocks(e, secs(10, 0, 0), zones);
    const long next = secs_of(*c.store.value(c.m)) + 1;
    int stale = 0;
    for (ObjectId z : c.zonals)
      if (!consistent(next, *c.store.value(z))) ++stale;
    trace.clear();
    e.call(c.store, c.m, "SetChange", {});
    std::map<std::string, int> begins;
    for (const auto& ev : trace.events())
      if (ev["kind"] == "begin") ++begins[ev["method"].get<std::string>()];
    std::map<std::string, int> want{{"SetChange", 1},      {"SetSecond", 1},
                                    {"SetZonalClocks", 1}, {"UpdateZonalClock", 2},
                                    {"GetTime", stale},    {"SetZonalTime", stale}};
    if (stale == 0) {
      want.erase("GetTime");
      want.erase("SetZonalTime");
    }
    r.require(begins == want, "event multiset differs with " + std::to_string(stale) + " stale zonals");
  }
  return r;
}

Outcome categorization() {
  Outcome r;
  CommandOptions o = on({spec_dir()});
  o.text = true;
  const Captured c = capture(cmd_categorize, o);
  r.require(c.rc == kExitOk, "categorize exit " + std::to_string(c.rc));
  std::vector<std::string> groups;
  std::istringstream in(c.out);
  for (std::string l; std::getline(in, l);)
    if (l.rfind("MasterClock ", 0) == 0) groups.push_back(l);
  const std::vector<std::string> want{"MasterClock O: {Attach, Detach, SetSecond}",
                                      "MasterClock O-E: {SetZonalClocks, SetChange}",
                                      "MasterClock V: {GetTime}"};
  r.require(groups == want, "MasterClock groups differ");
  return r;
}

Outcome frame() {
  Outcome r;
  CommandOptions o = on({spec_dir(), mutant("frame-setsecond")});
  o.scenario = mutant("frame-setsecond/frame.scenario");
  const Captured c = capture(cmd_simulate, o);
  r.require(c.rc == kExitViolation, "exit " + std::to_string(c.rc));
  bool named = false;
  for (const auto& j : json_lines(c.out))
    if (j["kind"] == "violation" && j.value("violation", "") == "frame" &&
        j.value("objects", Json::array()) == Json::array({"paris"}))
      named = true;
  r.require(named, "no frame violation naming paris");
  return r;
}

Outcome independence() {
  Outcome r;
  auto ws = load({spec_dir()});
  const RedundancyReport rep = check_redundancy(*ws, {});
  r.require(rep.independence.size() == 1, "expected one independent composition");
  for (const auto& i : rep.independence) {
    r.require(i.method == "SetZonalClocks", "unexpected method " + i.method);
    r.require(i.stores == 20 && i.permutations == 5, "wrong sample counts");
    r.require(i.verdict == "pass", "permutations diverge: " + i.detail);
  }
  auto bad = load({spec_dir(), mutant("indep-update")});
  const RedundancyReport mrep = check_redundancy(*bad, {});
  bool flagged = false;
  for (const auto& i : mrep.independence)
    if (i.verdict == "fail") flagged = true;
  r.require(flagged, "interfering mutant not flagged");
  return r;
}

Outcome redundancy() {
  Outcome r;
  auto ws = load({spec_dir()});
  const RedundancyReport rep = check_redundancy(*ws, {});
  std::set<std::string> passed;
  for (const auto& m : rep.methods)
    if (m.verdict == "pass" && m.failed == 0 && m.passed > 0) passed.insert(m.cls + "." + m.method);
  const std::set<std::string> want{"MasterClock.SetChange", "MasterClock.SetZonalClocks",
                                   "ZonalClock.UpdateZonalClock", "ZonalClock.ZonalClock"};
  r.require(passed == want, "not every body satisfies its role contract");
  auto bad = load({spec_dir(), mutant("swapped-setchange")});
  bool caught = false;
  for (const auto& m : check_redundancy(*bad, {}).methods)
    if (m.method == "SetChange" && m.verdict == "fail") caught = true;
  r.require(caught, "swapped SetChange not caught");
  return r;
}

Outcome layering() {
  Outcome r;
  r.require(capture(cmd_check, on({spec_dir()})).rc == kExitOk, "corpus rejected");
  for (const char* m : {"upcall-trait", "upcall-role"}) {
    const Captured c = capture(cmd_check, on({spec_dir(), mutant(m)}));
    r.require(c.rc == kExitSpec, std::string(m) + " accepted");
    r.require(c.err.find("layering") != std::string::npos, std::string(m) + " not a layering error");
  }
  return r;
}

std::string strip_choices(const std::string& trace) {
  std::string out;
  for (Json j : json_lines(trace)) {
    for (const char* f : {"seed", "orders", "picked"}) j.erase(f);
    out += j.dump() + "\n";
  }
  return out;
}

Outcome determinism() {
  Outcome r;
  CommandOptions o = on({spec_dir()});
  o.scenario = corpus("scenarios/consistency.scenario");
  o.seed = 42;
  const Captured a = capture(cmd_simulate, o);
  const Captured b = capture(cmd_simulate, o);
  r.require(a.out == b.out && !a.out.empty(), "seed 42 traces differ");
  o.seed = 7;
  const Captured c = capture(cmd_simulate, o);
  r.require(c.rc == a.rc, "verdict changes with the seed");
  r.require(strip_choices(c.out) == strip_choices(a.out),
            "seeds differ outside choice and permutation fields");
  return r;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 when untimed
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "obligation discharge", 5, obligations},
      {2, "typo sensitivity", 5, typo_sensitivity},
      {3, "end-to-end consistency", 2, consistency},
      {4, "trace shape", 2, trace_shape},
      {5, "categorization", 0, categorization},
      {6, "frame enforcement", 0, frame},
      {7, "independence", 10, independence},
      {8, "checkable redundancy", 10, redundancy},
      {9, "layering", 0, layering},
      {10, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.why = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.limit_s > 0 && s > c.limit_s) {
      o.ok = false;
      o.why = "took " + std::to_string(s) + " s";
    }
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << s;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " (" << time.str()
              << " s)" << (o.ok ? "" : ": " + o.why) << "\n";
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
