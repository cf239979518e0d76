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

#include "doctest.h"
#include "support.hpp"
#include "tierspec/derive.hpp"
#include "tierspec/redundancy.hpp"
#include "tierspec/scenario.hpp"

using namespace tierspec;
using namespace testsupport;

namespace {

struct Clocks {
  Store store;
  ObjectId m;
  std::vector<ObjectId> zonals;
};

// One master at `master` seconds with zonals given by offset; each zonal
// starts consistent unless `stale` is set.
Clocks make_clocks(Engine& e, long master, const std::vector<long>& offsets, bool stale = true) {
  Clocks c;
  c.m = e.construct(c.store, "MasterClock", {}, time_value(master), "m");
  int i = 0;
  for (long off : offsets) {
    const long t = stale ? master + off - 1 : master + off;
    c.zonals.push_back(e.construct(c.store, "ZonalClock",
                                   {Value::object("MasterClock", c.m)},
                                   zone_value("z" + std::to_string(i), off, t),
                                   "z" + std::to_string(i)));
    ++i;
  }
  return c;
}

const char* kExtraInteraction = R"(
WorldClock : interaction

class MasterClock {
  method SetZonalClocks() { |_ z in zonalClocksOf(self) _| z.UpdateZonalClock() }
  method SetChange() { SetSecond(); SetZonalClocks() }
  method Either(z: ZonalClock) { Detach(z) [] SetSecond() }
  method TickTo(i: Int) { while toInt(self') < i do SetSecond() }
  method Forever() { while true do SetSecond() }
}

class ZonalClock {
  method ZonalClock(m: MasterClock) { m.Attach(self) }
  method UpdateZonalClock() {
    if ~isConsistent(masterOf(self), self, pre)
      then
        let i: Int = masterOf(self).GetTime()
        in SetZonalTime(i)
  }
}
)";

std::unique_ptr<Workspace> extra_ws() {
  auto ws = std::make_unique<Workspace>();
  ws->load({spec_dir()});
  ws->add_source(kExtraInteraction, "extra.inter");
  ws->bind();
  return ws;
}

}  // namespace

TEST_SUITE("interaction-engine") {
  TEST_CASE("one tick with two zonals") {
    auto ws = load({spec_dir()});
    Trace trace;
    Engine e(*ws, {}, &trace);
    Clocks c = make_clocks(e, secs(10, 0, 0), {3600, -18000}, false);
    trace.clear();
    e.call(c.store, c.m, "SetChange", {});
    CHECK(*c.store.value(c.m) == time_value(secs(10, 0, 1)));
    CHECK(*c.store.value(c.zonals[0]) == zone_value("z0", 3600, secs(11, 0, 1)));
    CHECK(*c.store.value(c.zonals[1]) == zone_value("z1", -18000, secs(5, 0, 1)));
    CHECK(count_begins(trace, "SetSecond") == 1);
    CHECK(count_begins(trace, "SetZonalClocks") == 1);
    CHECK(count_begins(trace, "UpdateZonalClock") == 2);
    CHECK(count_begins(trace, "GetTime") == 2);
    CHECK(count_begins(trace, "SetZonalTime") == 2);
    // SetSecond comes before any zonal update.
    std::vector<std::string> order;
    for (const auto& ev : trace.events())
      if (ev["kind"] == "begin") order.push_back(ev["method"]);
    REQUIRE(order.size() >= 3);
    CHECK(order[0] == "SetChange");
    CHECK(order[1] == "SetSecond");
    CHECK(order[2] == "SetZonalClocks");
  }

  TEST_CASE("consistent zonal skips the update") {
    auto ws = load({spec_dir()});
    Trace trace;
    Engine e(*ws, {}, &trace);
    Clocks c = make_clocks(e, secs(10, 0, 0), {3600}, false);
    const Store before = c.store;
    trace.clear();
    e.call(c.store, c.zonals[0], "UpdateZonalClock", {});
    CHECK(c.store.same_state(before));
    CHECK(count_begins(trace, "SetZonalTime") == 0);
    bool guard_false = false;
    for (const auto& ev : trace.events())
      if (ev["kind"] == "guard" && ev["value"] == false) guard_false = true;
    CHECK(guard_false);
  }

  TEST_CASE("independent composition over no zonals") {
    auto ws = load({spec_dir()});
    Trace trace;
    Engine e(*ws, {}, &trace);
    Clocks c = make_clocks(e, 100, {});
    const Store before = c.store;
    trace.clear();
    e.call(c.store, c.m, "SetZonalClocks", {});
    CHECK(c.store.same_state(before));
    CHECK(count_begins(trace, "UpdateZonalClock") == 0);
  }

  TEST_CASE("constructor attaches to its master") {
    auto ws = load({spec_dir()});
    Engine e(*ws);
    Clocks c = make_clocks(e, 0, {60});
    CHECK(c.store.owner(c.zonals[0]) == c.m);
    CHECK(c.store.members(c.m) == std::vector<ObjectId>{c.zonals[0]});
  }

  TEST_CASE("GetTime returns the master's seconds") {
    auto ws = load({spec_dir()});
    Engine e(*ws);
    Clocks c = make_clocks(e, secs(13, 14, 15), {});
    CHECK(e.call(c.store, c.m, "GetTime", {}) == Value::integer(secs(13, 14, 15)));
  }

  TEST_CASE("requires failure blames the caller and changes nothing") {
    auto ws = load({spec_dir()});
    Engine e(*ws);
    Clocks c = make_clocks(e, 0, {});
    Store other_store = c.store;
    const ObjectId z = other_store.create("ZonalClock", zone_value("x", 0, 0), "x");
    const Store before = other_store;
    try {
      e.call(other_store, c.m, "Detach", {Value::object("ZonalClock", z)});
      FAIL("no violation");
    } catch (const ContractViolation& v) {
      CHECK(v.kind() == ViolationKind::Requires);
      CHECK(v.blame() == "caller");
    }
    CHECK(other_store.same_state(before));
  }

  TEST_CASE("failed ensures leaves the store untouched") {
    auto ws = load({spec_dir(), mutant("swapped-setchange")});
    Engine e(*ws);
    Clocks c = make_clocks(e, secs(10, 0, 0), {3600, 0}, false);
    const Store before = c.store;
    try {
      e.call(c.store, c.m, "SetChange", {});
      FAIL("no violation");
    } catch (const ContractViolation& v) {
      CHECK(v.kind() == ViolationKind::Ensures);
      CHECK(v.blame() == "specification");
    }
    CHECK(c.store.same_state(before));
  }

  TEST_CASE("re-attachment to another master is rejected") {
    auto ws = load({spec_dir()});
    Engine e(*ws);
    Clocks c = make_clocks(e, 0, {0});
    const ObjectId m2 = e.construct(c.store, "MasterClock", {}, time_value(0), "m2");
    try {
      e.call(c.store, m2, "Attach", {Value::object("ZonalClock", c.zonals[0])});
      FAIL("no violation");
    } catch (const ContractViolation& v) {
      CHECK(v.kind() == ViolationKind::Policy);
    }
  }

  TEST_CASE("choice picks only enabled branches") {
    auto ws = extra_ws();
    for (std::uint64_t seed : {1u, 2u, 3u, 42u}) {
      RunPolicy p;
      p.seed = seed;
      Engine e(*ws, p);
      Clocks c = make_clocks(e, 0, {});
      const ObjectId loose = c.store.create("ZonalClock", zone_value("l", 0, 0), "l");
      e.call(c.store, c.m, "Either", {Value::object("ZonalClock", loose)});
      CHECK(*c.store.value(c.m) == time_value(1));
    }
  }

  TEST_CASE("choice decisions follow the seed") {
    auto ws = extra_ws();
    std::set<bool> detached;
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
      RunPolicy p;
      p.seed = seed;
      Trace t;
      Engine e(*ws, p, &t);
      Clocks c = make_clocks(e, 0, {0});
      e.call(c.store, c.m, "Either", {Value::object("ZonalClock", c.zonals[0])});
      detached.insert(!c.store.owner(c.zonals[0]).has_value());
      bool recorded = false;
      for (const auto& ev : t.events())
        if (ev["kind"] == "choice") recorded = ev["enabled"].size() == 2;
      CHECK(recorded);
    }
    CHECK(detached.size() == 2);
  }

  TEST_CASE("while loops re-test their guard and respect the cap") {
    auto ws = extra_ws();
    Engine e(*ws);
    Clocks c = make_clocks(e, 10, {});
    e.call(c.store, c.m, "TickTo", {Value::integer(15)});
    CHECK(*c.store.value(c.m) == time_value(15));
    e.call(c.store, c.m, "TickTo", {Value::integer(3)});
    CHECK(*c.store.value(c.m) == time_value(15));
    RunPolicy p;
    p.while_cap = 5;
    Engine capped(*ws, p);
    const Store before = c.store;
    CHECK_THROWS_AS(capped.call(c.store, c.m, "Forever", {}), ContractViolation);
    CHECK(c.store.same_state(before));
  }

  TEST_CASE("interfering components are reported") {
    auto ws = load({spec_dir(), mutant("indep-update")});
    Engine e(*ws);
    Clocks c = make_clocks(e, 0, {0, 60});
    try {
      e.call(c.store, c.m, "SetZonalClocks", {});
      FAIL("no violation");
    } catch (const ContractViolation& v) {
      CHECK(v.kind() == ViolationKind::Divergence);
    }
  }

  TEST_CASE("same seed, same trace") {
    auto ws = load({spec_dir()});
    const Scenario s = load_scenario(corpus("scenarios/consistency.scenario"));
    const ScenarioOutcome a = run_scenario(s, *ws);
    const ScenarioOutcome b = run_scenario(s, *ws);
    CHECK(a.exit_code == 0);
    CHECK(a.trace.str() == b.trace.str());
  }

  TEST_CASE("derived contract of SetChange") {
    auto ws = load({spec_dir()});
    const BoundMethod* m = ws->interaction()->find("MasterClock", "SetChange");
    REQUIRE(m);
    const CompoundContract c = derive_contract(*m, ws->table(), *ws->runtime_theory());
    CHECK(c.root.rule == "seq");
    REQUIRE(c.root.post);
    const std::string post = render_term(c.root.post);
    CHECK(post.find("self' = succ(self^)") != std::string::npos);
    CHECK(post.find("isConsistent(self, z, post)") != std::string::npos);
    const BoundMethod* u = ws->interaction()->find("ZonalClock", "UpdateZonalClock");
    const CompoundContract cu = derive_contract(*u, ws->table(), *ws->runtime_theory());
    CHECK(cu.root.rule == "if");
    CHECK(cu.root.conditions.size() == 2);
    const BoundMethod* s = ws->interaction()->find("MasterClock", "SetZonalClocks");
    const CompoundContract cs = derive_contract(*s, ws->table(), *ws->runtime_theory());
    CHECK(cs.root.rule.rfind("indep", 0) == 0);
  }

  TEST_CASE("bodies satisfy their role contracts") {
    auto ws = load({spec_dir()});
    const RedundancyReport r = check_redundancy(*ws, {});
    CHECK(r.ok());
    REQUIRE(r.methods.size() == 4);
    for (const auto& m : r.methods) {
      CAPTURE(m.method);
      CHECK(m.verdict == "pass");
      CHECK(m.passed > 0);
    }
    REQUIRE(r.independence.size() == 1);
    CHECK(r.independence[0].stores == 20);
  }

  TEST_CASE("swapped SetChange fails its contract") {
    auto ws = load({spec_dir(), mutant("swapped-setchange")});
    const RedundancyReport r = check_redundancy(*ws, {});
    CHECK_FALSE(r.ok());
    for (const auto& m : r.methods)
      if (m.method == "SetChange") CHECK(m.verdict == "fail");
  }
}
