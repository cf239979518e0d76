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

#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tierspec/obligations.hpp"

using namespace tierspec;
using namespace testsupport;

namespace {

const ObligationResult* find(const ObligationReport& r, const std::string& text) {
  for (const auto& o : r.obligations)
    if (o.text == text) return &o;
  return nullptr;
}

}  // namespace

TEST_SUITE("trait-kernel") {
  TEST_CASE("time arithmetic agrees with a direct computation") {
    auto ws = load({spec_dir()});
    const TheoryPtr th = ws->theory("Time");
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> day(0, 86399), delta(-200000, 200000);
    for (int i = 0; i < 200; ++i) {
      const long t = day(rng), d = delta(rng);
      const Bindings b{{"t", time_value(t)}, {"d", Value::integer(d)}};
      const std::vector<std::pair<std::string, std::string>> vars{{"t", "Time"}, {"d", "Int"}};
      CHECK(eval_in(*th, "toInt(t)", nullptr, b, vars) == Value::integer(t));
      CHECK(eval_in(*th, "inc(t, d)", nullptr, b, vars) == time_value(t + d));
      CHECK(eval_in(*th, "succ(t)", nullptr, b, vars) == time_value(t + 1));
      CHECK(eval_in(*th, "pred(t)", nullptr, b, vars) == time_value(t - 1));
    }
    CHECK(eval_in(*th, "succ([23, 59, 59])") == time_value(0));
  }

  TEST_CASE("validity bounds") {
    auto ws = load({spec_dir()});
    const TheoryPtr th = ws->theory("Time");
    CHECK(eval_in(*th, "isValid([0, 0, 0])").as_bool());
    CHECK(eval_in(*th, "isValid([23, 59, 59])").as_bool());
    CHECK_FALSE(eval_in(*th, "isValid([0, 0, 60])").as_bool());
    CHECK_FALSE(eval_in(*th, "isValid([24, 0, 0])").as_bool());
  }

  TEST_CASE("zone update matches offset arithmetic") {
    auto ws = load({spec_dir()});
    const TheoryPtr th = ws->theory("Zone");
    const Bindings b{{"t", time_value(secs(10, 0, 0))},
                     {"z", zone_value("New York", -18000, 0)}};
    const std::vector<std::pair<std::string, std::string>> vars{{"t", "Time"}, {"z", "Zone"}};
    CHECK(eval_in(*th, "update(t, z)", nullptr, b, vars) ==
          zone_value("New York", -18000, secs(5, 0, 0)));
    CHECK(eval_in(*th, "isUpToDate(t, update(t, z))", nullptr, b, vars).as_bool());
    CHECK_FALSE(eval_in(*th, "isUpToDate(t, z)", nullptr, b, vars).as_bool());
  }

  TEST_CASE("unknown operators are named") {
    auto ws = load({spec_dir()});
    try {
      checked(*ws->theory("Time"), "frobnicate(1)");
      FAIL("no error");
    } catch (const SpecError& e) {
      CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
    }
  }

  TEST_CASE("grid pools") {
    Grid g = Grid::defaults();
    REQUIRE(g.find("second"));
    CHECK(g.find("second")->size() == 3);
    g.set("second=0,30");
    CHECK(g.find("second")->size() == 2);
    g.set("name=Oslo");
    CHECK((*g.find("name"))[0] == Value::string("Oslo"));
    auto ws = load({spec_dir()});
    ValueGenerator gen(*ws->theory("Time"), Grid::defaults(), 42);
    CHECK(gen.grid("Time").size() == 27);
    CHECK(gen.supports("Time"));
  }

  TEST_CASE("corpus obligations are discharged") {
    auto ws = load({spec_dir()});
    ObligationReport r;
    std::set<std::string> seen;
    for (const TheoryPtr& th : ws->trait_theories()) check_obligations(*th, TestBudget{}, r, &seen);
    CHECK(r.failures() == 0);
    const ObligationResult* sp = find(r, "succ(pred(t)) == t");
    REQUIRE(sp);
    CHECK(sp->verdict == "pass");
    CHECK(sp->cases >= 27 + 1000);
    const ObligationResult* up = find(r, "isUpToDate(t, update(t, z))");
    REQUIRE(up);
    CHECK(up->verdict == "pass");
    for (const auto& p : r.partitions)
      if (p.sort == "Time") CHECK(p.verdict == "vacuous");
    REQUIRE_FALSE(r.generated.empty());
    CHECK(r.generated[0].sort == "Set[ZonalClock]");
  }

  TEST_CASE("store-dependent axioms are deferred") {
    auto ws = load({spec_dir()});
    ObligationReport r;
    check_obligations(*ws->theory("WorldClock"), TestBudget{}, r);
    const ObligationResult* a = find(r, "masterOf(z) = m == z in zonalClocksOf(m)");
    REQUIRE(a);
    CHECK(a->verdict == "deferred");
  }

  TEST_CASE("restored second bound yields a counterexample") {
    WorkspaceOptions o;
    o.paper_literal = {"second-bound"};
    auto ws = load({spec_dir()}, o);
    ObligationReport r;
    check_obligations(*ws->theory("Time"), TestBudget{}, r);
    CHECK(r.failures() > 0);
    const ObligationResult* v = find(r, "isValid(currentTime)");
    REQUIRE(v);
    CHECK(v->verdict == "fail");
    REQUIRE(v->counterexample.size() == 1);
    CHECK(v->counterexample[0].second.sort() == "Time");
  }

  TEST_CASE("seed changes samples but not verdicts") {
    auto ws = load({spec_dir()});
    ObligationReport a, b;
    TestBudget tb;
    tb.random_count = 200;
    check_obligations(*ws->theory("Time"), tb, a);
    tb.seed = 99;
    check_obligations(*ws->theory("Time"), tb, b);
    REQUIRE(a.obligations.size() == b.obligations.size());
    for (std::size_t i = 0; i < a.obligations.size(); ++i)
      CHECK(a.obligations[i].verdict == b.obligations[i].verdict);
  }
}
