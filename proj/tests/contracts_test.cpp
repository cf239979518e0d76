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

using namespace tierspec;
using namespace testsupport;

namespace {

std::string label(const Workspace& ws, const std::string& role, const std::string& method) {
  const BoundRole* r = ws.role(role);
  REQUIRE(r);
  const MethodContract* m = r->find(method);
  REQUIRE(m);
  return categorize(*m, *r->theory).label();
}

SourceUnit role_unit(const std::string& body) {
  return parse_role_spec("MasterClock : role specification\nuses WorldClock\n" + body, "t.role");
}

}  // namespace

TEST_SUITE("role-contracts") {
  TEST_CASE("master clock categories") {
    auto ws = load({spec_dir()});
    CHECK(label(*ws, "MasterClock", "Attach") == "O");
    CHECK(label(*ws, "MasterClock", "Detach") == "O");
    CHECK(label(*ws, "MasterClock", "SetSecond") == "O");
    CHECK(label(*ws, "MasterClock", "GetTime") == "V");
    CHECK(label(*ws, "MasterClock", "SetZonalClocks") == "O-E");
    CHECK(label(*ws, "MasterClock", "SetChange") == "O-E");
  }

  TEST_CASE("zonal clock categories") {
    auto ws = load({spec_dir()});
    CHECK(label(*ws, "ZonalClock", "ZonalClock") == "O-E");
    CHECK(label(*ws, "ZonalClock", "UpdateZonalClock") == "O");
    CHECK(label(*ws, "ZonalClock", "SetZonalTime") == "O");
  }

  TEST_CASE("value and state together is non-canonical") {
    Workspace ws;
    ws.load({spec_dir()});
    ws.add_unit(role_unit(
        "Int Bump() { modifies self; ensures self' = succ(self^) /\\ result = 1; }\n"
        "SetSecond() { modifies self; ensures self' = succ(self^); }\n"
        "Attach(z: ZonalClock) { modifies zonalClocksOf(self); ensures z in zonalClocksOf(self); }\n"
        "Int GetTime() { ensures result = toInt(self^); }\n"
        "SetZonalClocks() { modifies containedObjects(zonalClocksOf(self), pre);\n"
        "  ensures forall z: ZonalClock (z in zonalClocksOf(self) => isConsistent(self, z, post)); }\n"));
    ws.bind();
    const BoundRole* r = ws.role("MasterClock");
    const Category c = categorize(*r->find("Bump"), *r->theory);
    CHECK(c.non_canonical);
    CHECK_FALSE(c.v);
    CHECK(c.o);
  }

  TEST_CASE("result in a method without a return sort") {
    Workspace ws;
    ws.load({spec_dir()});
    ws.add_unit(role_unit("Tick() { modifies self; ensures result = 1; }\n"));
    CHECK_THROWS_WITH_AS(ws.bind(), doctest::Contains("returns no value"), SpecError);
  }

  TEST_CASE("constructive steps") {
    auto ws = load({spec_dir()});
    const MethodContract* set_second = ws->role("MasterClock")->find("SetSecond");
    REQUIRE(set_second->steps.size() == 1);
    CHECK(set_second->steps[0].kind == StepKind::SetValue);
    CHECK(ws->role("MasterClock")->find("Attach")->steps[0].kind == StepKind::AddMember);
    CHECK(ws->role("MasterClock")->find("Detach")->steps[0].kind == StepKind::RemoveMember);
    CHECK(ws->role("ZonalClock")->find("ZonalClock")->steps[0].kind == StepKind::SetOwner);
    CHECK_FALSE(ws->role("MasterClock")->find("SetChange")->non_constructive.empty());
  }

  TEST_CASE("frame check names the object outside the frame") {
    auto ws = load({spec_dir()});
    const BoundRole* r = ws->role("MasterClock");
    Store pre;
    const ObjectId m = pre.create("MasterClock", time_value(secs(10, 0, 0)), "m");
    const ObjectId z = pre.create("ZonalClock", zone_value("Paris", 3600, secs(11, 0, 0)), "paris");
    pre.attach(z, m);
    Store post = pre;
    post.set_value(m, time_value(secs(10, 0, 1)));
    const Bindings b{{"self", Value::object("MasterClock", m)}};
    CHECK(check_frame(*r->find("SetSecond"), *r->theory, pre, post, b).ok());
    post.set_value(z, zone_value("Paris", 3600, 0));
    const FrameVerdict v = check_frame(*r->find("SetSecond"), *r->theory, pre, post, b);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].object == z);
    // The zonal is inside SetChange's frame.
    CHECK(check_frame(*r->find("SetChange"), *r->theory, pre, post, b).ok());
  }

  TEST_CASE("ensures evaluated over two stores") {
    auto ws = load({spec_dir()});
    const BoundRole* r = ws->role("MasterClock");
    Store pre;
    const ObjectId m = pre.create("MasterClock", time_value(5), "m");
    const ObjectId z = pre.create("ZonalClock", zone_value("A", 0, 5), "a");
    Store post = pre;
    post.attach(z, m);
    const Bindings b{{"self", Value::object("MasterClock", m)},
                     {"z", Value::object("ZonalClock", z)}};
    const MethodContract* attach = r->find("Attach");
    CHECK(eval_clause(attach->ensures_clause, *r->theory, pre, post, b));
    CHECK_FALSE(eval_clause(attach->ensures_clause, *r->theory, pre, pre, b));
  }

  TEST_CASE("misspelled constructs is accepted with a warning") {
    auto ws = load({spec_dir()});
    bool warned = false;
    for (const auto& d : ws->lint().items())
      if (d.message.find("contructs") != std::string::npos) warned = true;
    CHECK(warned);
  }
}
