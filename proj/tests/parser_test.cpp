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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace tierspec;
using namespace testsupport;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_SUITE("spec-parser") {
  TEST_CASE("time trait sections") {
    const SourceUnit u = parse_unit(slurp(corpus("worldclock/Time.trait")), "Time.trait");
    REQUIRE(u.kind == UnitKind::Trait);
    const TraitAst& t = u.trait();
    CHECK(t.name == "Time");
    REQUIRE(t.includes.size() == 2);
    CHECK(t.includes[0].name == "TotalOrder");
    CHECK(t.includes[1].name == "Integer");
    REQUIRE(t.tuples.size() == 1);
    CHECK(t.tuples[0].fields.size() == 3);
    CHECK(t.ops.size() == 11);
    CHECK(t.partitions.size() == 1);
    REQUIRE(t.implies.size() == 1);
    CHECK(render_term(t.implies[0].equations[0].lhs) == "succ(pred(t))");
  }

  TEST_CASE("operator precedence") {
    CHECK(render_term(parse_term("a /\\ b => c")) == "a /\\ b => c");
    const TermPtr t = parse_term("x \\/ y /\\ z");
    CHECK(t->name == "__\\/__");
    CHECK(t->args[1]->name == "__/\\__");
    const TermPtr imp = parse_term("a => b => c");
    CHECK(imp->args[1]->name == "__=>__");
    const TermPtr arith = parse_term("1 + 2 * 3");
    CHECK(arith->name == "__+__");
    CHECK(parse_term("-5")->kind == TermKind::Const);
  }

  TEST_CASE("state notations") {
    CHECK(parse_term("self^")->kind == TermKind::StateValue);
    CHECK(parse_term("self'")->state_ref == StateRef::Post);
    const TermPtr at = parse_term("self\\any");
    CHECK(at->state_ref == StateRef::At);
    CHECK(at->name == "any");
    CHECK(parse_term("m ! post")->name == "__!__");
    CHECK(parse_term("t.second")->kind == TermKind::Project);
  }

  TEST_CASE("a parenthesis on a new line starts a new equation") {
    const char* src =
        "T : trait\n"
        "  introduces f : Int -> Int\n"
        "  asserts forall i : Int\n"
        "    f(i) == i\n"
        "    (f(1) = 1)\n";
    const SourceUnit u = parse_trait(src);
    REQUIRE(u.trait().asserts.size() == 1);
    CHECK(u.trait().asserts[0].equations.size() == 2);
  }

  TEST_CASE("syntax errors list what was expected") {
    try {
      parse_trait("T : trait\n  introduces f : Int ->\n");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.span().line >= 2);
      CHECK_FALSE(e.expected().empty());
    }
  }

  TEST_CASE("role specification") {
    const SourceUnit u = parse_unit(slurp(corpus("worldclock/MasterClock.role")), "m.role");
    REQUIRE(u.kind == UnitKind::Role);
    const RoleAst& r = u.role();
    CHECK(r.uses == "WorldClock");
    REQUIRE(r.methods.size() == 6);
    CHECK(r.methods[2].name == "GetTime");
    CHECK(r.methods[2].return_sort == std::optional<std::string>("Int"));
    CHECK(r.methods[5].modifies.size() == 2);
    const SourceUnit z = parse_unit(slurp(corpus("worldclock/ZonalClock.role")), "z.role");
    CHECK(z.role().methods[0].constructs);
    CHECK(z.role().methods[0].constructs_keyword == "contructs");
  }

  TEST_CASE("method without ensures is rejected") {
    CHECK_THROWS_AS(parse_role_spec("R : role specification uses T\nM() { requires true; }"),
                    SpecError);
  }

  TEST_CASE("interaction bodies") {
    const SourceUnit u = parse_unit(slurp(corpus("worldclock/WorldClock.inter")), "w.inter");
    const InteractionAst& i = u.interaction();
    REQUIRE(i.classes.size() == 2);
    const Action& szc = *i.classes[0].methods[0].body;
    CHECK(szc.kind == ActionKind::Indep);
    CHECK(szc.distributed);
    CHECK(szc.var == "z");
    CHECK(i.classes[0].methods[1].body->kind == ActionKind::Seq);
    const Action& upd = *i.classes[1].methods[1].body;
    CHECK(upd.kind == ActionKind::If);
    CHECK(upd.children[0]->kind == ActionKind::Let);
  }

  TEST_CASE("action combinator precedence") {
    const ActionPtr a = parse_action("a(); b() [] c() /\\ d()");
    REQUIRE(a->kind == ActionKind::Seq);
    const Action& rhs = *a->children[1];
    REQUIRE(rhs.kind == ActionKind::Choice);
    CHECK(rhs.children[1]->kind == ActionKind::Indep);
    CHECK(parse_action("(x).m()")->receiver);
    CHECK(parse_action("while g do m()")->kind == ActionKind::While);
  }

  TEST_CASE("unbound receivers are rejected") {
    CHECK_THROWS_AS(parse_interaction("class C { method M() { q.Go() } }"), SpecError);
  }

  TEST_CASE("rendering round-trips") {
    for (const char* f : {"worldclock/Time.trait", "worldclock/Zone.trait",
                          "worldclock/WorldClock.trait", "worldclock/MasterClock.role",
                          "worldclock/ZonalClock.role", "worldclock/WorldClock.inter"}) {
      CAPTURE(f);
      const SourceUnit u = parse_unit(slurp(corpus(f)), f);
      const SourceUnit again = parse_unit(render(u), f);
      CHECK(same_unit(u, again));
    }
  }

  TEST_CASE("paper-literal restoration") {
    const std::string src = "  a == b\n  %% paper-literal[x]: a == c\n";
    CHECK(paper_literal_tags(src) == std::vector<std::string>{"x"});
    const std::string restored = restore_paper_literal(src, {"x"});
    CHECK(restored.find("  a == c\n") != std::string::npos);
    CHECK(restored.find("a == b") == std::string::npos);
    CHECK(restore_paper_literal(src, {"y"}) == src);
  }
}
