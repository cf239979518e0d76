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
#include <regex>

#include "doctest.h"
#include "support.hpp"
#include "tierspec/commands.hpp"
#include "tierspec/corpus.hpp"

using namespace tierspec;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("manifest verifies") {
    CorpusOptions o;
    o.root = TIERSPEC_CORPUS_DIR;
    const CorpusReport r = verify_corpus(o);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.ok);
    }
    CHECK(r.checks.size() == 15);
  }

  TEST_CASE("golden traces regenerate byte for byte") {
    for (const char* name : {"worldclock", "consistency"}) {
      CAPTURE(name);
      CommandOptions o;
      o.paths = {spec_dir()};
      o.scenario = corpus(std::string("scenarios/") + name + ".scenario");
      std::ostringstream out, err;
      REQUIRE(cmd_simulate(o, out, err) == 0);
      CHECK(out.str() == slurp(corpus(std::string("golden/") + name + ".trace")));
    }
  }

  TEST_CASE("every paper-literal tag is documented") {
    const std::string deviations = slurp(corpus("DEVIATIONS.md"));
    int tags = 0;
    for (const auto& entry : fs::directory_iterator(spec_dir())) {
      for (const std::string& id : paper_literal_tags(slurp(entry.path()))) {
        CAPTURE(id);
        CHECK(deviations.find("`" + id + "`") != std::string::npos);
        ++tags;
      }
    }
    CHECK(tags == 2);
  }

  TEST_CASE("a missing golden is reported") {
    const fs::path dir = fs::temp_directory_path() / "tierspec-corpus-test";
    fs::remove_all(dir);
    fs::create_directories(dir / "scenarios");
    fs::copy(spec_dir(), dir / "worldclock");
    fs::copy_file(corpus("scenarios/empty.scenario"), dir / "scenarios/empty.scenario");
    std::ofstream(dir / "manifest.json")
        << R"({"spec": "worldclock", "scenarios": [{"file": "scenarios/empty.scenario", "golden": "golden/empty.trace", "exit": 0}]})";
    CorpusOptions o;
    o.root = dir.string();
    const CorpusReport r = verify_corpus(o);
    CHECK_FALSE(r.ok());
  }
}
