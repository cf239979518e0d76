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

#include <iostream>

#include "CLI11.hpp"
#include "tierspec/commands.hpp"
#include "tierspec/corpus.hpp"
#include "tierspec/diagnostics.hpp"

using namespace tierspec;

namespace {

void add_common(CLI::App* sub, CommandOptions& o, std::vector<std::string>& literal) {
  sub->add_option("paths", o.paths, "spec files or directories")->required();
  sub->add_option("--lib", o.lib, "trait library directory (default: TIERSPEC_LIB, then built-in)");
  sub->add_option("--paper-literal", literal,
                  "restore the original text of a tagged line (id or 'all')");
}

void add_budget(CLI::App* sub, CommandOptions& o, std::uint64_t& seed, int& perm) {
  sub->add_option("--seed", seed, "RNG seed (default 42)");
  sub->add_option("--perm-samples", perm, "permutations per independent composition (default 5)");
  sub->add_option("--while-cap", o.while_cap, "iteration cap for loops")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tierspec: check, test and simulate three-tier specifications"};
  app.require_subcommand(1);

  CommandOptions o;
  std::vector<std::string> literal;
  std::uint64_t seed = 42;
  int perm = 5;

  auto* check = app.add_subcommand("check", "parse, bind, sort-check and layering check");
  add_common(check, o, literal);

  auto* test = app.add_subcommand("test", "bounded testing of obligations and redundancies");
  add_common(test, o, literal);
  add_budget(test, o, seed, perm);
  test->add_option("--grid", o.grid, "grid pool, e.g. second=0,1,59 (repeatable)");
  test->add_option("--random-count", o.random_count, "random cases per obligation")
      ->capture_default_str();
  test->add_option("--samples", o.samples, "sampled stores for redundancy checks")
      ->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "run a scenario and print its trace");
  add_common(sim, o, literal);
  add_budget(sim, o, seed, perm);
  sim->add_option("--scenario,-s", o.scenario, "scenario file");
  sim->add_option("--trace", o.trace_out, "write the trace to a file instead of stdout");

  auto* cat = app.add_subcommand("categorize", "V/O/E category of every role method");
  add_common(cat, o, literal);
  cat->add_flag("--text", o.text, "plain table instead of JSON lines");

  CorpusOptions corpus;
  auto* verify = app.add_subcommand("verify", "run the corpus manifest against its goldens");
  verify->add_option("root", corpus.root, "corpus directory")->required();
  verify->add_option("--lib", corpus.lib, "trait library directory");
  verify->add_flag("--update-goldens", corpus.update_goldens, "rewrite golden traces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSpec;
  }

  o.paper_literal.insert(literal.begin(), literal.end());
  if (app.got_subcommand(test) || app.got_subcommand(sim)) {
    const auto* sub = app.got_subcommand(test) ? test : sim;
    if (sub->count("--seed")) o.seed = seed;
    if (sub->count("--perm-samples")) o.perm_samples = perm;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check(o, std::cout, std::cerr);
    if (app.got_subcommand(test)) return cmd_test(o, std::cout, std::cerr);
    if (app.got_subcommand(cat)) return cmd_categorize(o, std::cout, std::cerr);
    if (app.got_subcommand(sim)) {
      // A trailing .scenario path may stand in for --scenario.
      if (o.scenario.empty() && !o.paths.empty() && o.paths.back().size() > 9 &&
          o.paths.back().compare(o.paths.back().size() - 9, 9, ".scenario") == 0) {
        o.scenario = o.paths.back();
        o.paths.pop_back();
      }
      if (o.scenario.empty()) {
        std::cerr << "simulate: no scenario given\n";
        return kExitSpec;
      }
      return cmd_simulate(o, std::cout, std::cerr);
    }
    const CorpusReport r = verify_corpus(corpus);
    for (const auto& c : r.checks) {
      std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << "\n";
      if (!c.ok && !c.detail.empty()) std::cout << c.detail << "\n";
    }
    return r.ok() ? kExitOk : kExitSpec;
  } catch (const SpecError& e) {
    std::cerr << e.diagnostic() << "\n";
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  }
}
