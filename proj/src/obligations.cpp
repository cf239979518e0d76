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

#include "tierspec/obligations.hpp"

#include <algorithm>

namespace tierspec {

Grid Grid::defaults() {
  Grid g;
  auto ints = [](std::initializer_list<std::int64_t> xs) {
    std::vector<Value> out;
    for (auto x : xs) out.push_back(Value::integer(x));
    return out;
  };
  g.keys["hour"] = ints({0, 1, 23});
  g.keys["minute"] = ints({0, 1, 59});
  g.keys["second"] = ints({0, 1, 59});
  g.keys["Int"] = ints({-18000, -1, 0, 1, 3600, 86399});
  g.keys["String"] = {Value::string(""), Value::string("Paris")};
  return g;
}

void Grid::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw SpecError({}, "grid setting '" + assignment + "' is not of the form key=v1,v2");
  const std::string key = assignment.substr(0, eq);
  std::vector<Value> pool;
  std::string rest = assignment.substr(eq + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      pool.push_back(Value::integer(v));
    } catch (const std::exception&) {
      pool.push_back(Value::string(item));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  keys[key] = std::move(pool);
}

const std::vector<Value>* Grid::find(const std::string& key) const {
  auto it = keys.find(key);
  return it == keys.end() || it->second.empty() ? nullptr : &it->second;
}

ValueGenerator::ValueGenerator(const FlatTheory& theory, const Grid& grid, std::uint64_t seed)
    : th_(theory), g_(grid), rng_(seed) {}

const std::vector<Value>* ValueGenerator::pool(const std::string& sort,
                                               const std::string& key) const {
  if (!key.empty())
    if (const auto* p = g_.find(key)) return p;
  return g_.find(sort);
}

bool ValueGenerator::supports(const std::string& sort) const {
  if (sort == "Bool" || g_.find(sort) || th_.is_object_sort(sort)) return true;
  if (const TupleSort* ts = th_.tuple(sort)) {
    for (const auto& f : ts->fields)
      if (!g_.find(sort + "." + f.name) && !g_.find(f.name) && !supports(f.sort)) return false;
    return true;
  }
  if (auto e = th_.element_sort(sort)) return supports(*e);
  return false;
}

std::vector<Value> ValueGenerator::grid(const std::string& sort) { return grid_for(sort, {}); }

std::vector<Value> ValueGenerator::grid_for(const std::string& sort, const std::string& key) {
  if (const auto* p = pool(sort, key)) return *p;
  if (sort == "Bool") return {Value::boolean(false), Value::boolean(true)};
  if (th_.is_object_sort(sort)) {
    std::vector<Value> out;
    for (std::int64_t k = 1; k <= 3; ++k) out.push_back(Value::object(sort, ObjectId{k}));
    return out;
  }
  if (const TupleSort* ts = th_.tuple(sort)) {
    std::vector<std::vector<Value>> fields;
    for (const auto& f : ts->fields) {
      const std::vector<Value>* p = g_.find(sort + "." + f.name);
      fields.push_back(p ? *p : grid_for(f.sort, f.name));
    }
    std::vector<Value> out;
    std::vector<std::size_t> idx(fields.size(), 0);
    while (true) {
      std::vector<Value> items;
      for (std::size_t i = 0; i < fields.size(); ++i) items.push_back(fields[i][idx[i]]);
      out.push_back(Value::tuple(sort, std::move(items)));
      std::size_t i = fields.size();
      while (i > 0 && ++idx[i - 1] == fields[i - 1].size()) idx[--i] = 0;
      if (i == 0) break;
    }
    return out;
  }
  if (auto e = th_.element_sort(sort)) {
    std::vector<Value> elems = grid_for(*e, {});
    std::vector<Value> out{Value::set(sort, {})};
    if (!elems.empty()) out.push_back(Value::set(sort, {elems[0]}));
    if (elems.size() > 1) out.push_back(Value::set(sort, {elems[0], elems[1]}));
    return out;
  }
  throw SpecError({}, "no value generator for sort " + sort);
}

Value ValueGenerator::random(const std::string& sort) { return random_for(sort, {}); }

Value ValueGenerator::random_for(const std::string& sort, const std::string& key) {
  if (const auto* p = pool(sort, key)) {
    if ((*p)[0].is(Value::Kind::Int)) {
      std::int64_t lo = (*p)[0].as_int();
      std::int64_t hi = lo;
      for (const auto& v : *p) {
        lo = std::min(lo, v.as_int());
        hi = std::max(hi, v.as_int());
      }
      const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
      return Value::integer(lo + static_cast<std::int64_t>(rng_() % span));
    }
    return (*p)[rng_() % p->size()];
  }
  if (sort == "Bool") return Value::boolean(rng_() % 2 == 1);
  if (th_.is_object_sort(sort))
    return Value::object(sort, ObjectId{static_cast<std::int64_t>(1 + rng_() % 5)});
  if (const TupleSort* ts = th_.tuple(sort)) {
    std::vector<Value> items;
    for (const auto& f : ts->fields) {
      const std::string field_key = g_.find(sort + "." + f.name) ? sort + "." + f.name : f.name;
      items.push_back(random_for(f.sort, field_key));
    }
    return Value::tuple(sort, std::move(items));
  }
  if (auto e = th_.element_sort(sort)) {
    std::vector<Value> items;
    const std::size_t n = rng_() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      Value x = random_for(*e, {});
      if (std::find(items.begin(), items.end(), x) == items.end()) items.push_back(x);
    }
    std::sort(items.begin(), items.end());
    return Value::set(sort, std::move(items));
  }
  throw SpecError({}, "no value generator for sort " + sort);
}

bool ObligationReport::ok() const { return failures() == 0; }

std::size_t ObligationReport::failures() const {
  std::size_t n = 0;
  for (const auto& o : obligations) n += o.verdict == "fail" || o.verdict == "error";
  for (const auto& p : partitions) n += p.verdict == "fail";
  return n;
}

namespace {

void env_ops(const Term& t, const FlatTheory& th, std::vector<int>& out) {
  if (t.kind == TermKind::Apply && t.op >= 0 && t.builtin == Builtin::None && th.op(t.op).env &&
      std::find(out.begin(), out.end(), t.op) == out.end())
    out.push_back(t.op);
  for (const auto& a : t.args) env_ops(*a, th, out);
}

bool reads_state(const Term& t, const FlatTheory& th) {
  if (t.kind == TermKind::StateValue) return true;
  if (t.kind == TermKind::Apply && t.op >= 0 && t.builtin == Builtin::None) {
    const Native n = th.op(t.op).native;
    if (n == Native::LinkOwner || n == Native::LinkMembers || n == Native::ValueIn) return true;
  }
  for (const auto& a : t.args)
    if (reads_state(*a, th)) return true;
  return false;
}

struct Var {
  std::string name;
  std::string sort;
  int env_op = -1;
};

// Evaluates one case; returns an empty string when the axiom holds.
std::string check_case(const FlatTheory& th, const Axiom& ax, const std::vector<Var>& vars,
                       const std::vector<Value>& values) {
  Bindings b;
  std::map<std::string, Value> env;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].env_op >= 0)
      env[vars[i].name] = values[i];
    else
      b.emplace_back(vars[i].name, values[i]);
  }
  EvalContext ctx;
  ctx.env = &env;
  Evaluator ev(th, ctx);
  try {
    Value l = ev.eval(ax.lhs, b);
    if (!ax.rhs) {
      if (l.is_stuck()) return "stuck at " + l.str();
      return l.as_bool() ? std::string() : "evaluates to false";
    }
    Value r = ev.eval(ax.rhs, b);
    if (l.is_stuck() || r.is_stuck())
      return "stuck at " + (l.is_stuck() ? l.str() : r.str());
    if (ev.equal(l, r, ax.lhs->sort)) return {};
    return "left side " + l.str() + ", right side " + r.str();
  } catch (const EvalError& e) {
    return e.what();
  }
}

void check_axiom(const FlatTheory& th, const Axiom& ax, const std::string& source,
                 const TestBudget& budget, ObligationReport& report) {
  ObligationResult r;
  r.theory = th.name;
  r.origin = ax.origin;
  r.source = source;
  r.text = ax.text.empty() ? render_term(ax.lhs) + (ax.rhs ? " == " + render_term(ax.rhs) : "")
                           : ax.text;
  r.span = ax.span;
  if (reads_state(*ax.lhs, th) || (ax.rhs && reads_state(*ax.rhs, th))) {
    r.verdict = "deferred";
    r.detail = "reads the object store; enforced during simulation";
    report.obligations.push_back(std::move(r));
    return;
  }

  std::vector<Var> vars;
  for (const auto& v : ax.vars) {
    std::vector<std::string> ids;
    collect_identifiers(*ax.lhs, ids);
    if (ax.rhs) collect_identifiers(*ax.rhs, ids);
    if (std::find(ids.begin(), ids.end(), v.name) != ids.end()) vars.push_back({v.name, v.sort});
  }
  std::vector<int> envs;
  env_ops(*ax.lhs, th, envs);
  if (ax.rhs) env_ops(*ax.rhs, th, envs);
  for (int id : envs) vars.push_back({th.op(id).name, th.op(id).range, id});

  ValueGenerator gen(th, budget.grid, budget.seed);
  std::vector<std::vector<Value>> pools;
  try {
    for (const auto& v : vars) pools.push_back(gen.grid(v.sort));
  } catch (const SpecError& e) {
    r.verdict = "error";
    r.detail = e.what();
    report.obligations.push_back(std::move(r));
    return;
  }

  auto fail_with = [&](const std::vector<Value>& values, std::string why) {
    r.verdict = "fail";
    r.detail = std::move(why);
    for (std::size_t i = 0; i < vars.size(); ++i)
      r.counterexample.emplace_back(vars[i].name, values[i]);
  };

  // Exhaustive grid, thinned by a fixed stride when the product is large.
  std::size_t total = 1;
  for (const auto& p : pools) total = std::min<std::size_t>(total * p.size(), SIZE_MAX / 64);
  const std::size_t stride =
      total > budget.max_grid_cases ? (total + budget.max_grid_cases - 1) / budget.max_grid_cases
                                    : 1;
  std::vector<Value> values(vars.size());
  for (std::size_t n = 0; n < total; n += stride) {
    std::size_t k = n;
    for (std::size_t i = vars.size(); i-- > 0;) {
      values[i] = pools[i][k % pools[i].size()];
      k /= pools[i].size();
    }
    ++r.cases;
    std::string why = check_case(th, ax, vars, values);
    if (!why.empty()) {
      fail_with(values, std::move(why));
      report.obligations.push_back(std::move(r));
      return;
    }
    if (vars.empty()) break;
  }
  for (int n = 0; n < budget.random_count && !vars.empty(); ++n) {
    for (std::size_t i = 0; i < vars.size(); ++i) values[i] = gen.random(vars[i].sort);
    ++r.cases;
    std::string why = check_case(th, ax, vars, values);
    if (!why.empty()) {
      fail_with(values, std::move(why));
      break;
    }
  }
  if (r.verdict.empty()) r.verdict = "pass";
  report.obligations.push_back(std::move(r));
}

std::string key_of(const Axiom& ax, const std::string& source) {
  std::string k = source + "|" + ax.origin + "|" + render_term(ax.lhs) + "|" +
                  render_term(ax.rhs);
  for (const auto& v : ax.vars) k += "|" + v.name + ":" + v.sort;
  return k;
}

void check_partition(const FlatTheory& th, const std::string& sort,
                     const std::vector<int>& observers, const TestBudget& budget,
                     ObligationReport& report) {
  PartitionResult r;
  r.sort = sort;
  for (int o : observers) r.observers.push_back(th.op(o).name);
  ValueGenerator gen(th, budget.grid, budget.seed);
  EvalContext ctx;
  Evaluator ev(th, ctx);

  std::vector<Value> pool;
  try {
    pool = gen.grid(sort);
    for (int i = 0; i < std::min(budget.random_count, 200); ++i) pool.push_back(gen.random(sort));
  } catch (const SpecError& e) {
    r.verdict = "fail";
    r.detail = e.what();
    report.partitions.push_back(std::move(r));
    return;
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::map<std::vector<Value>, std::vector<Value>> buckets;
  for (const auto& v : pool) {
    std::vector<Value> image;
    for (int o : observers) image.push_back(ev.apply(o, {v}));
    buckets[image].push_back(v);
  }
  std::vector<std::pair<Value, Value>> pairs;
  for (const auto& [image, members] : buckets)
    for (std::size_t i = 1; i < members.size() && pairs.size() < 200; ++i)
      pairs.emplace_back(members[0], members[i]);
  r.pairs = static_cast<long>(pairs.size());

  for (const OpInfo& op : th.ops) {
    if (std::find(observers.begin(), observers.end(), op.id) != observers.end()) continue;
    for (std::size_t k = 0; k < op.domain.size(); ++k) {
      if (op.domain[k] != sort) continue;
      std::vector<Value> rest;
      bool supported = true;
      for (const auto& d : op.domain) {
        if (!gen.supports(d)) {
          supported = false;
          break;
        }
        rest.push_back(gen.grid(d)[0]);
      }
      if (!supported) continue;
      for (const auto& [a, b] : pairs) {
        std::vector<Value> xa = rest;
        std::vector<Value> xb = rest;
        xa[k] = a;
        xb[k] = b;
        Value fa;
        Value fb;
        try {
          fa = ev.apply(op.id, xa);
          fb = ev.apply(op.id, xb);
        } catch (const EvalError&) {
          continue;
        }
        if (fa.is_stuck() || fb.is_stuck()) continue;
        ++r.checks;
        if (!ev.equal(fa, fb, op.range)) {
          r.verdict = "fail";
          r.detail = op.name + " distinguishes " + a.str() + " and " + b.str() + ": " +
                     fa.str() + " vs " + fb.str();
          report.partitions.push_back(std::move(r));
          return;
        }
      }
    }
  }
  r.verdict = pairs.empty() ? "vacuous" : "pass";
  if (pairs.empty())
    r.detail = "no two distinct sampled values share observer images";
  report.partitions.push_back(std::move(r));
}

}  // namespace

void check_obligations(const FlatTheory& theory, const TestBudget& budget,
                       ObligationReport& report, std::set<std::string>* seen) {
  auto fresh = [&](const std::string& key) { return !seen || seen->insert(key).second; };
  for (const Axiom& ax : theory.obligations)
    if (fresh(key_of(ax, "implies"))) check_axiom(theory, ax, "implies", budget, report);
  for (const Axiom& ax : theory.axioms)
    if (fresh(key_of(ax, "axiom"))) check_axiom(theory, ax, "axiom", budget, report);
  for (const auto& [sort, observers] : theory.partitions)
    if (fresh("partition|" + sort)) check_partition(theory, sort, observers, budget, report);
  for (const SortClause& g : theory.generator_clauses)
    if (fresh("generated|" + g.sort)) report.generated.push_back({g.sort, g.ops});
}

}  // namespace tierspec
