// Copyright 2026 The mtlcheck Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "mtlcheck/bench.hpp"
#include "mtlcheck/parser.hpp"
#include "support/suites.hpp"

using namespace mtlcheck;
using namespace mtlcheck::testing;

namespace {

const char* kExampleOne = "1 p\n2 p\n4\n6 p\n8 p\n9\n10\n";

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome golden_example_one() {
  engine::EngineConfig cfg;
  cfg.keep_outputs = true;
  auto r = engine::run(kExampleOne, parse_formula("F[3,7] p"), cfg);
  std::vector<std::pair<Timestamp, bool>> got, want{{10, false}, {9, false}, {8, false}, {6, false},
                                                    {4, true},   {2, true},  {1, true}};
  std::ostringstream os;
  for (const auto& x : r.outputs.at(r.plan.table.root())) {
    got.emplace_back(x.ts, x.truth);
    os << "(" << (x.truth ? "T" : "F") << "," << x.ts << ")";
  }
  return {got == want && r.verdict, os.str() + (r.verdict ? " verdict true" : " verdict false")};
}

Outcome golden_decomposition() {
  TimedWord w = parse_trace_text(kExampleOne);
  Formula phi = parse_formula("F[3,7] p");
  Formula phi_prime = parse_formula("F[3,4] p | F=4 (F[0,3] p)");
  Formula lk = lazy_check_formula(phi, 4);
  EvalTable point(w, phi, Semantics::Point), prime(w, phi_prime, Semantics::Point);
  EvalTable lazy(w, lk, Semantics::Lazy);
  bool differs_at_1 = point.at_position(phi, 0) && !prime.at_position(phi_prime, 0);
  int matches = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    matches += point.at_position(phi, i) == lazy.at_instant(lk, w.ts(i));
  std::ostringstream os;
  os << "point(phi')@1=" << prime.at_position(phi_prime, 0) << " point(phi)@1="
     << point.at_position(phi, 0) << ", lazy " << to_string(lk) << " matches " << matches << "/"
     << w.size();
  return {differs_at_1 && matches == static_cast<int>(w.size()), os.str()};
}

Outcome exact_step_example() {
  TimedWord w = parse_trace_text("1 q\n7 p\n");
  Formula a = parse_formula("F=6 p"), b = parse_formula("F=3 F=3 p");
  bool pa = eval_point(w, 0, a), pb = eval_point(w, 0, b);
  bool la = eval_lazy(w, 1, a), lb = eval_lazy(w, 1, b);
  std::ostringstream os;
  os << "point " << pa << "," << pb << " lazy " << la << "," << lb;
  return {pa && !pb && la && lb, os.str()};
}

std::string summary(const char* name, const SuiteResult& r) {
  std::ostringstream os;
  os << name << " " << r.cases << " cases/" << r.checks << " checks/" << r.failures << " failed";
  if (!r.ok()) os << " [first: " << r.first << "]";
  return os.str();
}

Outcome translation() {
  SuiteResult r = translation_suite(4000, 100000);
  return {r.ok() && r.checks >= 10000, summary("triples", r)};
}

Outcome decomposition() {
  SuiteResult t = decomposition_suite(5000, 200000);
  SuiteResult l2 = nested_eventually_suite(2000, 300000);
  SuiteResult c1 = exact_chain_suite(2000, 400000);
  SuiteResult l3 = merge_suite(2000, 500000);
  bool ok = t.ok() && l2.ok() && c1.ok() && l3.ok() && t.cases >= 5000 && l2.cases >= 2000 &&
            c1.cases >= 2000 && l3.cases >= 2000;
  return {ok, summary("decompose", t) + "; " + summary("nested-F", l2) + "; " +
                  summary("chain", c1) + "; " + summary("merge", l3)};
}

Outcome engine_oracle() {
  SuiteResult r = engine_suite(2000, 600000, {1, 2, 4});
  return {r.ok() && r.cases >= 2000, summary("engine", r)};
}

Outcome memory_shape() {
  bool ok = true;
  std::ostringstream os;
  for (BenchTemplate t : {BenchTemplate::Eventually, BenchTemplate::Globally}) {
    BenchConfig cfg;
    cfg.tmpl = t;
    cfg.n = 100000;
    cfg.N_list = {10000, 50000};
    cfg.K_list = {std::nullopt, 1000, 5000};
    for (const BenchRow& row : run_bench(cfg)) {
      std::size_t bound = row.K ? static_cast<std::size_t>(*row.K + 1) : 0;
      bool good = row.K ? row.peak_win_records <= bound
                        : row.peak_win_records == static_cast<std::size_t>(row.N + 1);
      ok = ok && good;
      os << row.formula << "/K=" << (row.K ? std::to_string(*row.K) : "none") << ":"
         << row.peak_win_records << (good ? "" : "!") << " ";
    }
  }
  return {ok, os.str()};
}

Outcome tradeoff_shape() {
  BenchConfig cfg;
  cfg.n = 100000;
  cfg.N_list = {50000};
  cfg.K_list = {25000, 10000, 5000, 2000};
  auto rows = run_bench(cfg);
  bool ok = true;
  std::ostringstream os;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "K=" << *rows[i].K << " peak=" << rows[i].peak_win_records << " h=" << rows[i].height
       << " it=" << rows[i].iterations << " ms=" << static_cast<long>(rows[i].wall_ms) << "; ";
    if (i == 0) continue;
    ok = ok && rows[i].peak_win_records < rows[i - 1].peak_win_records;
    ok = ok && rows[i].height > rows[i - 1].height;
    ok = ok && rows[i].iterations > rows[i - 1].iterations;
  }
  ok = ok && rows.back().wall_ms > rows.front().wall_ms;
  return {ok, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"golden example one", 1, golden_example_one},
      {"golden decomposition", 1, golden_decomposition},
      {"point vs lazy exact steps", 1, exact_step_example},
      {"point equals lazy after translation", 300, translation},
      {"decomposition equivalence and bound", 300, decomposition},
      {"engine equals oracle across workers", 600, engine_oracle},
      {"memory scalability shape", 600, memory_shape},
      {"time/memory tradeoff shape", 900, tradeoff_shape},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass && s < c.limit_s;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.name << " (" << s << " s"
              << (s < c.limit_s ? "" : ", over limit") << "): " << o.detail << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/"
            << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
