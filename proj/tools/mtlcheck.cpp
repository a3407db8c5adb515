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

// mtlcheck: offline MTL trace checker.
//
// Exit codes: 0 formula satisfied, 1 violated, 2 error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtlcheck/mtlcheck.hpp"

namespace {

using namespace mtlcheck;

constexpr int kExitError = 2;

std::optional<Timestamp> parse_k(const std::string& s) {
  if (s == "off" || s == "none") return std::nullopt;
  std::size_t used = 0;
  long long v = std::stoll(s, &used);
  if (used != s.size() || v <= 0) throw std::invalid_argument("K must be a positive integer or 'off'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError("cannot open trace file '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << body;
}

/// Emitted pipeline records in the EvalTable layout. Instants a node was not
/// valued at are left empty.
std::string pipeline_tsv(const engine::RunResult& r) {
  std::set<Timestamp> instants;
  for (const auto& [id, recs] : r.outputs)
    for (const auto& x : recs) instants.insert(x.ts);
  std::ostringstream os;
  os << "subformula";
  for (Timestamp t : instants) os << '\t' << t;
  os << '\n';
  for (const auto& [id, recs] : r.outputs) {
    std::map<Timestamp, bool> row;
    for (const auto& x : recs) row[x.ts] = x.truth;
    os << to_string(r.plan.table.formula(id));
    for (Timestamp t : instants) {
      os << '\t';
      if (auto it = row.find(t); it != row.end()) os << (it->second ? "⊤" : "⊥");
    }
    os << '\n';
  }
  return os.str();
}

struct CheckOptions {
  std::string trace_path;
  std::string formula;
  std::string semantics = "point";
  std::string k = "off";
  std::string engine = "pipeline";
  std::string anchor = "first";
  unsigned workers = 1;
  std::size_t block_bytes = std::size_t(1) << 20;
  std::size_t memory_budget = std::size_t(1) << 26;
  std::string table_path;
  std::string stats_path;
};

int cmd_check(const CheckOptions& o) {
  Formula phi = parse_formula(o.formula);
  std::optional<Timestamp> K = parse_k(o.k);
  if (o.semantics != "point" && o.semantics != "lazy")
    throw std::invalid_argument("--semantics must be point or lazy");
  Semantics sem = o.semantics == "lazy" ? Semantics::Lazy : Semantics::Point;
  Anchor anchor = o.anchor == "zero" ? Anchor::TimeZero : Anchor::FirstPosition;
  if (o.anchor != "first" && o.anchor != "zero")
    throw std::invalid_argument("--anchor must be first or zero");

  bool verdict = false;
  if (o.engine == "pipeline") {
    engine::EngineConfig cfg;
    cfg.K = K;
    cfg.workers = o.workers;
    cfg.block_bytes = o.block_bytes;
    cfg.memory_budget_records = o.memory_budget;
    cfg.semantics = sem;
    cfg.anchor = anchor;
    cfg.keep_outputs = !o.table_path.empty();
    std::string text = read_file(o.trace_path);
    engine::RunResult r = engine::run(text, phi, cfg);
    verdict = r.verdict;
    if (!o.table_path.empty()) write_file(o.table_path, pipeline_tsv(r));
    if (!o.stats_path.empty()) write_file(o.stats_path, r.stats.to_json().dump(2) + "\n");
  } else if (o.engine == "oracle") {
    if (!o.stats_path.empty()) throw std::invalid_argument("--stats needs --engine pipeline");
    TimedWord w = load_trace(o.trace_path);
    Formula checked = phi;
    Semantics mode = sem;
    Timestamp at = anchor == Anchor::TimeZero ? 0 : w.ts(0);
    if (sem == Semantics::Point) {
      if (anchor != Anchor::FirstPosition)
        throw std::invalid_argument("point semantics is anchored at the first position");
      if (K) {
        checked = lazy_check_formula(phi, *K);
        mode = Semantics::Lazy;
      }
    } else if (K) {
      checked = decompose(phi, *K);
    }
    EvalTable table(w, checked, mode);
    verdict = mode == Semantics::Point ? table.at_position(checked, 0) : table.at_instant(checked, at);
    if (!o.table_path.empty()) write_file(o.table_path, table.to_tsv());
  } else {
    throw std::invalid_argument("--engine must be oracle or pipeline");
  }
  std::cout << "VERDICT " << (verdict ? "true" : "false") << '\n';
  return verdict ? 0 : 1;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline MTL trace checker"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Check a trace against a formula");
  c->add_option("trace", check.trace_path, "Trace file")->required();
  c->add_option("formula", check.formula, "MTL formula")->required();
  c->add_option("--semantics", check.semantics, "point or lazy")->capture_default_str();
  c->add_option("--k", check.k, "Decomposition parameter K, or off")->capture_default_str();
  c->add_option("--engine", check.engine, "oracle or pipeline")->capture_default_str();
  c->add_option("--workers", check.workers, "Worker threads")->capture_default_str();
  c->add_option("--anchor", check.anchor, "first (first position) or zero (time 0)")
      ->capture_default_str();
  c->add_option("--block-bytes", check.block_bytes, "Reader block size")->capture_default_str();
  c->add_option("--memory-budget", check.memory_budget,
                "Records kept in memory between iterations before spilling")
      ->capture_default_str();
  c->add_option("--table", check.table_path, "Write the evaluation table as TSV");
  c->add_option("--stats", check.stats_path, "Write run statistics as JSON");

  std::string tr_formula;
  auto* t = app.add_subcommand("translate", "Print l2p(formula)");
  t->add_option("formula", tr_formula)->required();

  std::string dec_formula, dec_k;
  bool dec_l2p = false;
  auto* d = app.add_subcommand("decompose", "Print the K-decomposition of a formula");
  d->add_option("formula", dec_formula)->required();
  d->add_option("--k", dec_k, "Decomposition parameter")->required();
  d->add_flag("--l2p", dec_l2p, "Translate first, as the pipeline does");

  GeneratorConfig gen;
  std::string gen_out;
  auto* g = app.add_subcommand("generate", "Write a synthetic worst-case trace");
  g->add_option("--n", gen.n, "Element count")->capture_default_str();
  g->add_option("--m", gen.m, "Maximum events per element")->capture_default_str();
  g->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  g->add_flag("--force-p", gen.force_p, "Put p in every element");
  g->add_flag("--suppress-q", gen.suppress_q, "Never emit q");
  g->add_option("--out", gen_out, "Output file (default stdout)");

  BenchConfig bench;
  std::string b_template = "F", b_Ns = "10000,50000", b_Ks = "off,1000,5000", b_out;
  auto* b = app.add_subcommand("bench", "Time/memory sweep over N and K");
  b->add_option("--formula-template", b_template, "F (F[0,N] p) or G (G[0,N] q)")
      ->capture_default_str();
  b->add_option("--n", bench.n, "Trace length")->capture_default_str();
  b->add_option("--m", bench.m, "Events per element")->capture_default_str();
  b->add_option("--N-list", b_Ns, "Comma-separated interval bounds")->capture_default_str();
  b->add_option("--K-list", b_Ks, "Comma-separated K values; 'off' disables")
      ->capture_default_str();
  b->add_option("--workers", bench.workers, "Worker threads")->capture_default_str();
  b->add_option("--seed", bench.seed, "RNG seed")->capture_default_str();
  b->add_option("--out", b_out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*c) return cmd_check(check);
    if (*t) {
      std::cout << to_string(l2p(parse_formula(tr_formula))) << '\n';
      return 0;
    }
    if (*d) {
      auto K = parse_k(dec_k);
      if (!K) throw std::invalid_argument("decompose needs a numeric --k");
      Formula phi = parse_formula(dec_formula);
      std::cout << to_string(dec_l2p ? lazy_check_formula(phi, *K) : decompose(phi, *K)) << '\n';
      return 0;
    }
    if (*g) {
      if (gen_out.empty()) {
        generate_trace(gen, std::cout);
      } else {
        std::ofstream out(gen_out, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + gen_out + "'");
        generate_trace(gen, out);
      }
      return 0;
    }
    if (*b) {
      if (b_template == "F") {
        bench.tmpl = BenchTemplate::Eventually;
      } else if (b_template == "G") {
        bench.tmpl = BenchTemplate::Globally;
      } else {
        throw std::invalid_argument("--formula-template must be F or G");
      }
      for (const auto& s : split_list(b_Ns)) bench.N_list.push_back(std::stoll(s));
      for (const auto& s : split_list(b_Ks)) bench.K_list.push_back(parse_k(s));
      auto rows = run_bench(bench);
      std::ofstream file;
      std::ostream* os = &std::cout;
      if (!b_out.empty()) {
        file.open(b_out, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot write '" + b_out + "'");
        os = &file;
      }
      write_bench_header(*os);
      for (const auto& r : rows) write_bench_row(*os, r);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "mtlcheck: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
