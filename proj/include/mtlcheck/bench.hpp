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

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlcheck/engine/run.hpp"
#include "mtlcheck/generator.hpp"
#include "mtlcheck/parser.hpp"

namespace mtlcheck {

enum class BenchTemplate { Eventually, Globally };

struct BenchConfig {
  BenchTemplate tmpl = BenchTemplate::Eventually;
  std::uint64_t n = 100000;
  std::uint32_t m = 20;
  std::uint64_t seed = 1;
  std::vector<Timestamp> N_list;
  std::vector<std::optional<Timestamp>> K_list;  // nullopt: no decomposition
  unsigned workers = 1;
};

struct BenchRow {
  std::string formula;
  Timestamp N = 0;
  std::optional<Timestamp> K;
  std::uint64_t trace_n = 0;
  double wall_ms = 0;
  std::size_t peak_win_records = 0;
  std::size_t peak_win_bytes_est = 0;
  // Not part of the CSV.
  int height = 0;
  int iterations = 0;
  bool verdict = false;
};

inline std::string bench_formula(BenchTemplate t, Timestamp N) {
  return (t == BenchTemplate::Eventually ? "F[0," : "G[0,") + std::to_string(N) +
         (t == BenchTemplate::Eventually ? "] p" : "] q");
}

/// Worst-case trace for the template: p in every element for F, q in none
/// for G.
inline std::string bench_trace(const BenchConfig& cfg) {
  GeneratorConfig g;
  g.n = cfg.n;
  g.m = cfg.m;
  g.seed = cfg.seed;
  g.force_p = cfg.tmpl == BenchTemplate::Eventually;
  g.suppress_q = cfg.tmpl == BenchTemplate::Globally;
  std::ostringstream os;
  generate_trace(g, os);
  return os.str();
}

inline BenchRow bench_cell(const std::string& trace, const BenchConfig& cfg, Timestamp N,
                           std::optional<Timestamp> K) {
  BenchRow row;
  row.formula = bench_formula(cfg.tmpl, N);
  row.N = N;
  row.K = K;
  row.trace_n = cfg.n;
  engine::EngineConfig ec;
  ec.K = K;
  ec.workers = cfg.workers;
  auto start = std::chrono::steady_clock::now();
  auto res = engine::run(trace, parse_formula(row.formula), ec);
  row.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.peak_win_records = res.stats.peak_win();
  row.peak_win_bytes_est = row.peak_win_records * engine::kRecordBytes;
  row.height = res.plan.height;
  row.iterations = res.stats.iterations;
  row.verdict = res.verdict;
  return row;
}

inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.N_list.empty() || cfg.K_list.empty()) throw std::invalid_argument("empty N or K list");
  const std::string trace = bench_trace(cfg);
  std::vector<BenchRow> rows;
  for (Timestamp N : cfg.N_list)
    for (const auto& K : cfg.K_list) rows.push_back(bench_cell(trace, cfg, N, K));
  return rows;
}

inline void write_bench_header(std::ostream& os) {
  os << "formula,N,K,trace_n,wall_ms,peak_win_records,peak_win_bytes_est\n";
}

inline void write_bench_row(std::ostream& os, const BenchRow& r) {
  std::ostringstream ms;
  ms.setf(std::ios::fixed);
  ms.precision(3);
  ms << r.wall_ms;
  os << '"' << r.formula << '"' << ',' << r.N << ',' << (r.K ? std::to_string(*r.K) : "none")
     << ',' << r.trace_n << ',' << ms.str() << ',' << r.peak_win_records << ','
     << r.peak_win_bytes_est << '\n';
}

}  // namespace mtlcheck
