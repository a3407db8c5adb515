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

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlcheck/trace.hpp"

namespace mtlcheck {

/// Synthetic worst-case traces. Element i carries timestamp i+1 and between 1
/// and m events drawn from the pool p, q, p3, ..., pm.
struct GeneratorConfig {
  std::uint64_t n = 1000;
  std::uint32_t m = 1;
  std::uint64_t seed = 0;
  bool force_p = false;
  bool suppress_q = false;
};

struct GeneratorSummary {
  std::uint64_t elements = 0;
  std::uint64_t bytes = 0;
};

/// Name of the i-th event (1-based).
inline std::string event_name(std::uint32_t i) {
  if (i == 1) return "p";
  if (i == 2) return "q";
  return "p" + std::to_string(i);
}

template <typename Sink>
void generate_elements(const GeneratorConfig& cfg, Sink&& sink) {
  if (cfg.n < 1) throw std::invalid_argument("generator: n must be >= 1");
  if (cfg.m < 1) throw std::invalid_argument("generator: m must be >= 1");

  std::mt19937_64 rng(cfg.seed);
  // Events other than p that may be picked.
  std::vector<std::uint32_t> rest;
  for (std::uint32_t i = 2; i <= cfg.m; ++i)
    if (!(cfg.suppress_q && i == 2)) rest.push_back(i);
  std::vector<std::uint32_t> all = rest;
  all.insert(all.begin(), 1);

  std::vector<std::uint32_t> scratch;
  std::vector<std::string> atoms;
  for (std::uint64_t i = 0; i < cfg.n; ++i) {
    atoms.clear();
    const std::vector<std::uint32_t>& pool = cfg.force_p ? rest : all;
    std::uint32_t max_count = static_cast<std::uint32_t>(pool.size()) + (cfg.force_p ? 1 : 0);
    std::uniform_int_distribution<std::uint32_t> count_dist(1, std::max<std::uint32_t>(1, max_count));
    std::uint32_t count = count_dist(rng);
    std::uint32_t picks = count;
    if (cfg.force_p) {
      atoms.push_back("p");
      picks = count - 1;
    }
    // Partial Fisher-Yates over the pool.
    scratch = pool;
    for (std::uint32_t k = 0; k < picks && k < scratch.size(); ++k) {
      std::uniform_int_distribution<std::size_t> d(k, scratch.size() - 1);
      std::swap(scratch[k], scratch[d(rng)]);
      atoms.push_back(event_name(scratch[k]));
    }
    sink(static_cast<Timestamp>(i + 1), atoms);
  }
}

inline GeneratorSummary generate_trace(const GeneratorConfig& cfg, std::ostream& out) {
  GeneratorSummary s;
  std::string line;
  generate_elements(cfg, [&](Timestamp ts, const std::vector<std::string>& atoms) {
    line = std::to_string(ts);
    for (const auto& a : atoms) {
      line += ' ';
      line += a;
    }
    line += '\n';
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    s.bytes += line.size();
    ++s.elements;
  });
  if (!out) throw std::runtime_error("generator: write failed");
  return s;
}

inline TimedWord generate_word(const GeneratorConfig& cfg) {
  std::vector<Element> elements;
  elements.reserve(cfg.n);
  generate_elements(cfg, [&](Timestamp ts, const std::vector<std::string>& atoms) {
    elements.push_back(Element{atoms, ts});
  });
  return TimedWord(std::move(elements));
}

}  // namespace mtlcheck
