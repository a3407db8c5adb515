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
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mtlcheck/engine/plan.hpp"
#include "mtlcheck/engine/reader.hpp"
#include "mtlcheck/engine/record.hpp"
#include "mtlcheck/engine/reducers.hpp"
#include "mtlcheck/engine/spill.hpp"
#include "mtlcheck/engine/thread_pool.hpp"
#include "mtlcheck/evaluators.hpp"
#include "mtlcheck/transforms.hpp"

namespace mtlcheck::engine {

struct EngineConfig {
  /// Decomposition parameter. When set the pipeline checks the lazy form
  /// decompose(l2p(phi), K); otherwise phi itself under point semantics.
  std::optional<Timestamp> K;
  unsigned workers = 1;
  std::size_t block_bytes = std::size_t(1) << 20;
  /// Stored records kept in memory between iterations before spilling.
  std::size_t memory_budget_records = std::size_t(1) << 26;
  std::string spill_dir;  // empty: MTLCHECK_TMPDIR or the system temp dir
  bool keep_outputs = false;
  Semantics semantics = Semantics::Point;
  Anchor anchor = Anchor::FirstPosition;
};

struct ReducerStats {
  std::string reducer_key;
  NodeId id = 0;
  int level = 0;
  std::size_t peak_win = 0;
  std::size_t records_in = 0;
  std::size_t records_out = 0;
  double iteration_ms = 0;
};

struct RunStats {
  bool verdict = false;
  int iterations = 0;
  std::size_t elements = 0;
  std::size_t spilled_stores = 0;
  std::vector<double> iteration_ms;  // index 0 is the read
  std::vector<ReducerStats> reducers;

  std::size_t peak_win() const {
    std::size_t m = 0;
    for (const auto& r : reducers) m = std::max(m, r.peak_win);
    return m;
  }
  double total_ms() const {
    double s = 0;
    for (double v : iteration_ms) s += v;
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["verdict"] = verdict;
    j["iterations"] = iterations;
    j["elements"] = elements;
    j["peak_win"] = peak_win();
    j["iteration_ms"] = iteration_ms;
    j["reducers"] = nlohmann::json::array();
    for (const auto& r : reducers) {
      j["reducers"].push_back({{"reducer_key", r.reducer_key},
                               {"level", r.level},
                               {"peak_win", r.peak_win},
                               {"records_in", r.records_in},
                               {"records_out", r.records_out},
                               {"iteration_ms", r.iteration_ms}});
    }
    return j;
  }
};

struct RunResult {
  bool verdict = false;
  Formula checked;
  JobPlan plan;
  RunStats stats;
  Timestamp first_ts = 0;
  /// Emitted records per node, when EngineConfig::keep_outputs is set.
  std::map<NodeId, std::vector<KVRecord>> outputs;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Store {
  std::vector<KVRecord> records;
  std::optional<std::filesystem::path> spilled;
  std::size_t count = 0;
  bool live = false;
};

}  // namespace detail

inline std::size_t partition_of(NodeId key, std::size_t reducers) {
  return static_cast<std::size_t>(detail::splitmix64(key) % reducers);
}

inline RunResult run(std::string_view trace_text, const Formula& phi, const EngineConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  if (cfg.semantics != Semantics::Point || cfg.anchor != Anchor::FirstPosition)
    throw EngineError(
        "the pipeline checks point-semantics properties at the first position; "
        "lazy evaluation is selected by giving K");
  if (cfg.K && *cfg.K <= 0) throw EngineError("K must be positive");
  const unsigned workers = std::max(1u, cfg.workers);

  RunResult res;
  res.checked = cfg.K ? lazy_check_formula(phi, *cfg.K) : phi;
  res.plan = make_plan(res.checked, cfg.K.has_value(), cfg.K);
  const JobPlan& plan = res.plan;
  const std::size_t n = plan.table.node_count();
  std::vector<detail::Store> stores(n);
  SpillDir spill(cfg.spill_dir);
  res.stats.iterations = plan.height;

  // Iteration 1: block-parallel read.
  auto t0 = Clock::now();
  {
    ReaderLeaves leaves(plan);
    auto blocks = split_blocks(trace_text, cfg.block_bytes);
    std::vector<BlockOutput> outs(blocks.size());
    parallel_for(blocks.size(), workers,
                 [&](std::size_t i) { outs[i] = input_read(blocks[i], leaves); });
    std::optional<Timestamp> prev;
    for (std::size_t b = 0; b < outs.size(); ++b) {
      if (!outs[b].first_ts) continue;
      if (prev && *outs[b].first_ts <= *prev)
        throw TraceError("block at byte " + std::to_string(blocks[b].offset) +
                         ": non-monotonic timestamp " + std::to_string(*outs[b].first_ts));
      if (!prev) res.first_ts = *outs[b].first_ts;
      prev = outs[b].last_ts;
      res.stats.elements += outs[b].elements;
    }
    if (res.stats.elements == 0) throw TraceError("empty trace");
    for (std::size_t i = 0; i < leaves.ids.size(); ++i) {
      auto& st = stores[leaves.ids[i]];
      st.live = true;
      for (auto& o : outs)
        st.records.insert(st.records.end(), o.by_leaf[i].begin(), o.by_leaf[i].end());
      st.count = st.records.size();
    }
  }
  res.stats.iteration_ms.push_back(
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count());

  auto load = [&](NodeId id) -> std::vector<KVRecord> {
    auto& st = stores[id];
    if (st.spilled) return load_records(*st.spilled);
    return st.records;
  };
  auto release = [&](int level) {
    for (NodeId id = 0; id < n; ++id) {
      auto& st = stores[id];
      if (!st.live || cfg.keep_outputs || id == plan.table.root()) continue;
      if (plan.last_use[id] != 0 && plan.last_use[id] <= level) {
        st.records.clear();
        st.records.shrink_to_fit();
        st.live = false;
        st.count = 0;
      }
    }
  };
  auto enforce_budget = [&] {
    std::size_t in_mem = 0;
    for (auto& st : stores)
      if (st.live && !st.spilled) in_mem += st.records.size();
    while (in_mem > cfg.memory_budget_records) {
      NodeId big = 0;
      std::size_t best = 0;
      for (NodeId id = 0; id < n; ++id) {
        auto& st = stores[id];
        if (st.live && !st.spilled && st.records.size() > best) {
          best = st.records.size();
          big = id;
        }
      }
      if (best == 0) break;
      auto path = spill.file("node-" + std::to_string(big) + ".rec");
      spill_records(path, stores[big].records);
      stores[big].spilled = path;
      stores[big].records.clear();
      stores[big].records.shrink_to_fit();
      in_mem -= best;
      ++res.stats.spilled_stores;
    }
  };
  enforce_budget();

  for (int level = 2; level <= plan.height; ++level) {
    auto lt = Clock::now();
    const auto& keys = plan.levels[level];
    const std::size_t R = plan.reducer_count(level, workers);

    // Inputs of this level: stores feeding a key of this height, plus the
    // position stream when markers are due.
    bool markers = false;
    for (NodeId k : keys) markers = markers || !plan.marker_offsets[k].empty();
    std::vector<NodeId> inputs;
    for (NodeId id = 0; id < n; ++id) {
      if (!stores[id].live) continue;
      bool feeds = std::any_of(plan.feeds[id].begin(), plan.feeds[id].end(),
                               [&](NodeId s) { return plan.table.height(s) == level; });
      if (feeds || (markers && plan.act_id && id == *plan.act_id)) inputs.push_back(id);
    }
    std::map<NodeId, std::vector<KVRecord>> loaded;
    struct Chunk {
      const std::vector<KVRecord>* recs;
      std::size_t begin, end;
    };
    constexpr std::size_t kChunk = 8192;
    std::vector<Chunk> chunks;
    for (NodeId id : inputs) {
      const std::vector<KVRecord>* recs = &stores[id].records;
      if (stores[id].spilled) recs = &(loaded[id] = load(id));
      for (std::size_t b = 0; b < recs->size(); b += kChunk)
        chunks.push_back(Chunk{recs, b, std::min(recs->size(), b + kChunk)});
    }

    // Map.
    std::vector<std::vector<std::vector<KVRecord>>> mapped(chunks.size());
    parallel_for(chunks.size(), workers, [&](std::size_t c) {
      auto& parts = mapped[c];
      parts.resize(R);
      const Chunk& ch = chunks[c];
      for (std::size_t i = ch.begin; i < ch.end; ++i)
        map_step(plan, (*ch.recs)[i], level,
                 [&](const KVRecord& r) { parts[partition_of(r.key, R)].push_back(r); });
    });
    loaded.clear();

    // Shuffle and reduce.
    std::vector<std::map<NodeId, std::vector<KVRecord>>> reduced(R);
    std::vector<std::vector<ReducerStats>> part_stats(R);
    parallel_for(R, workers, [&](std::size_t p) {
      std::vector<KVRecord> all;
      std::size_t total = 0;
      for (auto& m : mapped) total += m[p].size();
      all.reserve(total);
      for (auto& m : mapped) {
        all.insert(all.end(), m[p].begin(), m[p].end());
        std::vector<KVRecord>().swap(m[p]);
      }
      std::sort(all.begin(), all.end(), shuffle_less);
      for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j].key == all[i].key) ++j;
        NodeId key = all[i].key;
        std::vector<KVRecord> group(all.begin() + i, all.begin() + j);
        std::vector<KVRecord> deduped = check_dup(group);
        std::vector<KVRecord>& out = reduced[p][key];
        ReduceStats rs = reduce(plan, key, deduped, out);
        ReducerStats s;
        s.reducer_key = to_string(plan.table.formula(key));
        s.id = key;
        s.level = level;
        s.peak_win = rs.peak_win;
        s.records_in = group.size();
        s.records_out = rs.records_out;
        part_stats[p].push_back(std::move(s));
        i = j;
      }
    });
    mapped.clear();

    for (auto& part : reduced)
      for (auto& [key, recs] : part) {
        auto& st = stores[key];
        st.records = std::move(recs);
        st.count = st.records.size();
        st.live = true;
      }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - lt).count();
    res.stats.iteration_ms.push_back(ms);
    std::vector<ReducerStats> level_stats;
    for (auto& ps : part_stats)
      for (auto& s : ps) level_stats.push_back(std::move(s));
    std::sort(level_stats.begin(), level_stats.end(),
              [](const ReducerStats& a, const ReducerStats& b) { return a.id < b.id; });
    for (auto& s : level_stats) {
      s.iteration_ms = ms;
      res.stats.reducers.push_back(std::move(s));
    }
    release(level);
    enforce_budget();
  }

  const NodeId root = plan.table.root();
  std::vector<KVRecord> root_recs = load(root);
  auto it = std::find_if(root_recs.begin(), root_recs.end(),
                         [&](const KVRecord& r) { return r.ts == res.first_ts; });
  if (it == root_recs.end()) throw EngineError("no root value at the first position");
  res.verdict = it->truth;
  res.stats.verdict = res.verdict;
  if (cfg.keep_outputs)
    for (NodeId id = 0; id < n; ++id)
      if (stores[id].live) res.outputs[id] = load(id);
  return res;
}

inline RunResult run(const TimedWord& w, const Formula& phi, const EngineConfig& cfg) {
  return run(format_trace(w), phi, cfg);
}

}  // namespace mtlcheck::engine
