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
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mtlcheck/engine/record.hpp"
#include "mtlcheck/formula.hpp"
#include "mtlcheck/formula_table.hpp"

namespace mtlcheck::engine {

/// Static job description derived from the checked formula.
///
/// In lazy mode every node has a set of offsets: it must be valued at
/// position + o for each offset o. The root needs {0}; an F_=K node shifts its
/// child by K; boolean nodes pass their offsets down; F, G and U children only
/// matter at positions. A node valued away from positions receives marker
/// records at those instants, generated from the position stream (the Act
/// leaf) in the iteration that reduces the node.
struct JobPlan {
  FormulaTable table;
  bool lazy = false;
  std::optional<Timestamp> K;
  std::optional<NodeId> act_id;  // position stream, present in lazy mode when needed
  int height = 0;
  std::vector<std::vector<NodeId>> levels;  // levels[h] = nodes of height h
  std::vector<std::vector<NodeId>> feeds;   // consumers of each node's records
  std::vector<std::vector<Timestamp>> offsets;
  std::vector<std::vector<Timestamp>> marker_offsets;
  std::vector<int> last_use;  // last level that reads a node's records

  bool is_root(NodeId id) const { return id == table.root(); }
  std::size_t reducer_count(int level, unsigned workers) const {
    return std::min<std::size_t>(levels[level].size(), std::max(1u, workers));
  }
};

inline JobPlan make_plan(const Formula& checked, bool lazy, std::optional<Timestamp> K) {
  JobPlan p;
  p.table = FormulaTable(checked);
  p.lazy = lazy;
  p.K = K;
  const std::size_t n0 = p.table.node_count();

  std::vector<std::set<Timestamp>> offs(n0);
  bool need_positions = false;
  if (lazy) {
    offs[p.table.root()].insert(0);
    for (NodeId id = static_cast<NodeId>(n0); id-- > 0;) {
      const Formula& f = p.table.formula(id);
      if (f.op() == Op::Until || f.op() == Op::Act) need_positions = true;
      for (NodeId c : p.table.sub_d(id)) {
        if (f.op() == Op::ExactStep) {
          for (Timestamp o : offs[id]) offs[c].insert(o + f.step());
        } else if (is_boolean(f.op())) {
          offs[c].insert(offs[id].begin(), offs[id].end());
        } else {
          offs[c].insert(0);
        }
      }
    }
    for (NodeId id = 0; id < n0; ++id) {
      const Formula& f = p.table.formula(id);
      if (is_leaf(f.op())) continue;
      bool away = f.op() == Op::ExactStep ? !offs[id].empty()
                                          : std::any_of(offs[id].begin(), offs[id].end(),
                                                        [](Timestamp o) { return o != 0; });
      if (away) need_positions = true;
    }
    if (need_positions) p.act_id = p.table.intern(act());
  }

  const std::size_t n = p.table.node_count();
  offs.resize(n);
  p.offsets.resize(n);
  p.marker_offsets.resize(n);
  p.feeds.resize(n);
  p.last_use.assign(n, 0);
  p.height = p.table.height();
  p.levels.assign(static_cast<std::size_t>(p.height) + 1, {});

  for (NodeId id = 0; id < n; ++id) {
    const Formula& f = p.table.formula(id);
    p.offsets[id].assign(offs[id].begin(), offs[id].end());
    if (lazy && !is_leaf(f.op())) {
      for (Timestamp o : offs[id])
        if (o != 0 || f.op() == Op::ExactStep) p.marker_offsets[id].push_back(o);
    }
    p.feeds[id] = p.table.sup(id);
    int h = p.table.height(id);
    if (h <= p.height) p.levels[h].push_back(id);
  }
  if (p.act_id) {
    NodeId a = *p.act_id;
    for (NodeId id = 0; id < n; ++id) {
      if (p.table.formula(id).op() == Op::Until &&
          std::find(p.feeds[a].begin(), p.feeds[a].end(), id) == p.feeds[a].end())
        p.feeds[a].push_back(id);
    }
    std::sort(p.feeds[a].begin(), p.feeds[a].end());
    for (NodeId id = 0; id < n; ++id)
      if (!p.marker_offsets[id].empty()) p.last_use[a] = std::max(p.last_use[a], p.table.height(id));
  }
  for (NodeId id = 0; id < n; ++id)
    for (NodeId s : p.feeds[id]) p.last_use[id] = std::max(p.last_use[id], p.table.height(s));
  return p;
}

/// Mapper for one stored record at the given level. Stateless: the output
/// depends only on the record and the plan.
template <typename Out>
void map_step(const JobPlan& plan, const KVRecord& r, int level, Out&& out) {
  for (NodeId psi : plan.feeds[r.key])
    if (plan.table.height(psi) == level) out(KVRecord{psi, r.key, r.ts, r.truth});
  if (plan.act_id && r.key == *plan.act_id) {
    for (NodeId psi : plan.levels[level])
      for (Timestamp o : plan.marker_offsets[psi]) out(KVRecord{psi, kActMarker, r.ts + o, false});
  }
}

inline std::vector<KVRecord> map_step(const JobPlan& plan, const KVRecord& r, int level) {
  std::vector<KVRecord> out;
  map_step(plan, r, level, [&](const KVRecord& x) { out.push_back(x); });
  return out;
}

}  // namespace mtlcheck::engine
