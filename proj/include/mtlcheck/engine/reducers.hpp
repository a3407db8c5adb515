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

// Reducers consume one key's records after check_dup, newest timestamp
// first, and emit (key, key, value, ts). Records sharing a timestamp form a
// group; a group holding only a marker is a virtual instant.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlcheck/engine/plan.hpp"
#include "mtlcheck/engine/record.hpp"

namespace mtlcheck::engine {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReduceStats {
  std::size_t peak_win = 0;
  std::size_t records_in = 0;
  std::size_t records_out = 0;
};

namespace detail {

struct Group {
  Timestamp ts = 0;
  bool virtual_instant = false;
  // Values of up to three children (left, right, position stream).
  std::optional<bool> a, b, pos;
};

/// Splits sorted records into groups and looks up the operands of interest.
template <typename Fn>
void for_each_group(const std::vector<KVRecord>& in, NodeId a, std::optional<NodeId> b,
                    std::optional<NodeId> pos, Fn&& fn) {
  for (std::size_t i = 0; i < in.size();) {
    Group g;
    g.ts = in[i].ts;
    std::size_t j = i;
    bool real = false;
    for (; j < in.size() && in[j].ts == g.ts; ++j) {
      const KVRecord& r = in[j];
      if (r.is_marker()) continue;
      real = true;
      if (r.child == a) g.a = r.truth;
      if (b && r.child == *b) g.b = r.truth;
      if (pos && r.child == *pos) g.pos = r.truth;
    }
    g.virtual_instant = !real;
    fn(g);
    i = j;
  }
}

[[noreturn]] inline void missing(const JobPlan& plan, NodeId key, Timestamp ts) {
  throw EngineError("reducer " + to_string(plan.table.formula(key)) + ": missing operand at " +
                    std::to_string(ts));
}

/// Value of a leaf where it has no record: only away from positions.
inline std::optional<bool> leaf_default(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Act:
      return false;
    case Op::Const:
      return f.value();
    default:
      return std::nullopt;
  }
}

}  // namespace detail

/// F_I and G_I. The window holds witness timestamps (true child records for F,
/// false ones for G), ascending from front to back.
inline ReduceStats reduce_window(const JobPlan& plan, NodeId key, const std::vector<KVRecord>& in,
                                 std::vector<KVRecord>& out) {
  const Formula& f = plan.table.formula(key);
  const bool dual = f.op() == Op::Globally;
  const NodeId c = *plan.table.find(f.child());
  const Timestamp lo = f.interval().min_member();
  const std::optional<Timestamp> hi = f.interval().max_member();
  ReduceStats st;
  st.records_in = in.size();
  std::size_t before = out.size();
  std::deque<Timestamp> win;
  detail::for_each_group(in, c, std::nullopt, std::nullopt, [&](const detail::Group& g) {
    if (!g.a && !plan.lazy) detail::missing(plan, key, g.ts);
    if (g.a && *g.a != dual) {
      if (hi) {
        win.push_front(g.ts);
      } else if (win.empty()) {
        win.push_back(g.ts);  // unbounded: the latest witness suffices
      }
    }
    if (hi)
      while (!win.empty() && win.back() > g.ts + *hi) win.pop_back();
    st.peak_win = std::max(st.peak_win, win.size());
    bool found = !win.empty() && win.back() >= g.ts + lo;
    out.push_back(KVRecord{key, key, g.ts, dual ? !found : found});
  });
  st.records_out = out.size() - before;
  return st;
}

/// F_=K. Keeps every child record within [ts, ts+K].
inline ReduceStats reduce_exact_step(const JobPlan& plan, NodeId key,
                                     const std::vector<KVRecord>& in, std::vector<KVRecord>& out) {
  const Formula& f = plan.table.formula(key);
  const NodeId c = *plan.table.find(f.child());
  const Timestamp k = f.step();
  ReduceStats st;
  st.records_in = in.size();
  std::size_t before = out.size();
  std::deque<std::pair<Timestamp, bool>> win;
  detail::for_each_group(in, c, std::nullopt, std::nullopt, [&](const detail::Group& g) {
    if (g.a) win.emplace_front(g.ts, *g.a);
    while (!win.empty() && win.back().first > g.ts + k) win.pop_back();
    st.peak_win = std::max(st.peak_win, win.size());
    bool hit = !win.empty() && win.back().first == g.ts + k;
    if (hit) {
      out.push_back(KVRecord{key, key, g.ts, win.back().second});
    } else if (!plan.lazy) {
      out.push_back(KVRecord{key, key, g.ts, false});  // no position at ts+K
    } else if (g.virtual_instant) {
      detail::missing(plan, key, g.ts);
    }
  });
  st.records_out = out.size() - before;
  return st;
}

/// Not / And / Or, joined by timestamp.
inline ReduceStats reduce_boolean(const JobPlan& plan, NodeId key, const std::vector<KVRecord>& in,
                                  std::vector<KVRecord>& out) {
  const Formula& f = plan.table.formula(key);
  const Formula& lf = f.left();
  const NodeId l = *plan.table.find(lf);
  std::optional<NodeId> r;
  if (f.arity() == 2) r = *plan.table.find(f.right());
  const std::optional<bool> l_default = detail::leaf_default(lf);
  const std::optional<bool> r_default = r ? detail::leaf_default(f.right()) : std::nullopt;
  ReduceStats st;
  st.records_in = in.size();
  std::size_t before = out.size();
  detail::for_each_group(in, l, r, std::nullopt, [&](const detail::Group& g) {
    std::optional<bool> a = g.a, b = g.b;
    if (plan.lazy) {
      if (!a) a = l_default;
      if (r && !b) b = r_default;
    }
    if (!a || (r && !b)) {
      if (!plan.lazy || g.virtual_instant) detail::missing(plan, key, g.ts);
      return;  // instant not needed by consumers
    }
    bool v = false;
    switch (f.op()) {
      case Op::Not: v = !*a; break;
      case Op::And: v = *a && *b; break;
      case Op::Or: v = *a || *b; break;
      default: throw EngineError("reduce_boolean on non-boolean node");
    }
    out.push_back(KVRecord{key, key, g.ts, v});
  });
  st.records_out = out.size() - before;
  return st;
}

/// l U_I r. The window holds right-operand witnesses; next_bad is the earliest
/// position after the current instant where l fails.
inline ReduceStats reduce_until(const JobPlan& plan, NodeId key, const std::vector<KVRecord>& in,
                                std::vector<KVRecord>& out) {
  const Formula& f = plan.table.formula(key);
  const NodeId l = *plan.table.find(f.left());
  const NodeId r = *plan.table.find(f.right());
  const Timestamp lo = f.interval().min_member();
  const std::optional<Timestamp> hi = f.interval().max_member();
  std::optional<NodeId> pos_id = plan.lazy ? plan.act_id : std::nullopt;
  ReduceStats st;
  st.records_in = in.size();
  std::size_t before = out.size();
  std::deque<Timestamp> win;
  std::optional<Timestamp> next_bad;
  detail::for_each_group(in, l, r, pos_id, [&](const detail::Group& g) {
    bool is_pos = plan.lazy ? g.pos.value_or(false) : true;
    std::optional<bool> lv = g.a, rv = g.b;
    if (is_pos && (!lv || !rv)) {
      // Act as an operand has a record exactly at positions.
      if (!lv && f.left().op() == Op::Act) lv = true;
      if (!rv && f.right().op() == Op::Act) rv = true;
      if (!lv || !rv) detail::missing(plan, key, g.ts);
    }
    if (!rv) rv = detail::leaf_default(f.right()).value_or(false);
    if (*rv) win.push_front(g.ts);
    Timestamp limit = next_bad ? *next_bad : std::numeric_limits<Timestamp>::max();
    if (hi) {
      limit = std::min(limit, g.ts + *hi);
      while (!win.empty() && win.back() > g.ts + *hi) win.pop_back();
    }
    // Smallest witness at or after ts+lo; later ones are never preferred.
    auto it = std::lower_bound(win.begin(), win.end(), g.ts + lo);
    bool val = it != win.end() && *it <= limit;
    if (it != win.end()) win.erase(it + 1, win.end());
    st.peak_win = std::max(st.peak_win, win.size());
    out.push_back(KVRecord{key, key, g.ts, val});
    if (is_pos && lv && !*lv) {
      next_bad = g.ts;
      while (!win.empty() && win.back() > g.ts) win.pop_back();
    }
  });
  st.records_out = out.size() - before;
  return st;
}

inline ReduceStats reduce(const JobPlan& plan, NodeId key, const std::vector<KVRecord>& in,
                          std::vector<KVRecord>& out) {
  switch (plan.table.formula(key).op()) {
    case Op::Eventually:
    case Op::Globally:
      return reduce_window(plan, key, in, out);
    case Op::ExactStep:
      return reduce_exact_step(plan, key, in, out);
    case Op::Until:
      return reduce_until(plan, key, in, out);
    case Op::Not:
    case Op::And:
    case Op::Or:
      return reduce_boolean(plan, key, in, out);
    default:
      throw EngineError("leaf nodes have no reducer");
  }
}

}  // namespace mtlcheck::engine
