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

// Direct recursive readings of the two semantics. Exponential, for small
// inputs only; they share no code with the library evaluators.

#pragma once

#include <algorithm>
#include <stdexcept>

#include "mtlcheck/formula.hpp"
#include "mtlcheck/trace.hpp"

namespace mtlcheck::testing {

inline bool in_interval(Timestamp d, const Interval& i) {
  if (d < i.lower() || (d == i.lower() && !i.lower_closed())) return false;
  if (!i.upper()) return true;
  return d < *i.upper() || (d == *i.upper() && i.upper_closed());
}

/// Point-based satisfaction at position i. `strict` = false gives the mutant
/// that also demands the left operand at the start position.
inline bool brute_point(const TimedWord& w, std::size_t i, const Formula& f, bool strict = true) {
  auto rec = [&](std::size_t k, const Formula& g) { return brute_point(w, k, g, strict); };
  switch (f.op()) {
    case Op::Atom:
      return w[i].has(f.name());
    case Op::Const:
      return f.value();
    case Op::Act:
      return true;
    case Op::Not:
      return !rec(i, f.child());
    case Op::And:
      return rec(i, f.left()) && rec(i, f.right());
    case Op::Or:
      return rec(i, f.left()) || rec(i, f.right());
    case Op::Eventually:
    case Op::ExactStep:
      for (std::size_t j = i; j < w.size(); ++j)
        if (in_interval(w.ts(j) - w.ts(i), f.interval()) && rec(j, f.child())) return true;
      return false;
    case Op::Globally:
      for (std::size_t j = i; j < w.size(); ++j)
        if (in_interval(w.ts(j) - w.ts(i), f.interval()) && !rec(j, f.child())) return false;
      return true;
    case Op::Until:
      for (std::size_t j = i; j < w.size(); ++j) {
        if (in_interval(w.ts(j) - w.ts(i), f.interval()) && rec(j, f.right())) {
          bool guard = true;
          for (std::size_t k = strict ? i + 1 : i; k < j && guard; ++k) guard = rec(k, f.left());
          if (guard) return true;
        }
      }
      return false;
  }
  throw std::logic_error("unhandled operator");
}

/// Lazy satisfaction at integer instant t. Bounded intervals only.
inline bool brute_lazy(const TimedWord& w, Timestamp t, const Formula& f) {
  std::size_t pos = w.position_at(t);
  bool at_pos = pos < w.size();
  auto hi = [&] {
    if (!f.interval().upper()) throw std::invalid_argument("unbounded interval");
    return *f.interval().upper();
  };
  switch (f.op()) {
    case Op::Atom:
      return at_pos && w[pos].has(f.name());
    case Op::Const:
      return f.value();
    case Op::Act:
      return at_pos;
    case Op::Not:
      return !brute_lazy(w, t, f.child());
    case Op::And:
      return brute_lazy(w, t, f.left()) && brute_lazy(w, t, f.right());
    case Op::Or:
      return brute_lazy(w, t, f.left()) || brute_lazy(w, t, f.right());
    case Op::ExactStep:
      return brute_lazy(w, t + f.step(), f.child());
    case Op::Eventually:
      for (Timestamp d = 0; d <= hi(); ++d)
        if (in_interval(d, f.interval()) && brute_lazy(w, t + d, f.child())) return true;
      return false;
    case Op::Globally:
      for (Timestamp d = 0; d <= hi(); ++d)
        if (in_interval(d, f.interval()) && !brute_lazy(w, t + d, f.child())) return false;
      return true;
    case Op::Until:
      for (Timestamp d = 0; d <= hi(); ++d) {
        if (!in_interval(d, f.interval()) || !brute_lazy(w, t + d, f.right())) continue;
        bool guard = true;
        for (Timestamp m = t + 1; m < t + d && guard; ++m)
          if (w.has_position_at(m)) guard = brute_lazy(w, m, f.left());
        if (guard) return true;
      }
      return false;
  }
  throw std::logic_error("unhandled operator");
}

}  // namespace mtlcheck::testing
