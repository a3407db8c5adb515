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

// Brute-force reference semantics.
//
// Point mode evaluates at positions 0..|w|-1. Lazy mode evaluates at integer
// instants: atoms hold only where a position exists, an Until witness may be
// any instant, and the Until guard only constrains instants that carry a
// position. Lazy rows are materialized over [0, horizon]; past the horizon a
// bounded formula's value no longer changes, so later queries read the last
// cell.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtlcheck/formula.hpp"
#include "mtlcheck/formula_table.hpp"
#include "mtlcheck/trace.hpp"

namespace mtlcheck {

enum class Semantics { Point, Lazy };
enum class Anchor { FirstPosition, TimeZero };

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest upper endpoint among bounded intervals; ExactStep counts as its
/// step. Returns 0 when there are none.
inline Timestamp max_bounded_upper(const Formula& f) {
  Timestamp m = 0;
  if (f.op() == Op::ExactStep) {
    m = f.step();
  } else if (is_temporal(f.op()) && f.interval().bounded()) {
    m = *f.interval().upper();
  }
  if (!is_leaf(f.op())) {
    m = std::max(m, max_bounded_upper(f.left()));
    if (f.arity() == 2) m = std::max(m, max_bounded_upper(f.right()));
  }
  return m;
}

inline bool is_bounded(const Formula& f) {
  if (is_temporal(f.op()) && f.op() != Op::ExactStep && !f.interval().bounded()) return false;
  if (is_leaf(f.op())) return true;
  if (!is_bounded(f.left())) return false;
  return f.arity() < 2 || is_bounded(f.right());
}

/// Truth of every subformula at every evaluation point of one mode.
class EvalTable {
 public:
  EvalTable(const TimedWord& w, const Formula& root, Semantics mode)
      : word_(&w), table_(root), mode_(mode) {
    if (w.empty()) throw EvalError("evaluation needs a non-empty word");
    if (mode_ == Semantics::Lazy) {
      if (!is_bounded(root)) throw EvalError("lazy semantics requires bounded intervals");
      Timestamp sum = 0;
      for (NodeId id = 0; id < table_.node_count(); ++id) {
        const Formula& f = table_.formula(id);
        if (f.op() == Op::ExactStep) sum += f.step();
        else if (is_temporal(f.op())) sum += *f.interval().upper();
      }
      horizon_ = w.last_ts() + sum;
      position_.assign(static_cast<std::size_t>(horizon_) + 1, 0);
      for (const auto& e : w.elements()) position_[static_cast<std::size_t>(e.ts)] = 1;
    }
    rows_.resize(table_.node_count());
  }

  Semantics mode() const { return mode_; }
  const FormulaTable& table() const { return table_; }
  Timestamp horizon() const { return horizon_; }

  /// Evaluation points: position timestamps in point mode, instants 0..horizon
  /// in lazy mode.
  std::vector<Timestamp> points() const {
    std::vector<Timestamp> out;
    if (mode_ == Semantics::Point) {
      for (const auto& e : word_->elements()) out.push_back(e.ts);
    } else {
      for (Timestamp t = 0; t <= horizon_; ++t) out.push_back(t);
    }
    return out;
  }

  /// Point mode: value at position i.
  bool at_position(const Formula& f, std::size_t i) {
    if (mode_ != Semantics::Point) throw EvalError("at_position needs point semantics");
    if (i >= word_->size()) throw EvalError("position out of range");
    return row(id_of(f))[i] != 0;
  }

  /// Lazy mode: value at instant t.
  bool at_instant(const Formula& f, Timestamp t) {
    if (mode_ != Semantics::Lazy) throw EvalError("at_instant needs lazy semantics");
    if (t < 0) throw EvalError("negative instant");
    return row(id_of(f))[clamp(t)] != 0;
  }

  bool at(NodeId id, std::size_t index) { return row(id)[index] != 0; }

  /// Tab-separated export: header row of points, one row per subformula.
  std::string to_tsv() {
    std::ostringstream os;
    os << "subformula";
    for (Timestamp p : points()) os << '\t' << p;
    os << '\n';
    for (NodeId id = 0; id < table_.node_count(); ++id) {
      os << to_string(table_.formula(id));
      for (char v : row(id)) os << '\t' << (v ? "⊤" : "⊥");
      os << '\n';
    }
    return os.str();
  }

 private:
  NodeId id_of(const Formula& f) const {
    auto id = table_.find(f);
    if (!id) throw EvalError("formula is not a subformula of the table root");
    return *id;
  }

  std::size_t clamp(Timestamp t) const {
    return static_cast<std::size_t>(std::min(t, horizon_));
  }

  const std::vector<char>& row(NodeId id) {
    if (rows_[id].empty()) {
      // Children have smaller ids; fill them first to keep recursion shallow.
      for (NodeId k : table_.sub_d(id)) row(k);
      rows_[id] = mode_ == Semantics::Point ? compute_point(id) : compute_lazy(id);
    }
    return rows_[id];
  }

  std::vector<char> compute_point(NodeId id) {
    const Formula& f = table_.formula(id);
    const TimedWord& w = *word_;
    const std::size_t n = w.size();
    std::vector<char> out(n, 0);
    auto child = [&](const Formula& c) -> const std::vector<char>& { return rows_[id_of(c)]; };
    switch (f.op()) {
      case Op::Atom:
        for (std::size_t i = 0; i < n; ++i) out[i] = w[i].has(f.name());
        break;
      case Op::Const:
        std::fill(out.begin(), out.end(), f.value());
        break;
      case Op::Act:
        std::fill(out.begin(), out.end(), 1);
        break;
      case Op::Not: {
        const auto& c = child(f.child());
        for (std::size_t i = 0; i < n; ++i) out[i] = !c[i];
        break;
      }
      case Op::And:
      case Op::Or: {
        const auto& l = child(f.left());
        const auto& r = child(f.right());
        for (std::size_t i = 0; i < n; ++i)
          out[i] = f.op() == Op::And ? (l[i] && r[i]) : (l[i] || r[i]);
        break;
      }
      case Op::ExactStep: {
        const auto& c = child(f.child());
        for (std::size_t i = 0; i < n; ++i) {
          std::size_t j = w.position_at(w.ts(i) + f.step());
          out[i] = j < n && c[j];
        }
        break;
      }
      case Op::Eventually:
      case Op::Globally:
      case Op::Until: {
        const Interval& I = f.interval();
        const std::vector<char>* l = f.op() == Op::Until ? &child(f.left()) : nullptr;
        const auto& r = child(f.op() == Op::Until ? f.right() : f.child());
        const bool neg = f.op() == Op::Globally;  // G = !F!
        auto hi = I.max_member();
        for (std::size_t i = 0; i < n; ++i) {
          bool found = false;
          for (std::size_t j = i; j < n; ++j) {
            Timestamp d = w.ts(j) - w.ts(i);
            if (hi && d > *hi) break;
            if (I.contains(d) && (neg ? !r[j] : r[j])) {
              found = true;
              break;
            }
            if (j > i && l && !(*l)[j]) break;
          }
          out[i] = neg ? !found : found;
        }
        break;
      }
    }
    return out;
  }

  std::vector<char> compute_lazy(NodeId id) {
    const Formula& f = table_.formula(id);
    const std::size_t H = static_cast<std::size_t>(horizon_);
    std::vector<char> out(H + 1, 0);
    auto child = [&](const Formula& c) -> const std::vector<char>& { return rows_[id_of(c)]; };
    auto at = [&](const std::vector<char>& row, Timestamp t) -> bool { return row[clamp(t)]; };
    switch (f.op()) {
      case Op::Atom: {
        const TimedWord& w = *word_;
        for (const auto& e : w.elements())
          out[static_cast<std::size_t>(e.ts)] = e.has(f.name());
        break;
      }
      case Op::Const:
        std::fill(out.begin(), out.end(), f.value());
        break;
      case Op::Act:
        out = position_;
        break;
      case Op::Not: {
        const auto& c = child(f.child());
        for (std::size_t t = 0; t <= H; ++t) out[t] = !c[t];
        break;
      }
      case Op::And:
      case Op::Or: {
        const auto& l = child(f.left());
        const auto& r = child(f.right());
        for (std::size_t t = 0; t <= H; ++t)
          out[t] = f.op() == Op::And ? (l[t] && r[t]) : (l[t] || r[t]);
        break;
      }
      case Op::ExactStep: {
        const auto& c = child(f.child());
        for (std::size_t t = 0; t <= H; ++t) out[t] = at(c, static_cast<Timestamp>(t) + f.step());
        break;
      }
      case Op::Eventually:
      case Op::Globally:
      case Op::Until: {
        const Interval& I = f.interval();
        const std::vector<char>* l = f.op() == Op::Until ? &child(f.left()) : nullptr;
        const auto& r = child(f.op() == Op::Until ? f.right() : f.child());
        const bool neg = f.op() == Op::Globally;
        const Timestamp lo = I.min_member();
        const Timestamp hi = *I.max_member();
        for (std::size_t t0 = 0; t0 <= H; ++t0) {
          const Timestamp t = static_cast<Timestamp>(t0);
          bool found = false;
          for (Timestamp tp = t; tp <= t + hi; ++tp) {
            if (tp >= t + lo && (neg ? !at(r, tp) : at(r, tp))) {
              found = true;
              break;
            }
            // Guard over positions strictly between t and the next witness.
            if (tp > t && l && tp <= horizon_ && position_[static_cast<std::size_t>(tp)] &&
                !(*l)[static_cast<std::size_t>(tp)])
              break;
          }
          out[t0] = neg ? !found : found;
        }
        break;
      }
    }
    return out;
  }

  const TimedWord* word_;
  FormulaTable table_;
  Semantics mode_;
  Timestamp horizon_ = 0;
  std::vector<char> position_;
  std::vector<std::vector<char>> rows_;
};

inline EvalTable eval_table(const TimedWord& w, const Formula& f, Semantics mode) {
  return EvalTable(w, f, mode);
}

inline bool eval_point(const TimedWord& w, std::size_t i, const Formula& f) {
  if (i >= w.size()) throw EvalError("position out of range");
  EvalTable t(w, f, Semantics::Point);
  return t.at_position(f, i);
}

inline bool eval_lazy(const TimedWord& w, Timestamp t, const Formula& f) {
  EvalTable table(w, f, Semantics::Lazy);
  return table.at_instant(f, t);
}

inline bool verdict(const TimedWord& w, const Formula& f, Semantics mode, Anchor anchor) {
  if (w.empty()) throw EvalError("empty trace");
  if (mode == Semantics::Point) {
    if (anchor != Anchor::FirstPosition)
      throw EvalError("point semantics is anchored at the first position");
    return eval_point(w, 0, f);
  }
  return eval_lazy(w, anchor == Anchor::TimeZero ? 0 : w.ts(0), f);
}

}  // namespace mtlcheck
