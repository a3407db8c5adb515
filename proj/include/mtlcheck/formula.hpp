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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "mtlcheck/interval.hpp"

namespace mtlcheck {

enum class Op : std::uint8_t {
  Atom,
  Const,       // true / false
  Act,         // position-existence predicate
  Not,
  And,
  Or,
  Until,
  Eventually,
  Globally,
  ExactStep,   // F_{=K}, introduced by decomposition
};

inline bool is_leaf(Op op) { return op == Op::Atom || op == Op::Const || op == Op::Act; }
inline bool is_boolean(Op op) { return op == Op::Not || op == Op::And || op == Op::Or; }
inline bool is_temporal(Op op) {
  return op == Op::Until || op == Op::Eventually || op == Op::Globally || op == Op::ExactStep;
}

class Formula;

namespace detail {
struct Node;
}

/// Immutable MTL formula. Copies share structure; equality is structural.
class Formula {
 public:
  Formula() = default;

  Op op() const;
  const std::string& name() const;     // Atom
  bool value() const;                  // Const
  const Interval& interval() const;    // Until / Eventually / Globally / ExactStep
  Timestamp step() const;              // ExactStep
  bool lazy_marker() const;            // ExactStep
  const Formula& child() const;        // unary nodes
  const Formula& left() const;         // binary nodes
  const Formula& right() const;        // binary nodes
  int arity() const;

  std::size_t hash() const;
  const detail::Node* get() const { return node_.get(); }
  explicit operator bool() const { return static_cast<bool>(node_); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;

  friend Formula make_node(detail::Node&&);
};

namespace detail {
struct Node {
  Op op = Op::Atom;
  std::string name;
  bool value = false;
  Interval interval;
  Timestamp step = 0;
  bool lazy = false;
  Formula lhs, rhs;
  std::size_t hash = 0;
};

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::size_t interval_hash(const Interval& i) {
  std::size_t h = std::hash<Timestamp>{}(i.lower());
  h = mix(h, i.upper() ? std::hash<Timestamp>{}(*i.upper()) : 0x51ed27);
  h = mix(h, std::size_t(i.lower_closed()) * 2 + std::size_t(i.upper_closed()));
  return h;
}
}  // namespace detail

inline Formula make_node(detail::Node&& n) {
  std::size_t h = std::size_t(n.op) * 0x100000001b3ULL;
  switch (n.op) {
    case Op::Atom: h = detail::mix(h, std::hash<std::string>{}(n.name)); break;
    case Op::Const: h = detail::mix(h, n.value); break;
    case Op::ExactStep: h = detail::mix(h, std::hash<Timestamp>{}(n.step)); [[fallthrough]];
    case Op::Until:
    case Op::Eventually:
    case Op::Globally: h = detail::mix(h, detail::interval_hash(n.interval)); break;
    default: break;
  }
  if (n.lhs) h = detail::mix(h, n.lhs.hash());
  if (n.rhs) h = detail::mix(h, n.rhs.hash());
  n.hash = h;
  return Formula(std::make_shared<const detail::Node>(std::move(n)));
}

inline Op Formula::op() const { return node_->op; }
inline const std::string& Formula::name() const { return node_->name; }
inline bool Formula::value() const { return node_->value; }
inline const Interval& Formula::interval() const { return node_->interval; }
inline Timestamp Formula::step() const { return node_->step; }
inline bool Formula::lazy_marker() const { return node_->lazy; }
inline const Formula& Formula::child() const { return node_->lhs; }
inline const Formula& Formula::left() const { return node_->lhs; }
inline const Formula& Formula::right() const { return node_->rhs; }
inline std::size_t Formula::hash() const { return node_ ? node_->hash : 0; }
inline int Formula::arity() const {
  if (is_leaf(op())) return 0;
  return node_->rhs ? 2 : 1;
}

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op) return false;
  switch (x.op) {
    case Op::Atom: return x.name == y.name;
    case Op::Const: return x.value == y.value;
    case Op::Act: return true;
    case Op::ExactStep:
      if (x.step != y.step || x.lazy != y.lazy) return false;
      break;
    case Op::Until:
    case Op::Eventually:
    case Op::Globally:
      if (!(x.interval == y.interval)) return false;
      break;
    default: break;
  }
  return x.lhs == y.lhs && x.rhs == y.rhs;
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Constructors.

inline Formula atom(std::string name) {
  detail::Node n;
  n.op = Op::Atom;
  n.name = std::move(name);
  return make_node(std::move(n));
}
inline Formula constant(bool v) {
  detail::Node n;
  n.op = Op::Const;
  n.value = v;
  return make_node(std::move(n));
}
inline Formula act() {
  detail::Node n;
  n.op = Op::Act;
  return make_node(std::move(n));
}
inline Formula negation(Formula f) {
  detail::Node n;
  n.op = Op::Not;
  n.lhs = std::move(f);
  return make_node(std::move(n));
}
inline Formula conjunction(Formula l, Formula r) {
  detail::Node n;
  n.op = Op::And;
  n.lhs = std::move(l);
  n.rhs = std::move(r);
  return make_node(std::move(n));
}
inline Formula disjunction(Formula l, Formula r) {
  detail::Node n;
  n.op = Op::Or;
  n.lhs = std::move(l);
  n.rhs = std::move(r);
  return make_node(std::move(n));
}
inline Formula until(Interval i, Formula l, Formula r) {
  detail::Node n;
  n.op = Op::Until;
  n.interval = i;
  n.lhs = std::move(l);
  n.rhs = std::move(r);
  return make_node(std::move(n));
}
inline Formula eventually(Interval i, Formula f) {
  detail::Node n;
  n.op = Op::Eventually;
  n.interval = i;
  n.lhs = std::move(f);
  return make_node(std::move(n));
}
inline Formula globally(Interval i, Formula f) {
  detail::Node n;
  n.op = Op::Globally;
  n.interval = i;
  n.lhs = std::move(f);
  return make_node(std::move(n));
}
/// F_{=k} f. The lazy marker flags steps the pipeline evaluates at virtual
/// instants.
inline Formula exact_step(Timestamp k, Formula f, bool lazy = true) {
  detail::Node n;
  n.op = Op::ExactStep;
  n.step = k;
  n.interval = Interval::exactly(k);
  n.lazy = lazy;
  n.lhs = std::move(f);
  return make_node(std::move(n));
}

/// Interval of a temporal node ([k,k] for ExactStep).
inline const Interval& temporal_interval(const Formula& f) { return f.interval(); }

// Printing. The output is accepted by parse_formula (with internal tokens
// enabled when it contains Act).

namespace detail {
inline void print(const Formula& f, std::string& out);

inline void print_operand(const Formula& f, std::string& out, bool allow_unary) {
  bool bare = is_leaf(f.op()) || (allow_unary && f.arity() == 1);
  if (!bare) out += '(';
  print(f, out);
  if (!bare) out += ')';
}

inline void print(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Atom: out += f.name(); return;
    case Op::Const: out += f.value() ? "true" : "false"; return;
    case Op::Act: out += "@act"; return;
    case Op::Not:
      out += '!';
      print_operand(f.child(), out, false);
      return;
    case Op::Eventually:
    case Op::Globally:
    case Op::ExactStep: {
      out += f.op() == Op::Globally ? 'G' : 'F';
      if (f.op() != Op::ExactStep && f.interval() == Interval()) {
        // default interval omitted
      } else {
        out += f.interval().to_string();
      }
      out += ' ';
      print_operand(f.child(), out, false);
      return;
    }
    case Op::And:
    case Op::Or:
    case Op::Until: {
      print_operand(f.left(), out, true);
      if (f.op() == Op::And) {
        out += " & ";
      } else if (f.op() == Op::Or) {
        out += " | ";
      } else {
        out += " U";
        if (!(f.interval() == Interval())) out += f.interval().to_string();
        out += ' ';
      }
      print_operand(f.right(), out, true);
      return;
    }
  }
}
}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, out);
  return out;
}

}  // namespace mtlcheck
