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

#include <stdexcept>

#include "mtlcheck/formula.hpp"
#include "mtlcheck/interval.hpp"

namespace mtlcheck {

class TransformError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point-to-lazy translation. The right operand of every Until (and of the
/// F, G and F_=K forms derived from it) is restricted to real positions.
inline Formula l2p(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Const:
    case Op::Act:
      return f;
    case Op::Not:
      return negation(l2p(f.child()));
    case Op::And:
      return conjunction(l2p(f.left()), l2p(f.right()));
    case Op::Or:
      return disjunction(l2p(f.left()), l2p(f.right()));
    case Op::Until:
      return until(f.interval(), l2p(f.left()), conjunction(act(), l2p(f.right())));
    case Op::Eventually:
      return eventually(f.interval(), conjunction(act(), l2p(f.child())));
    case Op::Globally:
      // G = !F!, so l2p gives !F(act & !x) = G(!act | x).
      return globally(f.interval(), disjunction(negation(act()), l2p(f.child())));
    case Op::ExactStep:
      return exact_step(f.step(), conjunction(act(), l2p(f.child())), f.lazy_marker());
  }
  return f;
}

/// Removes Act conjuncts that are implied in lazy semantics: atoms only hold at
/// positions, so act & p is p.
inline Formula simplify_act(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Const:
    case Op::Act:
      return f;
    case Op::Not:
      return negation(simplify_act(f.child()));
    case Op::Or:
      return disjunction(simplify_act(f.left()), simplify_act(f.right()));
    case Op::And: {
      Formula l = simplify_act(f.left());
      Formula r = simplify_act(f.right());
      if (l.op() == Op::Act) std::swap(l, r);
      if (r.op() == Op::Act) {
        switch (l.op()) {
          case Op::Atom:
          case Op::Act:
            return l;
          case Op::Const:
            return l.value() ? r : l;
          case Op::And:
            if (l.left().op() == Op::Act || l.right().op() == Op::Act) return l;
            break;
          default:
            break;
        }
        return conjunction(r, l);
      }
      return conjunction(l, r);
    }
    case Op::Until:
      return until(f.interval(), simplify_act(f.left()), simplify_act(f.right()));
    case Op::Eventually:
      return eventually(f.interval(), simplify_act(f.child()));
    case Op::Globally:
      return globally(f.interval(), simplify_act(f.child()));
    case Op::ExactStep:
      return exact_step(f.step(), simplify_act(f.child()), f.lazy_marker());
  }
  return f;
}

/// Negation that cancels double negation and pushes through !a | b.
inline Formula negate(const Formula& f) {
  if (f.op() == Op::Not) return f.child();
  if (f.op() == Op::Const) return constant(!f.value());
  if (f.op() == Op::Or && f.left().op() == Op::Not)
    return conjunction(f.left().child(), negate(f.right()));
  return negation(f);
}

/// F_[0,h> split into K-wide segments. Intermediate segments are closed so
/// neighbours overlap; the last segment keeps the original upper bracket.
inline Formula d_f(const Formula& psi, Timestamp K, Timestamp h, bool upper_closed = true) {
  if (K <= 0) throw TransformError("K must be positive");
  if (h <= 0) throw TransformError("d_f needs a positive remainder");
  if (h <= K) return eventually(Interval::make(0, h, true, upper_closed), psi);
  return disjunction(eventually(Interval::closed(0, K), psi),
                     exact_step(K, d_f(psi, K, h - K, upper_closed)));
}

namespace detail {

inline Formula exact_chain(Timestamp K, Timestamp count, Formula inner) {
  for (Timestamp i = 0; i < count; ++i) inner = exact_step(K, std::move(inner));
  return inner;
}

inline Formula decompose_eventually(const Interval& I, const Formula& child, Timestamp K) {
  const Timestamp a = I.lower();
  const Timestamp b = *I.upper();
  if (b <= K) return eventually(I, child);
  const Timestamp q = a / K;
  if (b <= (q + 1) * K) {
    Interval rest = Interval::make(a % K, b - q * K, I.lower_closed(), I.upper_closed());
    return exact_chain(K, q, eventually(rest, child));
  }
  Formula head = eventually(Interval::make(a % K, K, I.lower_closed(), true), child);
  Formula tail = exact_step(K, d_f(child, K, b - (q + 1) * K, I.upper_closed()));
  return exact_chain(K, q, disjunction(head, tail));
}

}  // namespace detail

/// Rewrites a bounded formula so every interval upper bound is at most K.
/// Long F windows become chains of lazy F_=K steps; G goes through !F!.
/// Bounded Until over the integer-closed interval [a,b] with b > K uses
///
///   guard = !F[1,K-1](act & !l)            (omitted when K = 1)
///   step  = !act | l
///   l U[a,b] r = l U[a,K] r | (guard & F=K (step & l U[1,b-K] r))       a < K
///   l U[a,b] r = guard & F=K ((r if a = K) | (step & l U[max(a-K,1),b-K] r))   a >= K
///
/// applied recursively until every bound fits.
inline Formula decompose(const Formula& f, Timestamp K) {
  if (K <= 0) throw TransformError("K must be positive");
  switch (f.op()) {
    case Op::Atom:
    case Op::Const:
    case Op::Act:
      return f;
    case Op::Not:
      return negation(decompose(f.child(), K));
    case Op::And:
      return conjunction(decompose(f.left(), K), decompose(f.right(), K));
    case Op::Or:
      return disjunction(decompose(f.left(), K), decompose(f.right(), K));
    case Op::ExactStep:
      if (f.step() <= K) return exact_step(f.step(), decompose(f.child(), K), true);
      return detail::decompose_eventually(f.interval(), decompose(f.child(), K), K);
    default:
      break;
  }
  const Interval& I = f.interval();
  if (!I.bounded()) throw TransformError("cannot decompose unbounded interval " + I.to_string());
  const Timestamp b = *I.upper();

  if (f.op() == Op::Eventually) return detail::decompose_eventually(I, decompose(f.child(), K), K);

  if (f.op() == Op::Globally) {
    if (b <= K) return globally(I, decompose(f.child(), K));
    return negation(decompose(eventually(I, negate(f.child())), K));
  }

  // Until
  Formula l = decompose(f.left(), K);
  Formula r = decompose(f.right(), K);
  if (b <= K) return until(I, l, r);
  const Timestamp lo = I.min_member();
  const Timestamp hi = *I.max_member();
  if (hi <= K) return until(Interval::closed(lo, hi), l, r);

  Formula step = disjunction(negation(act()), l);
  auto guarded = [&](Formula x) {
    if (K < 2) return x;
    Formula guard = negation(eventually(Interval::closed(1, K - 1), conjunction(act(), negate(l))));
    return conjunction(guard, x);
  };
  // l and r are already decomposed; the recursive call leaves them unchanged.
  if (lo < K) {
    Formula near = until(Interval::closed(lo, K), l, r);
    Formula far = decompose(until(Interval::closed(1, hi - K), l, r), K);
    return disjunction(near, guarded(exact_step(K, conjunction(step, far))));
  }
  Formula later = conjunction(step, decompose(until(Interval::closed(std::max<Timestamp>(lo - K, 1), hi - K), l, r), K));
  Formula body = lo == K ? disjunction(r, later) : later;
  return guarded(exact_step(K, body));
}

/// Formula the lazy pipeline evaluates for a point-semantics property.
inline Formula lazy_check_formula(const Formula& phi, Timestamp K) {
  return decompose(simplify_act(l2p(phi)), K);
}

}  // namespace mtlcheck
