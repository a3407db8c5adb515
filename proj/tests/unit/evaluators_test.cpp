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

#include <gtest/gtest.h>

#include "mtlcheck/evaluators.hpp"
#include "mtlcheck/parser.hpp"
#include "mtlcheck/transforms.hpp"

namespace mtlcheck {
namespace {

const char* kExampleOne = "1 p\n2 p\n4\n6 p\n8 p\n9\n10\n";

std::vector<bool> point_row(const TimedWord& w, const Formula& f) {
  EvalTable t(w, f, Semantics::Point);
  std::vector<bool> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(t.at_position(f, i));
  return out;
}

TEST(EvalPoint, ExampleOne) {
  TimedWord w = parse_trace_text(kExampleOne);
  Formula phi = parse_formula("F[3,7] p");
  EXPECT_TRUE(eval_point(w, 0, phi));
  EXPECT_FALSE(eval_point(w, 3, phi));  // ts 6
  EXPECT_EQ(point_row(w, phi), (std::vector<bool>{true, true, true, false, false, false, false}));
}

TEST(EvalPoint, PhiPrimeTrueAtTwoAndFour) {
  TimedWord w = parse_trace_text(kExampleOne);
  Formula phi_prime = parse_formula("F[3,4] p | F=4 (F[0,3] p)");
  EXPECT_EQ(point_row(w, phi_prime),
            (std::vector<bool>{false, true, true, false, false, false, false}));
}

TEST(EvalPoint, ExactStepChainExample) {
  TimedWord w = parse_trace_text("1 q\n7 p\n");
  EXPECT_TRUE(eval_point(w, 0, parse_formula("F=6 p")));
  EXPECT_FALSE(eval_point(w, 0, parse_formula("F=3 F=3 p")));
}

TEST(EvalPoint, Tautologies) {
  TimedWord w = parse_trace_text("1 p\n3\n4 q\n");
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_TRUE(eval_point(w, i, parse_formula("p | !p")));
    EXPECT_TRUE(eval_point(w, i, act()));
  }
}

TEST(EvalPoint, UntilIsStrict) {
  // The left operand is not required at the start or at the witness.
  TimedWord w = parse_trace_text("1\n2 a\n3 b\n");
  EXPECT_TRUE(eval_point(w, 0, parse_formula("a U[2,2] b")));
  EXPECT_FALSE(eval_point(w, 0, parse_formula("b U[2,2] b")));
  EXPECT_TRUE(eval_point(w, 0, parse_formula("a U[0,0] !a")));
}

TEST(EvalPoint, ZeroWidthUntil) {
  TimedWord w = parse_trace_text("1 p\n2\n3 p\n");
  Formula f = parse_formula("p U[0,0] p");
  EXPECT_EQ(point_row(w, f), (std::vector<bool>{true, false, true}));
}

TEST(EvalPoint, GloballyByBruteForce) {
  // q at 1..3, absent at 4
  TimedWord w = parse_trace_text("1 q\n2 q\n3 q\n4\n");
  Formula g = parse_formula("G[0,2] q");
  EXPECT_EQ(point_row(w, g), (std::vector<bool>{true, false, false, false}));
}

TEST(EvalPoint, Unbounded) {
  TimedWord w = parse_trace_text("1\n5\n90 p\n");
  EXPECT_TRUE(eval_point(w, 0, parse_formula("F p")));
  EXPECT_FALSE(eval_point(w, 0, parse_formula("G[1,inf) !p")));
  EXPECT_THROW(eval_point(w, 3, parse_formula("p")), EvalError);
}

TEST(EvalLazy, ExactStepChainExample) {
  TimedWord w = parse_trace_text("1 q\n7 p\n");
  EXPECT_TRUE(eval_lazy(w, 1, parse_formula("F=6 p")));
  EXPECT_TRUE(eval_lazy(w, 1, parse_formula("F=3 F=3 p")));
  // Anchored at time zero the chain needs p at 6, where there is no position.
  EXPECT_FALSE(verdict(w, parse_formula("F=3 F=3 p"), Semantics::Lazy, Anchor::TimeZero));
}

TEST(EvalLazy, VirtualInstant) {
  TimedWord w = parse_trace_text(kExampleOne);
  EXPECT_TRUE(eval_lazy(w, 1, parse_formula("F[4,4] (F[0,3] p)")));
  EXPECT_TRUE(eval_lazy(w, 5, parse_formula("F[0,3] p")));
  EXPECT_FALSE(eval_lazy(w, 5, parse_formula("p")));
}

TEST(EvalLazy, ActAndTautologyAtPositionsOnly) {
  TimedWord w = parse_trace_text("2 p\n5\n");
  for (Timestamp i = 0; i <= w.last_ts(); ++i) {
    EXPECT_EQ(eval_lazy(w, i, act()), i == 2 || i == 5) << i;
    // p | !p is a tautology pointwise, but !p alone holds off positions too.
    EXPECT_TRUE(eval_lazy(w, i, parse_formula("p | !p")));
    EXPECT_EQ(eval_lazy(w, i, conjunction(act(), parse_formula("p | !p"))), i == 2 || i == 5);
  }
}

TEST(EvalLazy, GuardOnlyAtPositions) {
  // No position between 1 and 4, so !a cannot block.
  TimedWord w = parse_trace_text("1\n4 b\n");
  EXPECT_TRUE(eval_lazy(w, 1, parse_formula("a U[3,3] b")));
  TimedWord w2 = parse_trace_text("1\n2\n4 b\n");
  EXPECT_FALSE(eval_lazy(w2, 1, parse_formula("a U[3,3] b")));
}

TEST(EvalLazy, RejectsUnbounded) {
  TimedWord w = parse_trace_text("1 p\n");
  EXPECT_THROW(eval_lazy(w, 0, parse_formula("F p")), EvalError);
}

TEST(EvalTable, LazyDecompositionMatchesAtPositions) {
  TimedWord w = parse_trace_text(kExampleOne);
  Formula d = lazy_check_formula(parse_formula("F[3,7] p"), 4);
  EvalTable t(w, d, Semantics::Lazy);
  std::vector<Timestamp> true_at;
  for (const auto& e : w.elements())
    if (t.at_instant(d, e.ts)) true_at.push_back(e.ts);
  EXPECT_EQ(true_at, (std::vector<Timestamp>{1, 2, 4}));
}

TEST(EvalTable, HorizonAndPoints) {
  TimedWord w = parse_trace_text("3 p\n");
  EvalTable t(w, parse_formula("F[0,2] p & G[1,4] p"), Semantics::Lazy);
  EXPECT_EQ(t.horizon(), 3 + 2 + 4);
  EXPECT_EQ(t.points().size(), 10u);
  EvalTable pt(w, atom("p"), Semantics::Point);
  EXPECT_EQ(pt.points(), (std::vector<Timestamp>{3}));
  EXPECT_TRUE(pt.at_position(atom("p"), 0));
}

TEST(EvalTable, Tsv) {
  TimedWord w = parse_trace_text("1 p\n2\n");
  EvalTable t(w, parse_formula("!p"), Semantics::Point);
  EXPECT_EQ(t.to_tsv(), "subformula\t1\t2\np\t⊤\t⊥\n!p\t⊥\t⊤\n");
}

TEST(Verdict, Anchors) {
  TimedWord w = parse_trace_text(kExampleOne);
  Formula phi = parse_formula("F[3,7] p");
  EXPECT_TRUE(verdict(w, phi, Semantics::Point, Anchor::FirstPosition));
  EXPECT_TRUE(verdict(w, lazy_check_formula(phi, 4), Semantics::Lazy, Anchor::FirstPosition));
  EXPECT_THROW(verdict(w, phi, Semantics::Point, Anchor::TimeZero), EvalError);
}

TEST(Bounds, MaxBoundedUpper) {
  EXPECT_EQ(max_bounded_upper(parse_formula("F[3,4] p | F=4 (F[0,3] p)")), 4);
  EXPECT_EQ(max_bounded_upper(atom("p")), 0);
  EXPECT_EQ(max_bounded_upper(parse_formula("F[3,7] p")), 7);
  EXPECT_EQ(max_bounded_upper(exact_step(6, atom("p"))), 6);
  EXPECT_EQ(max_bounded_upper(parse_formula("F[2,inf) p")), 0);
}

}  // namespace
}  // namespace mtlcheck
