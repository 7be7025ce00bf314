// Copyright 2026 The Meaning Authors.
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

#include "meaning/operators.h"

#include <cmath>

#include <gtest/gtest.h>

#include "common/fixtures.h"

namespace meaning {
namespace {

using testing::BumpGrid;
using testing::CodeOf;
using testing::RampGrid;
using testing::Seed;
using testing::Single;
using testing::SupDistance;

const Context kLine("line", {"a"});
const Context kPlane("plane", {"a", "b"});

// Nodes sit at multiples of .1, so checks at those points avoid interpolation.
constexpr int kRes = 11;

double At(const Region &r, double a) { return MembershipAt(r, {{"a", a}}); }

TEST(PointwiseTest, Families) {
  EXPECT_DOUBLE_EQ(EvaluatePointwise("very", 0.5), 0.25);
  EXPECT_DOUBLE_EQ(EvaluatePointwise("not", 0.25), 0.75);
  EXPECT_DOUBLE_EQ(EvaluatePointwise("somewhat", 0.25), 0.5);
  EXPECT_DOUBLE_EQ(EvaluatePointwise("extremely", 0.5), 0.125);
  EXPECT_TRUE(HasPointwiseFamily("identity"));
  EXPECT_FALSE(HasPointwiseFamily("kinda"));
  EXPECT_EQ(CodeOf([] { MakeHedge("kinda"); }), ErrorCode::kInvalidArgument);
}

TEST(PointwiseTest, TargetedHedgeLeavesOtherFactors) {
  const Region r(kPlane,
                 {Factor{RampGrid("a", true, kRes), 1.0}, Factor{RampGrid("b", true, kRes), 1.0}});
  const Region v = ApplyHedge("very", r, {"a"});
  EXPECT_EQ(v.factors()[1], r.factors()[1]);
  EXPECT_NEAR(MembershipAt(v, {{"a", 0.5}, {"b", 0.5}}), 0.25 * 0.5, 1e-9);
}

TEST(NotTest, InvolutionOnStoredGrid) {
  const Region r = Single(kLine, BumpGrid({"a"}, {0.3}, 0.17));
  EXPECT_EQ(ApplyNot(ApplyNot(r)).factors(), r.factors());
}

TEST(NotTest, FlattensProducts) {
  const Region r(kPlane, {Factor{RampGrid("a", true), 1.0}, Factor{RampGrid("b", true), 1.0}});
  const Region n = ApplyNot(r);
  ASSERT_EQ(n.factors().size(), 1u);
  EXPECT_NEAR(MembershipAt(n, {{"a", 0.5}, {"b", 0.5}}), 0.75, 1e-9);
}

TEST(ConjunctionTest, GeometricMeanAndDual) {
  const Region f = Single(kLine, RampGrid("a", true, kRes));
  const Region g = Single(kLine, RampGrid("a", false, kRes));
  EXPECT_NEAR(At(ApplyAnd(f, g), 0.5), 0.5, 1e-9);
  EXPECT_NEAR(At(ApplyAnd(f, g), 0.1), std::sqrt(0.1 * 0.9), 1e-9);
  EXPECT_NEAR(At(ApplyOr(f, g), 0.1), 1.0 - std::sqrt(0.9 * 0.1), 1e-9);
}

TEST(ConjunctionTest, DisjointAxesHalveExponents) {
  const Region f = Single(kPlane, RampGrid("a", true));
  const Region g = Single(kPlane, RampGrid("b", true));
  const Region h = ApplyAnd(f, g);
  ASSERT_EQ(h.factors().size(), 2u);
  EXPECT_DOUBLE_EQ(h.factors()[0].alpha, 0.5);
  EXPECT_DOUBLE_EQ(h.factors()[1].alpha, 0.5);
}

TEST(ConjunctionTest, NaryUsesEqualExponents) {
  const Region f = Single(kLine, RampGrid("a", true, kRes));
  const Region g = Single(kLine, BumpGrid({"a"}, {0.5}, 0.2, kRes));
  const Region k = Single(kLine, RampGrid("a", false, kRes));
  const Region h = CombineRegions(ConjunctionKind::kAnd, {f, g, k});
  const double x = 0.3;
  EXPECT_NEAR(At(h, x), std::cbrt(At(f, x) * At(g, x) * At(k, x)), 1e-7);
}

TEST(ProjectionTest, ReplacesCoveringFactor) {
  const Region r = Single(kLine, RampGrid("a", false));
  const auto fast = MakeProjection("fast", RampGrid("a", true));
  EXPECT_NEAR(At(Apply(fast, r), 0.8), 0.8, 1e-9);
  EXPECT_NEAR(At(Apply(fast, Region(kLine)), 0.2), 0.2, 1e-9);
}

TEST(TransformTest, ShiftMovesMass) {
  const Region r = Single(kLine, BumpGrid({"a"}, {0.3}, 0.1, kRes));
  const Region s = Apply(MakeShift("right", "a", 0.2), r);
  EXPECT_NEAR(At(s, 0.5), 1.0, 1e-3);
  EXPECT_NEAR(At(s, 0.3), At(r, 0.1), 1e-3);
}

TEST(TransformTest, RescaleCompresses) {
  const Region r = Single(kLine, RampGrid("a", true));
  const Region s = Apply(MakeRescale("squeeze", "a", 2.0), r);
  EXPECT_NEAR(At(s, 0.25), 0.5, 1e-9);
  EXPECT_NEAR(At(s, 0.75), 1.0, 1e-9);
  EXPECT_EQ(CodeOf([&] { Apply(MakeRescale("bad", "a", 0.0), r); }),
            ErrorCode::kInvalidArgument);
}

TEST(TransformTest, SmoothFlattensPeaks) {
  const Region r = Single(kLine, BumpGrid({"a"}, {0.5}, 0.05));
  const Region s = Apply(MakeSmooth("blur", {"a"}, 0.1), r);
  EXPECT_LT(At(s, 0.5), At(r, 0.5));
  EXPECT_GT(At(s, 0.62), At(r, 0.62));
}

TEST(TransformTest, RejectsForeignAxis) {
  const Region r = Single(kLine, RampGrid("a", true));
  EXPECT_EQ(CodeOf([&] { Apply(MakeShift("x", "zz", 0.1), r); }), ErrorCode::kContextMismatch);
}

TEST(NegationTest, ComplementsOperandResult) {
  const Region r = Single(kLine, RampGrid("a", false));
  const auto op = MakeNegation(MakeProjection("fast", RampGrid("a", true)));
  EXPECT_NEAR(At(Apply(op, r), 0.8), 0.2, 1e-9);
}

TEST(DirectSumTest, PartsMustBeDisjoint) {
  EXPECT_TRUE(CodeOf([] {
                MakeDirectSum({MakeShift("x", "a", 0.1), MakeShift("y", "a", 0.2)});
              }).has_value());
}

TEST(LineTest, AppliesLeftToRight) {
  const Region r = Single(kLine, RampGrid("a", true, kRes));
  const std::vector<MeaningOperator> line = {MakeShift("right", "a", 0.2), MakeHedge("very")};
  const Region out = ApplyLine(line, r);
  EXPECT_NEAR(At(out, 0.7), 0.25, 1e-9);
}

TEST(ButTest, SecondPartSeesSource) {
  const Region src = Single(kLine, BumpGrid({"a"}, {0.5}, 0.1));
  const PhraseOperator first{{MakeShift("right", "a", 0.3)}, kLine};
  const PhraseOperator second{{MakeHedge("very")}, kLine};
  const auto [a, b] = ApplyBut(src, first, second);
  EXPECT_EQ(b.factors(), ApplyPhrase(second, src).factors());
  EXPECT_GT(SupDistance(b, ApplyPhrase(second, a)), 0.5);
}

TEST(BlockTest, ModifierMovesParameters) {
  const auto walk = Seed()->Lookup("walk").at(0).op;
  const auto fast = Seed()->Lookup("fast").at(0).op;
  const auto very = MakeHedge("very");
  const double base = walk.parameters().at("quickness");
  const auto walk_fast = ComposeBlock(fast, walk);
  const auto walk_very_fast = ComposeBlock(very, walk_fast);
  EXPECT_GT(walk_fast.parameters().at("quickness"), base);
  EXPECT_GT(walk_very_fast.parameters().at("quickness"), walk_fast.parameters().at("quickness"));
  EXPECT_EQ(walk_fast.name(), "walk<fast>");
  EXPECT_NE(walk_fast.body(), walk.body());
}

TEST(BlockTest, RejectsOutsideModifier) {
  const auto walk = Seed()->Lookup("walk").at(0).op;
  EXPECT_EQ(CodeOf([&] { ComposeBlock(MakeShift("x", "weight", 0.1), walk); }),
            ErrorCode::kContextMismatch);
  EXPECT_EQ(CodeOf([] { ComposeBlock(MakeHedge("very"), MakeHedge("not")); }),
            ErrorCode::kInvalidArgument);
}

TEST(BlockTest, RidgeFollowsSpeed) {
  const auto walk = Seed()->Lookup("walk").at(0).op;
  const auto fast_walk = ComposeBlock(Seed()->Lookup("fast").at(0).op, walk);
  const Region motion(*Seed()->FindContext("motion"));
  const Region slow_r = Apply(walk, motion);
  const Region fast_r = Apply(fast_walk, motion);
  // A faster walk covers more distance in the same time.
  auto best_s = [](const Region &r, double t) {
    double arg = 0.0, best = -1.0;
    for (int k = 0; k <= 100; ++k) {
      const double v = MembershipAt(r, {{"s", k / 100.0}, {"t", t}});
      if (v > best) best = v, arg = k / 100.0;
    }
    return arg;
  };
  EXPECT_GT(best_s(fast_r, 0.4), best_s(slow_r, 0.4));
}

TEST(ParameterCentroidTest, UnspecifiedAxesSitInTheMiddle) {
  const Region r = Single(kPlane, BumpGrid({"a"}, {0.2}, 0.05));
  const auto c = ParameterCentroid(r);
  EXPECT_NEAR(c.at("a"), 0.2, 1e-3);
  EXPECT_DOUBLE_EQ(c.at("b"), 0.5);
}

TEST(OperatorTest, ExternalAxes) {
  EXPECT_TRUE(MakeHedge("very").ExternalAxes().empty());
  EXPECT_EQ(MakeShift("x", "a", 0.1).ExternalAxes(), std::vector<AxisId>{"a"});
  const auto sum = MakeDirectSum({MakeShift("x", "a", 0.1), MakeShift("y", "b", 0.1)});
  EXPECT_EQ(sum.ExternalAxes(), (std::vector<AxisId>{"a", "b"}));
}

}  // namespace
}  // namespace meaning
