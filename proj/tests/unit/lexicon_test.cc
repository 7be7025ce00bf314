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

#include "meaning/lexicon.h"

#include <gtest/gtest.h>

#include "common/fixtures.h"

namespace meaning {
namespace {

using testing::CodeOf;
using testing::RampGrid;
using testing::Seed;
using testing::Single;

Sense CopyAdjective(const std::string &id, const Context &ctx, MembershipGrid grid) {
  Derivation d;
  d.kind = DerivationKind::kCopy;
  d.external_axes = ctx.axes();
  d.resolution = grid.resolution();
  Sense s;
  s.id = id;
  s.op = MeaningOperator::Block(id, ctx, Single(ctx, std::move(grid)), d);
  return s;
}

TEST(LexiconTest, MergesSensesWithMatchingInternalContext) {
  const Context q("q", {"q"});
  Lexicon lex;
  EXPECT_FALSE(lex.AddSense("quick", PartOfSpeech::kQualAdjective,
                            CopyAdjective("quick", q, RampGrid("q", true, 11))));
  EXPECT_TRUE(lex.AddSense("quick", PartOfSpeech::kQualAdjective,
                           CopyAdjective("quick", q, RampGrid("q", false, 11))));
  const auto senses = lex.Lookup("quick");
  ASSERT_EQ(senses.size(), 1u);
  // Pointwise max of a rising and a falling ramp.
  const auto &param = *senses[0].op.parameter_region();
  EXPECT_NEAR(MembershipAt(param, {{"q", 0.2}}), 0.8, 1e-9);
  EXPECT_NEAR(MembershipAt(param, {{"q", 0.5}}), 0.5, 1e-9);
}

TEST(LexiconTest, KeepsHomonymsApart) {
  const Context a("a", {"a"}), b("b", {"b"});
  Lexicon lex;
  lex.AddSense("high", PartOfSpeech::kQualAdjective, CopyAdjective("high#a", a, RampGrid("a", true)));
  EXPECT_FALSE(lex.AddSense("high", PartOfSpeech::kQualAdjective,
                            CopyAdjective("high#b", b, RampGrid("b", true))));
  EXPECT_EQ(lex.Lookup("high").size(), 2u);
}

TEST(LexiconTest, GeneratesSenseIds) {
  Lexicon lex;
  Sense s;
  s.op = MakeHedge("very");
  lex.AddSense("w", PartOfSpeech::kAdverbHedge, s);
  s.op = MakeHedge("somewhat");
  lex.AddSense("w", PartOfSpeech::kAdverbHedge, s);
  const auto senses = lex.Lookup("w");
  ASSERT_EQ(senses.size(), 2u);
  EXPECT_EQ(senses[0].id, "w");
  EXPECT_EQ(senses[1].id, "w#2");
}

TEST(LexiconTest, RejectsPartOfSpeechClash) {
  Lexicon lex;
  Sense s;
  s.op = MakeHedge("very");
  lex.AddSense("w", PartOfSpeech::kAdverbHedge, s);
  EXPECT_EQ(CodeOf([&] { lex.AddSense("w", PartOfSpeech::kNoun, s); }),
            ErrorCode::kInvalidArgument);
}

TEST(LexiconTest, InflectionsResolveToLemma) {
  const auto &lex = *Seed();
  EXPECT_EQ(lex.Lemma("slowly"), "slow");
  EXPECT_EQ(lex.Lookup("slowly").size(), lex.Lookup("slow").size());
  EXPECT_TRUE(lex.Lookup("zebra").empty());
  EXPECT_EQ(lex.multiwords().at("stand still"), "stand-still");
}

TEST(LexiconTest, PartOfSpeechNamesRoundTrip) {
  for (auto pos : {PartOfSpeech::kQualAdjective, PartOfSpeech::kCompAdjective,
                   PartOfSpeech::kNoun, PartOfSpeech::kVerb, PartOfSpeech::kAdverbHedge,
                   PartOfSpeech::kConjunction, PartOfSpeech::kNegation,
                   PartOfSpeech::kQuantifierStub}) {
    EXPECT_EQ(ParsePartOfSpeech(PartOfSpeechName(pos)), pos);
  }
  EXPECT_EQ(CodeOf([] { ParsePartOfSpeech("gerund"); }), ErrorCode::kInvalidArgument);
}

TEST(LexiconTest, DerivedAxisNeedsReference) {
  Lexicon lex;
  EXPECT_EQ(CodeOf([&] { lex.AddAxis({"q", "q", AxisKind::kDerived, nullptr, "", false}); }),
            ErrorCode::kInvalidArgument);
}

TEST(SeedLexiconTest, Vocabulary) {
  const auto &lex = *Seed();
  for (const char *w : {"fast", "slow", "quick", "moderately-paced", "heavy", "faster", "deeper",
                        "very", "somewhat", "extremely", "not", "and", "or", "but", "walk",
                        "drive", "stand-still", "car", "boat", "robot", "bank", "high", "ne",
                        "sw"}) {
    EXPECT_NE(lex.Find(w), nullptr) << w;
  }
  EXPECT_EQ(lex.Lookup("quick").size(), 1u);
  EXPECT_EQ(lex.Lookup("bank").size(), 2u);
  EXPECT_EQ(lex.Lookup("high").size(), 2u);
  EXPECT_EQ(lex.EffectorAxes(), std::vector<AxisId>{"drive_speed"});
  const Axis *q = lex.FindAxis("quickness");
  ASSERT_NE(q, nullptr);
  EXPECT_EQ(q->kind, AxisKind::kDerived);
  EXPECT_EQ(q->reference->CoveredAxes(), (std::vector<AxisId>{"s", "t"}));
}

TEST(SeedLexiconTest, Deterministic) { EXPECT_TRUE(SeedLexicon() == SeedLexicon()); }

TEST(HierarchyTest, ParentsMustExistAndNotCycle) {
  ContextHierarchy h;
  const Context root("root", {"a"});
  h.Put(root, Region(root));
  EXPECT_EQ(CodeOf([&] { h.Put(Context("x", {"a"}, "missing"), Region(root)); }),
            ErrorCode::kInvalidArgument);
  h.Put(Context("child", {"a"}, "root"), Region(root));
  h.Put(Context("grandchild", {"a"}, "child"), Region(root));
  EXPECT_EQ(h.Depth("grandchild"), 2);
  EXPECT_EQ(CodeOf([&] { h.Put(Context("root", {"a"}, "grandchild"), Region(root)); }),
            ErrorCode::kInvalidArgument);
}

TEST(HierarchyTest, RegionsTakeTheNodeContext) {
  ContextHierarchy h;
  const Context c("obj:x", {"a"});
  h.Put(c, Region(c));
  h.SetRegion("obj:x", Single(Context("other", {"a"}), RampGrid("a", true)));
  EXPECT_EQ(h.Find("obj:x")->region.context().id(), "obj:x");
  EXPECT_EQ(CodeOf([&] { h.SetRegion("nope", Region(c)); }), ErrorCode::kInvalidArgument);
}

TEST(HierarchyTest, Indexes) {
  ContextHierarchy h;
  const Context c("obj:car", {"a"});
  h.Put(c, Region(c));
  h.Index("objects", "car", "obj:car");
  EXPECT_EQ(h.Lookup("objects", "car"), "obj:car");
  EXPECT_FALSE(h.Lookup("objects", "boat").has_value());
  EXPECT_EQ(CodeOf([&] { h.Index("objects", "boat", "obj:boat"); }), ErrorCode::kInvalidArgument);
}

TEST(SpareBufferTest, KeepsMostRecent) {
  SpareBuffer b(2);
  for (const char *id : {"a", "b", "c"}) b.Push({id, Region(), ""});
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.Pop()->context_id, "c");
  EXPECT_EQ(b.Pop()->context_id, "b");
  EXPECT_FALSE(b.Pop().has_value());
  SpareBuffer none(0);
  none.Push({"a", Region(), ""});
  EXPECT_EQ(none.size(), 0u);
}

TEST(SpareBufferTest, ShrinkingDropsOldest) {
  SpareBuffer b(3);
  for (const char *id : {"a", "b", "c"}) b.Push({id, Region(), ""});
  b.SetLimit(1);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.items().front().context_id, "c");
}

TEST(ActualizeTest, FindsOrCreatesContexts) {
  const auto &lex = *Seed();
  ContextHierarchy h;
  const Sense car = lex.Lookup("car").at(0);
  const std::string id = ActualizeNoun(h, car);
  EXPECT_EQ(id, "obj:car");
  EXPECT_EQ(ActualizeNoun(h, car), id);
  EXPECT_EQ(h.Find(id)->context.axes(), car.home_axes);
  EXPECT_FALSE(h.Find(id)->region.empty());
  const std::string walk = ActualizeVerb(h, lex.Lookup("walk").at(0));
  EXPECT_EQ(walk, "act:walk");
  EXPECT_TRUE(h.Find(walk)->region.empty());
  EXPECT_EQ(ActualizeNoun(h, lex.Lookup("bank").at(1)), "obj:bank#river");
}

}  // namespace
}  // namespace meaning
