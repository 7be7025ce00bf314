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

#include "meaning/interpreter.h"

#include <gtest/gtest.h>

#include "common/fixtures.h"

namespace meaning {
namespace {

using testing::CodeOf;
using testing::Seed;

TEST(SessionTest, AcceptsAndRecordsHistory) {
  Session s(Seed());
  const auto o = s.Interpret("walk very fast");
  EXPECT_EQ(o.action, Action::kAccepted);
  ASSERT_TRUE(o.chosen.has_value());
  EXPECT_EQ(o.chosen->context_id, "act:walk");
  EXPECT_EQ(s.state().active_context, "act:walk");
  EXPECT_EQ(s.version(), 1);
  ASSERT_EQ(s.history().size(), 1u);
  EXPECT_EQ(s.history()[0].phrase, "walk very fast");
  EXPECT_TRUE(s.history()[0].before.hierarchy.nodes().empty());
  EXPECT_EQ(s.history()[0].digest, Digest(o));
}

TEST(SessionTest, ParseFailuresBecomeClarifications) {
  Session s(Seed());
  const auto o = s.Interpret("zebra");
  EXPECT_EQ(o.action, Action::kClarificationRequested);
  EXPECT_NE(o.clarification.find("zebra"), std::string::npos);
  EXPECT_TRUE(s.state().hierarchy.nodes().empty());
}

TEST(SessionTest, KeepsAlternativesAsSpares) {
  Session s(Seed());
  const auto o = s.Interpret("bank is high");
  EXPECT_EQ(o.chosen->context_id, "obj:bank#finance");
  EXPECT_EQ(o.alternatives_kept, 1);
  ASSERT_EQ(s.state().spares.size(), 1u);
  EXPECT_EQ(s.state().spares.items()[0].context_id, "obj:bank#river");
}

TEST(SessionTest, RetriesSpareContext) {
  Session s(Seed());
  s.Interpret("bank is high");
  const auto o = s.Interpret("it is deeper");
  EXPECT_EQ(o.action, Action::kRetriedSpareContext);
  EXPECT_EQ(s.state().active_context, "obj:bank#river");
  EXPECT_EQ(s.state().spares.size(), 0u);
}

TEST(SessionTest, SpareLimitZeroKeepsNothing) {
  ComprehensionConfig cfg;
  cfg.spare_limit = 0;
  Session s(Seed(), cfg);
  s.Interpret("bank is high");
  EXPECT_EQ(s.state().spares.size(), 0u);
  EXPECT_EQ(s.Interpret("it is deeper").action, Action::kClarificationRequested);
}

TEST(SessionTest, FreshContextFallbackReportsActiveFlags) {
  Session s(Seed());
  s.Interpret("walk");
  const auto o = s.Interpret("walk fast or slowly");
  EXPECT_EQ(o.action, Action::kAccepted);
  EXPECT_EQ(o.chosen->context_id.rfind("fresh:", 0), 0u);
  EXPECT_TRUE(o.flags.count(Flag::kNoChange));
  EXPECT_TRUE(o.chosen->report.flags.empty());
}

TEST(SessionTest, ConditionalGoesToSideContext) {
  Session s(Seed());
  s.Interpret("drive fast");
  const Region before = s.state().hierarchy.Find("act:drive")->region;
  const auto o = s.Interpret("if drive slowly");
  EXPECT_EQ(o.action, Action::kAccepted);
  EXPECT_EQ(o.chosen->context_id, "if:act:drive");
  EXPECT_EQ(s.state().hierarchy.Find("act:drive")->region, before);
  EXPECT_FALSE(o.chosen->report.effector_command.has_value());
}

TEST(SessionTest, ResetRestartsFromUnspecified) {
  Session s(Seed());
  s.Interpret("robot is ne");
  s.Interpret("car is fast");
  const auto o = s.Interpret("forget everything robot is sw");
  ASSERT_EQ(o.action, Action::kAccepted);
  EXPECT_FALSE(o.chosen->report.Has(Flag::kVaguenessIncrease));
  Session fresh(Seed());
  fresh.Interpret("robot is sw");
  EXPECT_EQ(s.state().hierarchy.Find("obj:robot")->region,
            fresh.state().hierarchy.Find("obj:robot")->region);
  // Other contexts are kept.
  EXPECT_NE(s.state().hierarchy.Find("obj:car"), nullptr);
}

TEST(SessionTest, Deterministic) {
  Session a(Seed()), b(Seed());
  for (const char *p : {"robot is ne", "it is not sw", "bank is high", "it is deeper"}) {
    EXPECT_EQ(Digest(a.Interpret(p)), Digest(b.Interpret(p)));
  }
  EXPECT_EQ(a.state(), b.state());
}

TEST(ReinterpretTest, WindowValidation) {
  Session s(Seed());
  s.Interpret("walk");
  EXPECT_EQ(CodeOf([&] { s.ReinterpretWindow(2, 2); }), ErrorCode::kInvalidArgument);
  const long v = s.version();
  EXPECT_EQ(Digest(s.ReinterpretWindow(2, 0)), s.history().back().digest);
  EXPECT_EQ(s.version(), v);
}

TEST(ReinterpretTest, FailedReplayLeavesSessionUnchanged) {
  Session s(Seed());
  s.Interpret("bank is high");
  s.Interpret("it is deeper");
  const auto state = s.state();
  const long v = s.version();
  const auto o = s.ReinterpretWindow(0, 2);
  EXPECT_EQ(o.action, Action::kClarificationRequested);
  EXPECT_EQ(s.state(), state);
  EXPECT_EQ(s.version(), v);
}

TEST(ReinterpretTest, SuccessfulReplayReplacesState) {
  Session s(Seed());
  s.Interpret("bank is high");
  s.Interpret("it is deeper");
  const auto o = s.ReinterpretWindow(2, 2);
  EXPECT_EQ(o.action, Action::kRetriedSpareContext);
  EXPECT_EQ(s.history().size(), 2u);
  EXPECT_GT(s.version(), 2);
}

TEST(EvaluateCandidateTest, DoesNotTouchState) {
  const auto &lex = *Seed();
  Session s(Seed());
  s.Interpret("car is fast");
  const SessionState before = s.state();
  const auto c = Parse(lex, Tokenize(lex, "car is slow")).at(0);
  const auto ev = EvaluateCandidate(lex, s.config(), s.state(), c);
  EXPECT_EQ(s.state(), before);
  ASSERT_TRUE(ev.next_state.has_value());
  EXPECT_NE(*ev.next_state, before);
  const auto fresh = EvaluateCandidate(lex, s.config(), s.state(), c, true);
  EXPECT_EQ(fresh.target_contexts.at(0).rfind("fresh:", 0), 0u);
}

TEST(ConfigTest, ThresholdGatesAcceptance) {
  ComprehensionConfig strict;
  strict.threshold = 0.99;
  Session s(Seed(), strict);
  const auto o = s.Interpret("car is fast and slow");
  EXPECT_NE(o.action, Action::kAccepted);
  Session lax(Seed());
  EXPECT_EQ(lax.Interpret("car is fast and slow").action, Action::kAccepted);
}

}  // namespace
}  // namespace meaning
