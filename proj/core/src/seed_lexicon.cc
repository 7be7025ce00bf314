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

// Seed vocabulary: the motion words, hedges and connectives, a few nouns,
// the spatial NE/SW fixtures and the "bank"/"high" homonyms.

#include <algorithm>
#include <cmath>
#include <memory>

#include "meaning/lexicon.h"

namespace meaning {

namespace {

MembershipGrid Ramp(const AxisId &axis, int res, bool rising = true) {
  return MembershipGrid::Tabulate({axis}, res, [rising](std::span<const double> c) {
    return rising ? c[0] : 1.0 - c[0];
  });
}

MembershipGrid Bump(std::vector<AxisId> axes, std::vector<double> center,
                    double sigma, int res) {
  return MembershipGrid::Tabulate(
      std::move(axes), res, [&](std::span<const double> c) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
          d2 += (c[i] - center[i]) * (c[i] - center[i]);
        }
        return std::exp(-d2 / (2.0 * sigma * sigma));
      });
}

Region Single(const Context &ctx, MembershipGrid grid, std::string label = {}) {
  return Region(ctx, {Factor{std::move(grid), 1.0}}, std::move(label));
}

// Adjective as a block over its own axes: the parameter region is the
// adjective's shape, the external body copies it.
Sense Adjective(const std::string &id, const Context &ctx, MembershipGrid grid) {
  Derivation d;
  d.kind = DerivationKind::kCopy;
  d.external_axes = ctx.axes();
  d.resolution = grid.resolution();
  Sense s;
  s.id = id;
  s.op = MeaningOperator::Block(id, ctx, Single(ctx, std::move(grid), id), d);
  return s;
}

Sense Hedge(const std::string &family) {
  Sense s;
  s.id = family;
  s.op = MakeHedge(family);
  return s;
}

Sense Noun(const std::string &id, const Context &home, Region base) {
  Derivation d;
  d.kind = DerivationKind::kActualize;
  d.external_axes = home.axes();
  Sense s;
  s.id = id;
  s.home_axes = home.axes();
  s.op = MeaningOperator::Block(id, home, base.WithContext(home), d,
                                base.WithContext(home));
  return s;
}

}  // namespace

Lexicon SeedLexicon(int res) {
  Lexicon lex;

  // Axes.
  const Context motion("motion", {"s", "t"});
  auto fast_st = std::make_shared<const Region>(Single(
      motion,
      MembershipGrid::Tabulate({"s", "t"}, res,
                               [](std::span<const double> c) {
                                 return std::clamp((c[0] - c[1] + 1.0) / 2.0,
                                                   0.0, 1.0);
                               }),
      "fast(s,t)"));
  lex.AddAxis({"s", "distance", AxisKind::kBasic, nullptr, "unit distance", false});
  lex.AddAxis({"t", "time", AxisKind::kBasic, nullptr, "unit time", false});
  lex.AddAxis({"quickness", "quickness", AxisKind::kDerived, fast_st,
               "membership of fast(s,t)", false});
  lex.AddAxis({"drive_speed", "drive speed", AxisKind::kBasic, nullptr,
               "throttle setting", true});
  lex.AddAxis({"east", "east", AxisKind::kBasic, nullptr, "west to east", false});
  lex.AddAxis({"north", "north", AxisKind::kBasic, nullptr, "south to north", false});
  lex.AddAxis({"weight", "weight", AxisKind::kBasic, nullptr, "light to heavy", false});
  lex.AddAxis({"funds", "funds", AxisKind::kBasic, nullptr, "account balance", false});
  lex.AddAxis({"depth", "depth", AxisKind::kBasic, nullptr, "water depth", false});

  // Contexts.
  const Context quickness("quickness", {"quickness"});
  const Context driving("driving", {"drive_speed", "t"});
  const Context space("space", {"east", "north"});
  const Context vehicle("vehicle", {"quickness", "weight"});
  const Context weight("weight", {"weight"});
  const Context finance("finance", {"funds"});
  const Context river("river", {"depth"});
  for (const auto &c : {motion, quickness, driving, space, vehicle, weight,
                        finance, river}) {
    lex.AddContext(c);
  }

  // Named regions.
  lex.AddRegion("fast(s,t)", *fast_st);
  lex.AddRegion("fast", Single(quickness, Ramp("quickness", res), "fast"));
  lex.AddRegion("slow", Single(quickness, Ramp("quickness", res, false), "slow"));
  lex.AddRegion("ne", Single(space, Bump({"east", "north"}, {0.75, 0.75}, 0.15, res), "ne"));
  lex.AddRegion("sw", Single(space, Bump({"east", "north"}, {0.25, 0.25}, 0.15, res), "sw"));

  // Qualitative adjectives.
  lex.AddSense("fast", PartOfSpeech::kQualAdjective,
               Adjective("fast", quickness, Ramp("quickness", res)));
  lex.AddSense("slow", PartOfSpeech::kQualAdjective,
               Adjective("slow", quickness, Ramp("quickness", res, false)));
  lex.AddSense("moderately-paced", PartOfSpeech::kQualAdjective,
               Adjective("moderately-paced", quickness,
                         Bump({"quickness"}, {0.5}, 0.15, res)));
  lex.AddSense("heavy", PartOfSpeech::kQualAdjective,
               Adjective("heavy", weight, Ramp("weight", res)));
  lex.AddSense("ne", PartOfSpeech::kQualAdjective,
               Adjective("ne", space, Bump({"east", "north"}, {0.75, 0.75}, 0.15, res)));
  lex.AddSense("sw", PartOfSpeech::kQualAdjective,
               Adjective("sw", space, Bump({"east", "north"}, {0.25, 0.25}, 0.15, res)));
  // Two close readings of "quick"; stored merged.
  lex.AddSense("quick", PartOfSpeech::kQualAdjective,
               Adjective("quick", quickness, Ramp("quickness", res)));
  lex.AddSense("quick", PartOfSpeech::kQualAdjective,
               Adjective("quick", quickness,
                         MembershipGrid::Tabulate({"quickness"}, res,
                                                  [](std::span<const double> c) {
                                                    return std::clamp(
                                                        1.25 * c[0] - 0.1, 0.0, 1.0);
                                                  })));
  // Homonym "high": money vs water.
  {
    Sense funds = Adjective("high#funds", finance, Ramp("funds", res));
    Sense depth = Adjective("high#depth", river, Ramp("depth", res));
    lex.AddSense("high", PartOfSpeech::kQualAdjective, funds);
    lex.AddSense("high", PartOfSpeech::kQualAdjective, depth);
  }

  // Comparative adjectives.
  {
    Sense faster;
    faster.id = "faster";
    faster.op = MakeRescale("faster", "t", 2.0);
    lex.AddSense("faster", PartOfSpeech::kCompAdjective, faster);
    Sense deeper;
    deeper.id = "deeper";
    deeper.op = MakeShift("deeper", "depth", 0.2);
    lex.AddSense("deeper", PartOfSpeech::kCompAdjective, deeper);
  }

  // Hedges and connectives.
  lex.AddSense("very", PartOfSpeech::kAdverbHedge, Hedge("very"));
  lex.AddSense("somewhat", PartOfSpeech::kAdverbHedge, Hedge("somewhat"));
  lex.AddSense("extremely", PartOfSpeech::kAdverbHedge, Hedge("extremely"));
  lex.AddSense("not", PartOfSpeech::kNegation, Hedge("not"));
  for (const char *c : {"and", "or", "but"}) {
    Sense s;
    s.id = c;
    s.op = MeaningOperator(Pointwise{"identity", {}}, c);
    lex.AddSense(c, PartOfSpeech::kConjunction, s);
  }

  // Verbs.
  {
    const Region pace =
        Single(quickness, Bump({"quickness"}, {0.5}, 0.15, res), "pace");
    Derivation ridge;
    ridge.kind = DerivationKind::kRidge;
    ridge.external_axes = {"s", "t"};
    ridge.resolution = res;
    Sense walk;
    walk.id = "walk";
    walk.home_axes = motion.axes();
    walk.op = MeaningOperator::Block("walk", quickness, pace, ridge);
    lex.AddSense("walk", PartOfSpeech::kVerb, walk);

    Derivation copy;
    copy.kind = DerivationKind::kCopy;
    copy.external_axes = {"drive_speed"};
    copy.resolution = res;
    Sense drive;
    drive.id = "drive";
    drive.home_axes = driving.axes();
    drive.op = MeaningOperator::Block("drive", quickness, pace, copy);
    lex.AddSense("drive", PartOfSpeech::kVerb, drive);

    Sense still;
    still.id = "stand-still";
    still.home_axes = motion.axes();
    still.op = MakeProjection(
        "stand-still",
        MembershipGrid::Tabulate({"s", "t"}, res, [](std::span<const double> c) {
          return std::exp(-c[0] * c[0] / (2.0 * 0.08 * 0.08));
        }));
    lex.AddSense("stand-still", PartOfSpeech::kVerb, still);
  }

  // Nouns.
  lex.AddSense("car", PartOfSpeech::kNoun,
               Noun("car", vehicle,
                    Region::Normalized(vehicle,
                                       {{Bump({"quickness"}, {0.6}, 0.2, res), 1.0},
                                        {Bump({"weight"}, {0.6}, 0.2, res), 1.0}})));
  lex.AddSense("boat", PartOfSpeech::kNoun,
               Noun("boat", vehicle,
                    Region::Normalized(vehicle,
                                       {{Bump({"quickness"}, {0.4}, 0.2, res), 1.0},
                                        {Bump({"weight"}, {0.8}, 0.2, res), 1.0}})));
  lex.AddSense("robot", PartOfSpeech::kNoun, Noun("robot", space, Region(space)));
  {
    Sense money = Noun("bank#finance", finance,
                       Single(finance, Bump({"funds"}, {0.5}, 0.2, res)));
    money.usage_tags = {"finance"};
    Sense shore = Noun("bank#river", river,
                       Single(river, Bump({"depth"}, {0.3}, 0.15, res)));
    shore.usage_tags = {"geography"};
    lex.AddSense("bank", PartOfSpeech::kNoun, money);
    lex.AddSense("bank", PartOfSpeech::kNoun, shore);
  }

  lex.AddInflection("slowly", "slow");
  lex.AddInflection("quickly", "quick");
  lex.AddInflection("walking", "walk");
  lex.AddInflection("walks", "walk");
  lex.AddInflection("driving", "drive");
  lex.AddInflection("drives", "drive");
  lex.AddMultiword("stand still", "stand-still");
  lex.AddMultiword("standing still", "stand-still");
  lex.AddMultiword("moderately paced", "moderately-paced");
  return lex;
}

}  // namespace meaning
