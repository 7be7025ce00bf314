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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "common/fixtures.h"
#include "meaning/abstraction.h"
#include "meaning/comprehension.h"
#include "meaning/error.h"
#include "meaning/interpreter.h"
#include "meaning/io.h"
#include "service/scenario.h"

namespace {

using namespace meaning;
using meaning::testing::Seed;
using meaning::testing::Single;

constexpr double kDeMorganTolerance = 1e-9;
constexpr double kExpansionTolerance = 0.05;
constexpr double kContradictionPeak = 0.5;
constexpr double kContradictionTolerance = 0.02;
constexpr double kTopQuartile = 0.75;
constexpr double kOracleResidualTolerance = 1e-9;
constexpr double kDescribeMembership = 0.9;
constexpr double kProductSlack = 1e-12;

class Check {
 public:
  void Expect(bool ok, const std::string &what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void Note(std::string note) { notes_.push_back(std::move(note)); }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string> &notes() const { return notes_; }
  int checks() const { return checks_; }
  const std::vector<std::string> &failures() const { return failures_; }

 private:
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

MeaningOperator Word(const std::string &word, int sense = 0) {
  return Seed()->Lookup(word).at(sense).op;
}

const Region &Named(const std::string &name) { return *Seed()->FindRegion(name); }

const Context &Ctx(const std::string &id) { return *Seed()->FindContext(id); }

bool SameSamples(const Region &a, const Region &b) {
  return meaning::testing::SupDistance(a, b) == 0.0;
}

InterpretationOutcome Say(Session &session, const std::string &phrase) {
  return session.Interpret(phrase);
}

// ---------------------------------------------------------------------------

void OperatorLaws(Check &c) {
  for (const char *name : {"fast", "slow", "ne", "sw", "fast(s,t)"}) {
    const Region &r = Named(name);
    c.Expect(SameSamples(ApplyNot(ApplyNot(r)), r), std::string("not(not(") + name + ")) differs from " + name);
  }
  // Product regions are flattened once; after that the involution is exact.
  const Region product = DirectSumRegions(Named("slow"), Single(Ctx("weight"),
                                          meaning::testing::RampGrid("weight", true)));
  const Region flat = ApplyNot(ApplyNot(product));
  c.Expect(SameSamples(ApplyNot(ApplyNot(flat)), flat), "not(not(x)) on a flattened product");

  // very(x) <= x, equal only at the ends.
  for (int k = 0; k <= 4096; ++k) {
    const double x = QuantizeMembership(k / 4096.0);
    const double v = EvaluatePointwise("very", x);
    const bool end = x == 0.0 || x == 1.0;
    c.Expect(v <= x && (v == x) == end, "very(" + Num(x) + ") = " + Num(v));
  }
  for (double x : {std::ldexp(1.0, -32), 1.0 - std::ldexp(1.0, -32)}) {
    const double v = EvaluatePointwise("very", x);
    c.Expect(v < x, "very at the quantization edge " + Num(x));
  }

  // De Morgan, both directions.
  const Context motion = Ctx("motion");
  const std::vector<std::pair<Region, Region>> pairs = {
      {Named("slow"), Named("fast")},
      {Named("ne"), Named("sw")},
      {Single(motion, meaning::testing::RampGrid("s", true)),
       Single(motion, meaning::testing::BumpGrid({"t"}, {0.4}, 0.2))},
  };
  for (const auto &[f, g] : pairs) {
    const double d1 = meaning::testing::SupDistance(ApplyNot(ApplyAnd(f, g)),
                                                    ApplyOr(ApplyNot(f), ApplyNot(g)));
    const double d2 = meaning::testing::SupDistance(ApplyNot(ApplyOr(f, g)),
                                                    ApplyAnd(ApplyNot(f), ApplyNot(g)));
    c.Expect(d1 <= kDeMorganTolerance, "not(and) vs or(not) off by " + Num(d1));
    c.Expect(d2 <= kDeMorganTolerance, "not(or) vs and(not) off by " + Num(d2));
  }

  // Direct sums act factor by factor.
  const Region x = Single(Ctx("quickness"), meaning::testing::BumpGrid({"quickness"}, {0.4}, 0.2));
  const Region y = Single(Ctx("weight"), meaning::testing::RampGrid("weight", false));
  const std::vector<std::pair<MeaningOperator, MeaningOperator>> ops = {
      {Word("fast"), Word("heavy")},
      {MakeHedge("very", {"quickness"}), MakeShift("lighter", "weight", -0.2)},
  };
  for (const auto &[a, b] : ops) {
    const Region lhs = Apply(MakeDirectSum({a, b}), DirectSumRegions(x, y));
    const Region rhs = DirectSumRegions(Apply(a, x), Apply(b, y));
    c.Expect(SameSamples(lhs, rhs), "(" + a.name() + "+" + b.name() + ") differs on X+Y");
  }
}

void WeightedProduct(Check &c) {
  const std::vector<std::vector<double>> alphas = {{0.3, 0.7}, {1.0, 2.0}, {0.5, 0.25, 1.0}};
  for (const auto &a : alphas) {
    for (std::size_t zero = 0; zero < a.size(); ++zero) {
      std::vector<double> v(a.size(), 0.8);
      v[zero] = 0.0;
      c.Expect(CombineFactors(v, a) == 0.0, "a zero factor does not annihilate");
    }
  }
  for (int k = 1; k <= 9; ++k) {
    const double x = k / 10.0;
    // Unit law: a factor of 1 changes nothing.
    const std::vector<double> v1 = {x, 1.0}, a1 = {0.7, 0.4};
    const std::vector<double> v0 = {x}, a0 = {0.7};
    c.Expect(CombineFactors(v1, a1) == CombineFactors(v0, a0), "unit law at " + Num(x));
    // Level sets: equal memberships with exponents summing to one.
    const std::vector<double> v3 = {x, x, x}, a3 = {0.2, 0.3, 0.5};
    const std::vector<double> v2 = {x, x}, a2 = {0.5, 0.5};
    c.Expect(CombineFactors(v3, a3) == x, "level set (3 factors) at " + Num(x));
    c.Expect(CombineFactors(v2, a2) == x, "level set (2 factors) at " + Num(x));
  }
  // Unit law on regions: a constant-one factor leaves every sample unchanged.
  const Context vehicle = Ctx("vehicle");
  const Region base = Single(vehicle, meaning::testing::BumpGrid({"quickness"}, {0.6}, 0.15));
  const Region with_one(vehicle, {base.factors()[0], Factor{MembershipGrid::Constant({"weight"}, 1.0), 0.5}});
  c.Expect(meaning::testing::SupDistance(base, with_one) == 0.0, "unit factor changes samples");

  // Adding an axis with renormalized exponents: every sample stays at or above
  // min_i m_i ^ (sum alpha) = min_i m_i.
  const Context ctx("three", {"s", "t", "weight"});
  const std::vector<Factor> factors = {
      {meaning::testing::RampGrid("s", true, 33), 1.0},
      {meaning::testing::BumpGrid({"t"}, {0.3}, 0.2, 33), 1.0},
      {meaning::testing::BumpGrid({"weight"}, {0.7}, 0.25, 33), 0.5},
  };
  const Region grown = Region::Normalized(ctx, factors);
  const auto coords = meaning::testing::LatticeCoords(33);
  int below = 0;
  for (double s : coords) {
    for (double t : coords) {
      for (double w : coords) {
        const std::map<AxisId, double> at = {{"s", s}, {"t", t}, {"weight", w}};
        double lo = 1.0;
        for (const auto &f : grown.factors()) {
          lo = std::min(lo, f.grid.Sample(std::vector<double>{at.at(f.grid.axes()[0])}));
        }
        const double bound = std::pow(lo, grown.AlphaSum());
        if (MembershipAt(grown, at) < bound - kProductSlack) ++below;
      }
    }
  }
  c.Expect(std::abs(grown.AlphaSum() - 1.0) < 1e-12, "exponents not renormalized");
  c.Expect(below == 0, std::to_string(below) + " samples below the min-factor bound");
}

void AxisExpansion(Check &c) {
  const Axis *axis = Seed()->FindAxis("quickness");
  c.Expect(axis && axis->reference, "quickness is not a derived axis");
  if (!axis || !axis->reference) return;
  const Region paced = Apply(Word("moderately-paced"), Region(Ctx("quickness")));
  const Region expanded = ExpandAxis(paced, *axis);
  const auto coords = meaning::testing::LatticeCoords(64);
  double worst = 0.0;
  for (double s : coords) {
    for (double t : coords) {
      // Closed forms of the seed definitions: fast(s, t) is a clamped
      // diagonal ramp, moderately-paced a bump at 0.5 of width 0.15.
      const double q = std::clamp((s - t + 1.0) / 2.0, 0.0, 1.0);
      const double want = std::exp(-(q - 0.5) * (q - 0.5) / (2.0 * 0.15 * 0.15));
      const double got = MembershipAt(expanded, {{"s", s}, {"t", t}});
      worst = std::max(worst, std::abs(want - got));
    }
  }
  c.Note("max error " + Num(worst));
  c.Expect(worst <= kExpansionTolerance, "expansion off by " + Num(worst));
}

void FigureFlags(Check &c) {
  const Region q(Ctx("quickness"));
  const Region both = CombineRegions(ConjunctionKind::kAnd, {Named("slow"), Named("fast")});
  const auto r_and = Evaluate({.source = q, .result = both});
  const double peak = ComputeStats(both, 0.0).max_membership;
  c.Note("and peak " + Num(peak));
  c.Expect(r_and.Has(Flag::kContradiction), "and(slow, fast) not flagged contradictory");
  c.Expect(std::abs(peak - kContradictionPeak) <= kContradictionTolerance,
           "and(slow, fast) peaks at " + Num(peak));

  const Region either = CombineRegions(ConjunctionKind::kOr, {Named("slow"), Named("fast")});
  c.Expect(Evaluate({.source = q, .result = either}).Has(Flag::kVacuous),
           "or(slow, fast) not flagged vacuous");

  {
    Session s(Seed());
    Say(s, "stand still");
    const auto o = Say(s, "stand still faster");
    c.Expect(o.flags.count(Flag::kNoChange) > 0, "'stand still faster' lacks no_change");
  }
  {
    Session s(Seed());
    const auto o = Say(s, "walk faster");
    c.Expect(o.action == Action::kAccepted && o.flags.empty(),
             "'walk faster' flagged: " + Digest(o));
  }
  {
    Session s(Seed());
    Say(s, "robot is ne");
    const auto o = Say(s, "it is not sw");
    c.Expect(o.flags.count(Flag::kVaguenessIncrease) > 0, "NE then except-SW lacks vagueness");
  }
  {
    Session s(Seed());
    Say(s, "robot is ne");
    const auto o = Say(s, "forget everything it is not sw");
    c.Expect(o.action == Action::kAccepted && o.flags.count(Flag::kVaguenessIncrease) == 0,
             "reset phrase did not suppress vagueness: " + Digest(o));
  }
}

void ButContract(Check &c) {
  Session s(Seed());
  Say(s, "robot is ne");
  const Region before = s.state().hierarchy.Find("obj:robot")->region;
  const auto o = Say(s, "it is very ne but sw");
  c.Expect(o.action == Action::kAccepted, "'but' phrase not accepted: " + Digest(o));
  const auto *node = s.state().hierarchy.Find("obj:robot/but");
  c.Expect(node != nullptr, "no obj:robot/but context");
  if (node) {
    const Region expected = Apply(Word("sw"), before);
    c.Expect(node->region.factors() == expected.factors(),
             "second conjunct differs from sw applied to the earlier region");
  }

  const PhraseOperator first{{MakeHedge("very"), Word("ne")}, Ctx("space")};
  const PhraseOperator second{{Word("sw")}, Ctx("space")};
  const Region src = Single(Ctx("space"), meaning::testing::BumpGrid({"east", "north"}, {0.6, 0.4}, 0.2));
  const auto [a, b] = ApplyBut(src, first, second);
  c.Expect(a.factors() == ApplyPhrase(first, src).factors(), "first conjunct changed");
  c.Expect(b.factors() == ApplyPhrase(second, src).factors(),
           "second conjunct not bit-identical");
}

void Effector(Check &c) {
  Session s(Seed());
  const auto fast = Say(s, "drive fast");
  const auto cmd = fast.chosen ? fast.chosen->report.effector_command : std::nullopt;
  c.Expect(cmd.has_value(), "'drive fast' gave no command");
  if (cmd) {
    c.Note(cmd->axis + "=" + Num(cmd->value));
    c.Expect(cmd->axis == "drive_speed" && cmd->value >= kTopQuartile && cmd->value <= 1.0,
             "command " + cmd->axis + "=" + Num(cmd->value));
    const auto runs = ExtractEffector(fast.chosen->region, "drive_speed").runs;
    c.Expect(runs.size() == 1, std::to_string(runs.size()) + " level-set runs");
  }
  const auto split = Say(s, "drive very fast or very slowly");
  c.Expect(split.action == Action::kClarificationRequested &&
               split.flags.count(Flag::kNeedsClarification) > 0,
           "split command not sent back: " + Digest(split));
  const auto cond = Say(s, "if drive very fast or very slowly");
  const bool command = cond.chosen && cond.chosen->report.effector_command.has_value();
  c.Expect(cond.action == Action::kAccepted && !command &&
               cond.flags.count(Flag::kNeedsClarification) == 0,
           "conditional form: " + Digest(cond));
}

void Polysemy(Check &c) {
  Session s(Seed());
  const auto o = Say(s, "bank is deeper");
  c.Expect(o.action == Action::kAccepted, "homonym: " + Digest(o));
  c.Expect(o.chosen && o.chosen->context_id == "obj:bank#river",
           "homonym resolved to " + (o.chosen ? o.chosen->context_id : std::string("nothing")));
  int valid = 0;
  for (const auto &cand : o.candidates) valid += cand.error ? 0 : 1;
  c.Expect(o.candidates.size() == 2 && valid == 1,
           "expected one of two readings to survive, got " + std::to_string(valid));
  c.Expect(Seed()->Lookup("quick").size() == 1, "quick keeps several senses");
  Session m(Seed());
  const auto q = Say(m, "car is quick");
  c.Expect(q.candidates.size() == 1 && q.action == Action::kAccepted,
           "merged sense: " + std::to_string(q.candidates.size()) + " candidates");
}

void AbstractionOracle(Check &c) {
  struct Fixture {
    std::string name;
    std::vector<MeaningOperator> b;
    std::vector<std::vector<MeaningOperator>> family;
    std::vector<AxisId> y;
    AbstractionParams params;
    std::vector<Region> probes;
    bool expected;
  };
  const std::vector<AxisId> q = {"quickness"};
  const Context space = Ctx("space");
  std::vector<Region> separable;
  for (double ce : {0.3, 0.7}) {
    for (double cn : {0.2, 0.6}) {
      separable.push_back(Region(space, {Factor{meaning::testing::BumpGrid({"east"}, {ce}, 0.1), 1.0},
                                         Factor{meaning::testing::BumpGrid({"north"}, {cn}, 0.1), 1.0}}));
    }
  }
  separable.push_back(Region(space, {Factor{meaning::testing::RampGrid("east", true), 1.0},
                                     Factor{meaning::testing::RampGrid("north", false), 1.0}}));
  auto bump = [&](double center) {
    return MakeProjection("bump", meaning::testing::BumpGrid(q, {center}, 0.1));
  };
  const std::vector<Fixture> fixtures = {
      {"exact-commuting",
       {MakeShift("east-part", "east", 0.2)},
       {{MakeDirectSum({MakeShift("e", "east", 0.2), MakeShift("n", "north", 0.1)})}},
       {"east"},
       {0.05, 0.05, 0.0},
       separable,
       true},
      {"hedge-vs-identity",
       {MakeHedge("identity")},
       {{MakeHedge("very"), MakeHedge("not")}, {MakeHedge("very")}},
       q,
       {0.05, 0.05, 0.0},
       SmoothProbes(q),
       false},
      {"delta-shift",
       {bump(0.5)},
       {{bump(0.525)}},
       q,
       {0.05, 0.05, 0.0},
       SmoothProbes(q),
       true},
  };
  for (const auto &f : fixtures) {
    const auto engine = IsAbstracting(f.b, f.family, f.y, f.params, f.probes);
    const auto oracle = meaning::testing::AbstractionOracle(f.b, f.family, f.y, f.params.delta,
                                                            f.params.epsilon, f.probes);
    c.Note(f.name + (oracle.holds ? " holds " : " fails ") + Num(oracle.worst));
    c.Expect(engine.holds == oracle.holds, f.name + ": engine and oracle disagree");
    c.Expect(std::abs(engine.worst_residual - oracle.worst) <= kOracleResidualTolerance,
             f.name + ": residual " + Num(engine.worst_residual) + " vs " + Num(oracle.worst));
    c.Expect(oracle.holds == f.expected, f.name + ": oracle verdict unexpected");
  }
}

void DescribeWithWords(Check &c) {
  const auto toy = meaning::testing::MakeRelocationToy();
  const auto result = Describe(toy.problem);
  c.Expect(result.goal.membership >= kDescribeMembership,
           "goal membership " + Num(result.goal.membership));
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    c.Expect(result.trace[i] > result.trace[i - 1], "goal-mean trace not increasing");
  }
  c.Expect(!result.refinements.empty(), "no refinement step");
  for (const auto &step : result.refinements) {
    if (step.replacement.empty()) continue;
    std::vector<MeaningOperator> seq;
    for (const auto &n : step.replacement) seq.push_back(toy.Op(n));
    const auto v = IsAbstracting({toy.Op(step.element)}, {seq}, toy.problem.final_axes,
                                 toy.problem.params, SmoothProbes(toy.problem.final_axes));
    c.Expect(v.holds, step.element + " refinement fails the abstraction check, residual " +
                          Num(v.worst_residual));
  }
  std::string names;
  for (const auto &n : result.Names()) names += (names.empty() ? "" : ",") + n;
  c.Note(names + " membership " + Num(result.goal.membership) + ", visited " +
         std::to_string(result.visited));
  const long exhaustive = ExhaustiveCount(toy.pool.size(), toy.problem.max_depth);
  c.Expect(result.visited < exhaustive, "visited " + std::to_string(result.visited) +
                                            " of " + std::to_string(exhaustive));
  const auto best = meaning::testing::ExhaustiveDescribe(toy.problem, 2, -1);
  c.Expect(result.goal.mean >= best.mean - 1e-3,
           "describe mean " + Num(result.goal.mean) + " below exhaustive " + Num(best.mean));

  const auto slow = DescribeOwnConcept("slow", *Seed());
  const std::vector<std::string> want = {"not", "fast"};
  c.Expect(slow.Names() == want, "slow described as something else");
}

void Persistence(Check &c) {
  const Lexicon &seed = *Seed();
  const Json doc = LexiconToJson(seed);
  const Lexicon back = LexiconFromJson(Json::parse(doc.dump()));
  c.Expect(back == seed, "lexicon round-trip changed the lexicon");
  c.Expect(LexiconToJson(back).dump() == doc.dump(), "lexicon document not stable");

  Session s(Seed());
  for (const char *p : {"robot is ne", "it is not sw", "drive fast", "bank is deeper",
                        "walk very fast", "stand still faster"}) {
    Say(s, p);
  }
  s.ReinterpretWindow(2, 2);
  const std::string text = SessionToJson(s).dump();
  Session restored = SessionFromJson(Json::parse(text), Seed());
  c.Expect(restored.state() == s.state(), "session state changed on reload");
  c.Expect(restored.version() == s.version(), "session version changed on reload");
  c.Expect(restored.history().size() == s.history().size(), "history length changed");
  c.Expect(SessionToJson(restored).dump() == text, "session document not stable");
  c.Expect(Digest(restored.Interpret("car is quick")) == Digest(s.Interpret("car is quick")),
           "restored session diverges");

  service::Engine engine;
  engine.lexicon = Seed();
  engine.lexicon_source = "seed";
  for (const char *name : {"no_change.txt", "vagueness.txt", "effector.txt", "but.txt"}) {
    const auto sc = service::LoadScenario(std::string(MEANING_SCENARIO_DIR) + "/" + name);
    const auto r1 = service::RunScenario(sc, engine);
    const auto r2 = service::RunScenario(sc, engine);
    c.Expect(r1.text == r2.text, std::string(name) + " report differs between runs");
    c.Expect(r1.passed, std::string(name) + " scenario fails");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check &)>>> criteria = {
      {"operator-laws", OperatorLaws},
      {"weighted-product", WeightedProduct},
      {"axis-expansion", AxisExpansion},
      {"figure-flags", FigureFlags},
      {"but-contract", ButContract},
      {"effector", Effector},
      {"polysemy", Polysemy},
      {"abstraction-oracle", AbstractionOracle},
      {"describe-with-words", DescribeWithWords},
      {"persistence", Persistence},
  };
  int failed = 0;
  for (const auto &[name, run] : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(c);
    } catch (const std::exception &e) {
      c.Expect(false, std::string("threw: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (c.ok() ? "PASS " : "FAIL ") << name << " (" << c.checks() << " checks, "
         << Num(secs) << "s)";
    for (const auto &n : c.notes()) line << " [" << n << "]";
    if (!c.ok()) {
      line << ": " << c.failures().front();
      if (c.failures().size() > 1) line << " (+" << c.failures().size() - 1 << " more)";
      ++failed;
    }
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? "acceptance: FAIL (" : "acceptance: PASS (") << failed << " of "
            << criteria.size() << " failed)" << std::endl;
  return failed ? 1 : 0;
}
