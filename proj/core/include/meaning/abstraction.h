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

// Abstraction: blurring, operator restriction, the abstracting-operator test,
// and describing a goal with a composition of known operators.
//
// Compositions are written outermost first: {not, fast} means not(fast(A)).

#ifndef MEANING_ABSTRACTION_H_
#define MEANING_ABSTRACTION_H_

#include <optional>
#include <string>
#include <vector>

#include "meaning/comprehension.h"
#include "meaning/lexicon.h"
#include "meaning/operators.h"

namespace meaning {

struct AbstractionParams {
  // Largest allowed shift, sup norm on axis coordinates.
  double delta = 0.05;
  // Largest allowed membership residual, sup norm on samples.
  double epsilon = 0.05;
  double blur_radius = 0.0;
};

// Box-filters every factor grid; radius in axis units.
Region Blur(const Region &region, double radius);

// Operator acting only on `subspace`. A direct sum restricted to the axes of
// some of its parts keeps just those parts. Throws on an empty subspace or
// one that leaves the operator's external axes.
MeaningOperator Restrict(const MeaningOperator &op,
                         const std::vector<AxisId> &subspace);

// Structured probe regions over one or two axes: constants 0, 0.5 and 1,
// rising and falling ramps, bumps at 0.3 and 0.7, and a checkerboard.
std::vector<Region> DefaultProbes(const std::vector<AxisId> &axes,
                                  int resolution = MembershipGrid::kDefaultResolution);
// DefaultProbes without the checkerboard.
std::vector<Region> SmoothProbes(const std::vector<AxisId> &axes,
                                 int resolution = MembershipGrid::kDefaultResolution);

// Applies a composition (outermost first).
Region ApplyComposition(const std::vector<MeaningOperator> &composition,
                        const Region &region);

struct AbstractionVerdict {
  bool holds = false;
  // Max over (family member, probe) of the min residual over shifts.
  double worst_residual = 0.0;
  std::vector<double> worst_shift;
  int family_member = -1;
  int probe = -1;
  int probes_checked = 0;
};

// For every family member A_i (a composition) and probe x, looks for a shift
// dy on the grid k * delta / 4, |k| <= 3 per axis of `y_axes`, such that
// sup_y |B(P(x))(y) - P(A_i(x))(y - dy)| < epsilon, where P projects onto
// `y_axes`. Throws ContextMismatchError when B acts outside `y_axes`.
AbstractionVerdict IsAbstracting(const std::vector<MeaningOperator> &b,
                                 const std::vector<std::vector<MeaningOperator>> &family,
                                 const std::vector<AxisId> &y_axes,
                                 const AbstractionParams &params,
                                 const std::vector<Region> &probes);

// Maps a final region to a fuzzy "goal satisfaction degree" on one axis.
//
// Satisfaction against target T is s = |corr(X, T)| / 2 + (1 - mean|X - T|) / 2
// over the lattice samples, averaged over the (result, target) pairs. The
// output is a Gaussian around s of width kMinWidth + kWidthSlope * (1 - s), so
// poorer matches give fuzzier goal regions and the goal mean grows with s.
class GoalTest {
 public:
  static constexpr const char *kGoalAxis = "goal";
  static constexpr double kMinWidth = 0.02;
  static constexpr double kWidthSlope = 0.25;

  explicit GoalTest(std::vector<Region> targets, int resolution = 64);

  const std::vector<Region> &targets() const { return targets_; }

  double Satisfaction(const std::vector<Region> &results) const;
  Region Apply(const std::vector<Region> &results) const;

 private:
  std::vector<Region> targets_;
  int resolution_;
};

struct GoalSummary {
  double mean = 0.0;        // centroid on the goal axis
  double membership = 0.0;  // max membership where goal >= 1 - threshold
  bool met = false;
  double fuzziness = 0.0;   // mean min(v, 1 - v) of the goal samples
};

GoalSummary SummarizeGoal(const Region &goal_region, double goal_threshold);

struct PoolEntry {
  MeaningOperator op;
  int level = 0;
};

struct DescribeProblem {
  // Each source is described by the same composition; targets pair up with
  // sources inside `goal`.
  std::vector<Region> sources;
  std::vector<PoolEntry> pool;
  GoalTest goal{{}};
  // Axes of the final context F.
  std::vector<AxisId> final_axes;
  double goal_threshold = 0.1;
  int beam_width = 4;
  int max_depth = 6;
  AbstractionParams params{0.1, 0.1, 0.0};
  // Probe regions for refinement; empty means SmoothProbes over final_axes.
  std::vector<Region> probes;
};

struct RefinementStep {
  std::string element;
  std::vector<std::string> replacement;  // empty when kept
  double residual = 0.0;
};

struct DescribeResult {
  std::vector<PoolEntry> composition;
  // Goal means of the kept beam path: empty composition, then each extension.
  std::vector<double> trace;
  GoalSummary goal;
  // Before refinement.
  std::vector<PoolEntry> abstract_composition;
  GoalSummary abstract_goal;
  std::vector<RefinementStep> refinements;
  int visited = 0;
  std::vector<std::string> log;

  std::vector<std::string> Names() const;
};

// Greedy beam search over the most abstract pool level, then refinement
// toward level 0. Throws NoDescriptionError when no operator touches the
// final axes or the beam finds no improvement.
DescribeResult Describe(const DescribeProblem &problem);

// Replaces each element of level > 0 by the first (length <= 3, pool order)
// lower-level sequence that passes IsAbstracting against it.
std::vector<PoolEntry> RefineComposition(const std::vector<PoolEntry> &composition,
                                         const DescribeProblem &problem,
                                         std::vector<RefinementStep> *steps,
                                         int *visited);

// Number of pool sequences of length 1..depth.
long ExhaustiveCount(std::size_t pool_size, int depth);

// Pool of every lexicon sense, optionally without the senses of some words.
std::vector<PoolEntry> LexiconPool(const Lexicon &lexicon,
                                   const std::vector<std::string> &exclude_words = {});

// Describes `op` with other operators: sources are the unspecified region and
// a constant 0.5 over op's axes, targets are op applied to them.
DescribeResult DescribeOperator(const MeaningOperator &op,
                                std::vector<PoolEntry> pool);
// DescribeOperator for a lexicon word, its own senses removed from the pool.
DescribeResult DescribeOwnConcept(const std::string &word, const Lexicon &lexicon);
// Words reaching `region` from its unspecified counterpart.
DescribeResult DescribeRegion(const Region &region, const Lexicon &lexicon);

struct FailureCase {
  std::string label;
  Region source;
  std::vector<MeaningOperator> line;  // application order
  Flag check = Flag::kContradiction;
  Mood mood = Mood::kRealis;
};

struct FailureEntry {
  std::string label;
  Flag check = Flag::kContradiction;
  // Line prefix lengths: the longest passing one and the first failing one.
  int last_passing = 0;
  int first_failing = 0;
  std::vector<std::string> passing_description;
  std::vector<std::string> failing_description;
};

// One entry per case whose full line fails its check.
std::vector<FailureEntry> DescribeFailure(const std::vector<FailureCase> &cases,
                                          const Lexicon &lexicon,
                                          const ComprehensionConfig &config = {});

}  // namespace meaning

#endif  // MEANING_ABSTRACTION_H_
