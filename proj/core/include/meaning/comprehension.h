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

// Heuristic comprehension checks on the result of applying a phrase.
// Each check returns a score in [0,1]; 1 means the check passes.

#ifndef MEANING_COMPREHENSION_H_
#define MEANING_COMPREHENSION_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "meaning/region.h"

namespace meaning {

enum class Flag {
  kContradiction,
  kVacuous,
  kNoChange,
  kVaguenessIncrease,
  kMoodMismatch,
  kNeedsClarification,
};

std::string_view FlagName(Flag flag);
std::optional<Flag> ParseFlag(std::string_view name);

enum class Mood { kImperative, kRealis, kConditional };

std::string_view MoodName(Mood mood);

struct ComprehensionConfig {
  double contradiction_level = 0.95;
  double vacuity_level = 0.5;
  double vacuity_fraction = 0.95;
  double no_change_distance = 0.01;
  double vagueness_ratio = 1.5;
  double vagueness_min_before = 0.05;
  double effector_level = 0.8;
  double effector_max_width = 0.25;
  double mood_penalty = 0.5;
  double clarification_penalty = 0.5;
  // Interpreter settings, stored here so one record reproduces a session.
  double threshold = 0.5;
  int spare_limit = 2;

  bool operator==(const ComprehensionConfig &other) const = default;
};

struct EffectorCommand {
  AxisId axis;
  double value = 0.0;

  bool operator==(const EffectorCommand &other) const = default;
};

enum class EffectorVerdict { kNone, kCommand, kClarify };

struct EffectorResult {
  EffectorVerdict verdict = EffectorVerdict::kNone;
  std::optional<EffectorCommand> command;
  // Level-set runs as [first, last] node indices.
  std::vector<std::pair<int, int>> runs;
};

struct ComprehensionReport {
  std::set<Flag> flags;
  std::map<Flag, double> scores;
  double aggregate = 1.0;
  std::optional<EffectorCommand> effector_command;

  bool Has(Flag flag) const { return flags.count(flag) > 0; }
};

double CheckContradiction(const Region &result,
                          const ComprehensionConfig &config = {});
double CheckVacuity(const Region &result, const ComprehensionConfig &config = {});
// Throws ContextMismatchError when the regions live in different contexts.
double CheckNoChange(const Region &before, const Region &after,
                     const ComprehensionConfig &config = {});
double CheckVagueness(const Region &before, const Region &after,
                      bool reset_phrase, const ComprehensionConfig &config = {});

// Level set {membership >= effector_level} on the factor covering `axis`
// (other axes marginalized by max).
EffectorResult ExtractEffector(const Region &result, const AxisId &axis,
                               const ComprehensionConfig &config = {});

// Score for the imperative-with-effector case; 1 for other moods.
double CheckMood(Mood mood, const EffectorResult &effector,
                 bool effector_bound, const ComprehensionConfig &config = {});

struct CheckInput {
  Region source;
  // Region the no-change check compares against (defaults to source).
  std::optional<Region> change_reference;
  Region result;
  Mood mood = Mood::kRealis;
  bool reset_phrase = false;
  std::vector<AxisId> effector_axes;
};

// Runs every check; aggregate is the product of the per-check scores.
ComprehensionReport Evaluate(const CheckInput &input,
                             const ComprehensionConfig &config = {});

}  // namespace meaning

#endif  // MEANING_COMPREHENSION_H_
