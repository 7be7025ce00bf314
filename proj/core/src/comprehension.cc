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

#include "meaning/comprehension.h"

#include <algorithm>
#include <cmath>

namespace meaning {

namespace {

constexpr std::pair<Flag, std::string_view> kFlagNames[] = {
    {Flag::kContradiction, "contradiction"},
    {Flag::kVacuous, "vacuous"},
    {Flag::kNoChange, "no_change"},
    {Flag::kVaguenessIncrease, "vagueness_increase"},
    {Flag::kMoodMismatch, "mood_mismatch"},
    {Flag::kNeedsClarification, "needs_clarification"},
};

}  // namespace

std::string_view FlagName(Flag flag) {
  for (const auto &[f, name] : kFlagNames) {
    if (f == flag) return name;
  }
  return "unknown";
}

std::optional<Flag> ParseFlag(std::string_view name) {
  for (const auto &[f, n] : kFlagNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

std::string_view MoodName(Mood mood) {
  switch (mood) {
    case Mood::kImperative:
      return "imperative";
    case Mood::kRealis:
      return "realis";
    case Mood::kConditional:
      return "conditional";
  }
  return "unknown";
}

double CheckContradiction(const Region &result, const ComprehensionConfig &config) {
  if (result.empty()) return 1.0;
  const double max = ComputeStats(result, 0.0).max_membership;
  if (max >= config.contradiction_level) return 1.0;
  return std::clamp(max / config.contradiction_level, 0.0, 1.0);
}

double CheckVacuity(const Region &result, const ComprehensionConfig &config) {
  const double v = ComputeStats(result, config.vacuity_level).coverage_fraction;
  if (v <= config.vacuity_fraction) return 1.0;
  return std::clamp((1.0 - v) / (1.0 - config.vacuity_fraction), 0.0, 1.0);
}

double CheckNoChange(const Region &before, const Region &after,
                     const ComprehensionConfig &config) {
  return RegionDistance(before, after) < config.no_change_distance ? 0.0 : 1.0;
}

double CheckVagueness(const Region &before, const Region &after,
                      bool reset_phrase, const ComprehensionConfig &config) {
  if (reset_phrase) return 1.0;
  const double b = ComputeStats(before, 0.0).mean_membership;
  if (b < config.vagueness_min_before) return 1.0;
  const double a = ComputeStats(after, 0.0).mean_membership;
  if (a <= config.vagueness_ratio * b) return 1.0;
  return std::clamp(b / a, 0.0, 1.0);
}

EffectorResult ExtractEffector(const Region &result, const AxisId &axis,
                               const ComprehensionConfig &config) {
  EffectorResult out;
  const int idx = result.FactorIndexFor(axis);
  if (idx < 0) return out;
  const Factor &f = result.factors()[idx];
  const auto &g = f.grid;
  const int res = g.resolution();
  const int pos = g.axes()[0] == axis ? 0 : 1;
  std::vector<double> profile(res, 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const int node = g.dims() == 1 ? static_cast<int>(k)
                                   : (pos == 0 ? static_cast<int>(k) / res
                                               : static_cast<int>(k) % res);
    const double v = f.alpha == 1.0 ? g.values()[k] : std::pow(g.values()[k], f.alpha);
    profile[node] = std::max(profile[node], v);
  }
  for (int k = 0; k < res; ++k) {
    if (profile[k] < config.effector_level) continue;
    if (!out.runs.empty() && out.runs.back().second == k - 1) {
      out.runs.back().second = k;
    } else {
      out.runs.push_back({k, k});
    }
  }
  if (out.runs.empty()) return out;
  if (out.runs.size() > 1) {
    out.verdict = EffectorVerdict::kClarify;
    return out;
  }
  const auto [lo, hi] = out.runs.front();
  if (static_cast<double>(hi - lo + 1) / res > config.effector_max_width) {
    return out;
  }
  double num = 0.0, den = 0.0;
  for (int k = lo; k <= hi; ++k) {
    num += MembershipGrid::NodeCoord(k, res) * profile[k];
    den += profile[k];
  }
  out.verdict = EffectorVerdict::kCommand;
  out.command = EffectorCommand{axis, num / den};
  return out;
}

double CheckMood(Mood mood, const EffectorResult &effector, bool effector_bound,
                 const ComprehensionConfig &config) {
  if (mood != Mood::kImperative || !effector_bound) return 1.0;
  return effector.verdict == EffectorVerdict::kNone ? config.mood_penalty : 1.0;
}

ComprehensionReport Evaluate(const CheckInput &input,
                             const ComprehensionConfig &config) {
  ComprehensionReport report;
  report.scores[Flag::kContradiction] = CheckContradiction(input.result, config);
  report.scores[Flag::kVacuous] =
      input.result.empty() ? 1.0 : CheckVacuity(input.result, config);
  report.scores[Flag::kNoChange] = CheckNoChange(
      input.change_reference.value_or(input.source), input.result, config);
  report.scores[Flag::kVaguenessIncrease] =
      CheckVagueness(input.source, input.result, input.reset_phrase, config);

  EffectorResult effector;
  bool bound = false;
  if (input.mood == Mood::kImperative) {
    for (const auto &axis : input.effector_axes) {
      if (!input.result.context().Contains(axis)) continue;
      bound = true;
      effector = ExtractEffector(input.result, axis, config);
      break;
    }
  }
  report.scores[Flag::kMoodMismatch] =
      CheckMood(input.mood, effector, bound, config);
  report.scores[Flag::kNeedsClarification] =
      effector.verdict == EffectorVerdict::kClarify ? config.clarification_penalty
                                                    : 1.0;
  if (effector.verdict == EffectorVerdict::kCommand) {
    report.effector_command = effector.command;
  }
  for (const auto &[flag, score] : report.scores) {
    report.aggregate *= score;
    if (score < 1.0) report.flags.insert(flag);
  }
  return report;
}

}  // namespace meaning
