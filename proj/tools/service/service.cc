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

#include "service/service.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "meaning/error.h"

namespace meaning::service {

namespace {

std::string Fixed(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string FlagsText(const std::set<Flag> &flags) {
  if (flags.empty()) return "none";
  std::string s;
  for (Flag f : flags) {
    if (!s.empty()) s += ", ";
    s += FlagName(f);
  }
  return s;
}

Json FlagArray(const std::set<Flag> &flags) {
  Json arr = Json::array();
  for (Flag f : flags) arr.push_back(std::string(FlagName(f)));
  return arr;
}

}  // namespace

Engine LoadEngine(const EngineOptions &options) {
  Engine engine;
  engine.grid_resolution = options.grid_resolution;
  if (options.grid_resolution < 2 || options.grid_resolution > 1024) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be in [2, 1024]");
  }
  std::string path = options.lexicon_path;
  if (path.empty()) {
    if (const char *env = std::getenv(kLexiconEnv); env && *env) path = env;
  }
  if (path.empty()) {
    engine.lexicon = std::make_shared<const Lexicon>(SeedLexicon(options.grid_resolution));
    engine.lexicon_source = "seed";
  } else {
    engine.lexicon = std::make_shared<const Lexicon>(LoadLexicon(path));
    engine.lexicon_source = path;
  }
  if (!options.config_path.empty()) {
    engine.config = ConfigFromJson(ReadJsonFile(options.config_path));
  }
  return engine;
}

std::optional<Region> ResolveDisplayRegion(const Session &session,
                                           const std::string &name) {
  if (const auto *node = session.state().hierarchy.Find(name)) return node->region;
  const Lexicon &lex = session.lexicon();
  if (const Region *r = lex.FindRegion(name)) return *r;
  if (lex.FindAxis(name)) {
    const int res = MembershipGrid::kDefaultResolution;
    return Region(Context(name, {name}),
                  {Factor{MembershipGrid::Tabulate(
                              {name}, res, [](std::span<const double> x) { return x[0]; }),
                          1.0}},
                  name);
  }
  if (const Context *c = lex.FindContext(name)) return Region(*c, name);
  return std::nullopt;
}

std::string AsciiHeatmap(const Heatmap &map) {
  static constexpr char kRamp[] = " .:-=+*#%@";
  std::string out;
  for (int row = 0; row < map.height; ++row) {
    const int i = map.height - 1 - row;
    for (int k = 0; k < map.width; ++k) {
      const double v = std::clamp(map.values[static_cast<std::size_t>(i) * map.width + k],
                                  0.0, 1.0);
      out += kRamp[std::min(9, static_cast<int>(v * 10.0))];
    }
    out += '\n';
  }
  return out;
}

Json OutcomeBody(const InterpretationOutcome &outcome, const Lexicon &lexicon) {
  Json body = {{"action", std::string(ActionName(outcome.action))},
               {"digest", Digest(outcome)},
               {"flags", FlagArray(outcome.flags)},
               {"alternatives_kept", outcome.alternatives_kept},
               {"clarification", outcome.clarification},
               {"failing_check", outcome.failing_check
                                     ? Json(std::string(FlagName(*outcome.failing_check)))
                                     : Json(nullptr)},
               {"trace", outcome.trace},
               {"chosen", nullptr}};
  if (const auto &c = outcome.chosen) {
    Json params = Json::array();
    for (const auto &op : c->phrase.line) {
      if (op.parameters().empty()) continue;
      params.push_back({{"operator", op.name()}, {"values", op.parameters()}});
    }
    Json chosen = {{"structure", c->candidate.Describe(lexicon)},
                   {"context_id", c->context_id},
                   {"report", ReportToJson(c->report)},
                   {"parameters", std::move(params)}};
    body["chosen"] = std::move(chosen);
  }
  Json candidates = Json::array();
  for (const auto &ev : outcome.candidates) {
    candidates.push_back({{"index", ev.index},
                          {"structure", ev.structure},
                          {"score", ev.score},
                          {"flags", FlagArray(ev.report.flags)},
                          {"target_contexts", ev.target_contexts},
                          {"error", ev.error ? Json(*ev.error) : Json(nullptr)}});
  }
  body["candidates"] = std::move(candidates);
  return body;
}

std::string RenderOutcome(const InterpretationOutcome &outcome,
                          const Lexicon &lexicon) {
  std::ostringstream os;
  os << ActionName(outcome.action);
  if (const auto &c = outcome.chosen) {
    os << ": " << c->candidate.Describe(lexicon) << "  [" << c->context_id << "]\n";
    os << "  score " << Fixed(c->report.aggregate) << ", flags: "
       << FlagsText(c->report.flags) << "\n";
    for (const auto &op : c->phrase.line) {
      if (op.parameters().empty()) continue;
      os << "  " << op.name() << ":";
      for (const auto &[axis, v] : op.parameters()) os << " " << axis << "=" << Fixed(v);
      os << "\n";
    }
    if (const auto &cmd = c->report.effector_command) {
      os << "  effector: " << cmd->axis << " = " << Fixed(cmd->value) << "\n";
    }
    if (outcome.alternatives_kept > 0) {
      os << "  spare readings kept: " << outcome.alternatives_kept << "\n";
    }
    std::set<Flag> first;
    std::set_difference(outcome.flags.begin(), outcome.flags.end(),
                        c->report.flags.begin(), c->report.flags.end(),
                        std::inserter(first, first.begin()));
    if (!first.empty()) {
      os << "  in the active context: " << FlagsText(first) << "\n";
    }
  } else {
    os << "\n";
    if (!outcome.clarification.empty()) os << "  " << outcome.clarification << "\n";
    if (outcome.failing_check) {
      os << "  failing check: " << FlagName(*outcome.failing_check) << "\n";
    }
  }
  return os.str();
}

}  // namespace meaning::service
