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

// Shared engine path of the REPL, the scenario runner and the HTTP API.

#ifndef MEANING_TOOLS_SERVICE_H_
#define MEANING_TOOLS_SERVICE_H_

#include <memory>
#include <optional>
#include <string>

#include "meaning/interpreter.h"
#include "meaning/io.h"

namespace meaning::service {

inline constexpr const char *kLexiconEnv = "MEANING_LEXICON";

struct EngineOptions {
  // Empty: $MEANING_LEXICON, then the built-in seed lexicon.
  std::string lexicon_path;
  std::string config_path;
  int grid_resolution = MembershipGrid::kDefaultResolution;
};

struct Engine {
  std::shared_ptr<const Lexicon> lexicon;
  ComprehensionConfig config;
  // "seed" or the lexicon file path.
  std::string lexicon_source;
  int grid_resolution = MembershipGrid::kDefaultResolution;
};

Engine LoadEngine(const EngineOptions &options);

// Region shown for `name`: a session context, then a named lexicon region,
// then an axis (its value ramp), then a lexicon context (unspecified).
std::optional<Region> ResolveDisplayRegion(const Session &session,
                                           const std::string &name);

// Ten-character density ramp, one row per node of the first axis (high end
// on top).
std::string AsciiHeatmap(const Heatmap &map);

// Response body for a submitted phrase.
Json OutcomeBody(const InterpretationOutcome &outcome, const Lexicon &lexicon);

// Human-readable outcome: action, structure, flags, parameters, effector
// command, clarification.
std::string RenderOutcome(const InterpretationOutcome &outcome,
                          const Lexicon &lexicon);

}  // namespace meaning::service

#endif  // MEANING_TOOLS_SERVICE_H_
