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

// Batch scenarios: phrases with expectations, one directive per line.
//
//   # comment
//   set <config-key> <value>
//   > <phrase>
//   replay <spare-limit> <window>
//   expect action <accepted|retried_spare_context|clarification_requested>
//   expect flags [<flag> ...]          exact set of outcome flags
//   expect flag <flag>
//   expect no-flag <flag>
//   expect failing-check <flag>
//   expect structure <rendered structure>
//   expect context <context id>
//   expect effector <axis> <value> <tolerance>
//   expect no-effector
//   expect peak <context> <axis> <value> <tolerance>
//   expect membership <context> <axis>=<v>[,<axis>=<v>...] <value> <tolerance>
//
// Expectations apply to the latest phrase or replay outcome.

#ifndef MEANING_TOOLS_SCENARIO_H_
#define MEANING_TOOLS_SCENARIO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "service/service.h"

namespace meaning::service {

struct ScenarioStep {
  enum class Kind { kSet, kPhrase, kReplay, kExpect };
  Kind kind = Kind::kPhrase;
  int line = 0;
  // kSet: key, value. kPhrase: phrase. kReplay: limit, window.
  // kExpect: what, then arguments.
  std::vector<std::string> args;
};

struct Scenario {
  std::string name;
  std::vector<ScenarioStep> steps;
};

// Throws Error(kParseError) with "<name>:<line>: ..." messages.
Scenario ParseScenario(const std::string &text, const std::string &name);
Scenario LoadScenario(const std::filesystem::path &path);

struct ScenarioReport {
  bool passed = true;
  int checks = 0;
  int failures = 0;
  std::string text;
};

// Runs the scenario in a fresh session. The report text depends only on the
// scenario and the engine.
ScenarioReport RunScenario(const Scenario &scenario, const Engine &engine);

}  // namespace meaning::service

#endif  // MEANING_TOOLS_SCENARIO_H_
