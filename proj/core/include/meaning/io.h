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

// JSON documents for regions, operators, lexicons, configs and sessions, and
// graymap export.
//
// Readers take the JSON path of the value they parse ("$" at the root) and
// throw SchemaError carrying the path of the offending field. Doubles are
// written in shortest round-trip form, so save/load is bit-exact.

#ifndef MEANING_IO_H_
#define MEANING_IO_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "meaning/abstraction.h"
#include "meaning/comprehension.h"
#include "meaning/interpreter.h"
#include "meaning/lexicon.h"
#include "meaning/operators.h"
#include "meaning/region.h"

namespace meaning {

using Json = nlohmann::json;

inline constexpr int kLexiconFormatVersion = 1;
inline constexpr int kSessionFormatVersion = 1;

Json ContextToJson(const Context &context);
Context ContextFromJson(const Json &j, const std::string &path = "$");

// {"axes", "resolution", "values", "source_points"?}
Json GridToJson(const MembershipGrid &grid);
MembershipGrid GridFromJson(const Json &j, const std::string &path = "$");

// {"context", "factors": [{"axes", "resolution", "values", "alpha"}], "label"}
Json RegionToJson(const Region &region);
Region RegionFromJson(const Json &j, const std::string &path = "$");

Json AxisToJson(const Axis &axis);
Axis AxisFromJson(const Json &j, const std::string &path = "$");

// Operators carry "name", "body" and, for blocks, "internal_context",
// "parameter_region", "derivation" and "parameters". A block document without
// "body" is derived on load (hand-written lexicons); "base" supplies the
// default region of an actualizing block.
Json OperatorToJson(const MeaningOperator &op);
MeaningOperator OperatorFromJson(const Json &j, const std::string &path = "$");

Json LexiconToJson(const Lexicon &lexicon);
Lexicon LexiconFromJson(const Json &j, const std::string &path = "$");

Json ConfigToJson(const ComprehensionConfig &config);
// Missing fields keep their defaults; unknown fields are rejected.
ComprehensionConfig ConfigFromJson(const Json &j, const std::string &path = "$",
                                   const ComprehensionConfig &base = {});

Json ReportToJson(const ComprehensionReport &report);
ComprehensionReport ReportFromJson(const Json &j, const std::string &path = "$");

Json CandidateToJson(const ParseCandidate &candidate);
ParseCandidate CandidateFromJson(const Json &j, const std::string &path = "$");

Json StateToJson(const SessionState &state);
SessionState StateFromJson(const Json &j, const std::string &path = "$");

Json OutcomeToJson(const InterpretationOutcome &outcome);
InterpretationOutcome OutcomeFromJson(const Json &j, const std::string &path = "$");

// {"format", "config", "version", "state", "history"}; the lexicon is not
// included.
Json SessionToJson(const Session &session);
// Restores into a session built over `lexicon`.
Session SessionFromJson(const Json &j, std::shared_ptr<const Lexicon> lexicon,
                        const std::string &path = "$");

Json DescribeResultToJson(const DescribeResult &result);

Json ReadJsonFile(const std::filesystem::path &path);
void WriteJsonFile(const std::filesystem::path &path, const Json &j);

Lexicon LoadLexicon(const std::filesystem::path &path);
void SaveLexicon(const Lexicon &lexicon, const std::filesystem::path &path);

struct Heatmap {
  std::vector<AxisId> axes;
  int width = 0;   // nodes along the last axis
  int height = 0;  // nodes along the first axis of a 2D map, else 1
  // Row-major, first axis slowest.
  std::vector<double> values;
};

// Samples a region over its covered axes (or `axes` when given). Throws
// Error(kInvalidArgument) for more than two axes.
Heatmap MakeHeatmap(const Region &region, const std::vector<AxisId> &axes = {},
                    int resolution = MembershipGrid::kDefaultResolution);

// Plain graymap, memberships scaled to 0..255. For 2D maps the first axis
// runs down the rows with its high end at the top.
std::string ToGraymap(const Heatmap &map);
Json HeatmapToJson(const Heatmap &map);

// Writes `<stem>.pgm` and `<stem>.json` (axes, resolution, stats).
void ExportRegion(const Region &region, const std::filesystem::path &pgm_path,
                  int resolution = MembershipGrid::kDefaultResolution);

}  // namespace meaning

#endif  // MEANING_IO_H_
