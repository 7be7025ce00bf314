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

// Shared test fixtures and independent oracles.

#ifndef MEANING_TESTS_FIXTURES_H_
#define MEANING_TESTS_FIXTURES_H_

#include <functional>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <vector>

#include "meaning/abstraction.h"
#include "meaning/error.h"
#include "meaning/lexicon.h"
#include "meaning/region.h"

namespace meaning::testing {

// Seed lexicon built once per process.
std::shared_ptr<const Lexicon> Seed();

// Gaussian bump exp(-|x - c|^2 / 2 sigma^2) over one or two axes.
MembershipGrid BumpGrid(const std::vector<AxisId> &axes, const std::vector<double> &center,
                        double sigma, int resolution = MembershipGrid::kDefaultResolution);
// Rising (or falling) ramp along one axis.
MembershipGrid RampGrid(const AxisId &axis, bool rising,
                        int resolution = MembershipGrid::kDefaultResolution);
Region Single(const Context &context, MembershipGrid grid, double alpha = 1.0);

// Relocation toy: an object in the south-west corner of {east, north} should
// end up in the north-east. Level 1 holds "relocate" and a distractor,
// level 0 the four unit moves.
struct RelocationToy {
  Context space;
  Region source;
  Region target;
  std::vector<PoolEntry> pool;
  DescribeProblem problem;
  const MeaningOperator &Op(const std::string &name) const;
};
RelocationToy MakeRelocationToy();

// Lattice coordinates k / (res - 1).
std::vector<double> LatticeCoords(int resolution);

// Independent is-abstracting check: for each family member and probe, walks
// the shift box {k delta / 4 : |k| <= 3} and every lattice node, evaluating
// memberships point by point.
struct OracleVerdict {
  bool holds = false;
  double worst = 0.0;
};
OracleVerdict AbstractionOracle(const std::vector<MeaningOperator> &b,
                                const std::vector<std::vector<MeaningOperator>> &family,
                                const std::vector<AxisId> &y_axes, double delta, double epsilon,
                                const std::vector<Region> &probes);

// Goal mean of every pool sequence up to `depth`; the best one.
struct ExhaustiveBest {
  std::vector<std::string> names;
  double mean = 0.0;
  long evaluated = 0;
};
ExhaustiveBest ExhaustiveDescribe(const DescribeProblem &problem, int depth, int level);

// Code of the meaning::Error thrown by `fn`, or nullopt when it returns.
std::optional<ErrorCode> CodeOf(const std::function<void()> &fn);

// Sup distance between two regions on their joint lattice.
double SupDistance(const Region &a, const Region &b);

}  // namespace meaning::testing

#endif  // MEANING_TESTS_FIXTURES_H_
