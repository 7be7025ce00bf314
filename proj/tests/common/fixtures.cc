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

#include "common/fixtures.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "meaning/error.h"

namespace meaning::testing {

std::shared_ptr<const Lexicon> Seed() {
  static const auto lexicon = std::make_shared<const Lexicon>(SeedLexicon());
  return lexicon;
}

MembershipGrid BumpGrid(const std::vector<AxisId> &axes, const std::vector<double> &center,
                        double sigma, int resolution) {
  return MembershipGrid::Tabulate(axes, resolution, [&](std::span<const double> x) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - center[i]) * (x[i] - center[i]);
    return std::exp(-d2 / (2.0 * sigma * sigma));
  });
}

MembershipGrid RampGrid(const AxisId &axis, bool rising, int resolution) {
  return MembershipGrid::Tabulate({axis}, resolution, [rising](std::span<const double> x) {
    return rising ? x[0] : 1.0 - x[0];
  });
}

Region Single(const Context &context, MembershipGrid grid, double alpha) {
  return Region(context, {Factor{std::move(grid), alpha}});
}

const MeaningOperator &RelocationToy::Op(const std::string &name) const {
  for (const auto &e : pool) {
    if (e.op.name() == name) return e.op;
  }
  throw std::out_of_range("no toy operator " + name);
}

RelocationToy MakeRelocationToy() {
  RelocationToy toy;
  const std::vector<AxisId> axes = {"east", "north"};
  toy.space = Context("space", axes);
  toy.source = Single(toy.space, BumpGrid(axes, {0.25, 0.25}, 0.15), 1.0).WithLabel("sw");
  toy.target = Single(toy.space, BumpGrid(axes, {0.75, 0.75}, 0.15), 1.0).WithLabel("ne");
  toy.pool = {
      {MeaningOperator(DirectSum{{MakeShift("e", "east", 0.45), MakeShift("n", "north", 0.45)}},
                       "relocate"),
       1},
      {MeaningOperator(DirectSum{{MakeShift("w1", "east", -0.25), MakeShift("w2", "north", 0.25)}},
                       "wander"),
       1},
      {MakeShift("go-north", "north", 0.5), 0},
      {MakeShift("go-east", "east", 0.5), 0},
      {MakeShift("go-south", "north", -0.5), 0},
      {MakeShift("go-west", "east", -0.5), 0},
  };
  toy.problem.sources = {toy.source};
  toy.problem.goal = GoalTest({toy.target});
  toy.problem.final_axes = axes;
  toy.problem.pool = toy.pool;
  return toy;
}

std::vector<double> LatticeCoords(int resolution) {
  std::vector<double> out(resolution);
  for (int k = 0; k < resolution; ++k) out[k] = static_cast<double>(k) / (resolution - 1);
  return out;
}

namespace {

Region Run(const std::vector<MeaningOperator> &ops, Region r) {
  for (std::size_t i = ops.size(); i-- > 0;) r = Apply(ops[i], r);
  return r;
}

int MaxResolution(const Region &a, const Region &b) {
  int res = 0;
  for (const auto *r : {&a, &b}) {
    for (const auto &f : r->factors()) res = std::max(res, f.grid.resolution());
  }
  return res ? res : MembershipGrid::kDefaultResolution;
}

}  // namespace

OracleVerdict AbstractionOracle(const std::vector<MeaningOperator> &b,
                                const std::vector<std::vector<MeaningOperator>> &family,
                                const std::vector<AxisId> &y_axes, double delta, double epsilon,
                                const std::vector<Region> &probes) {
  const bool two = y_axes.size() == 2;
  OracleVerdict out;
  for (const auto &a : family) {
    for (const auto &x : probes) {
      const Region lhs = Run(b, Project(x, y_axes));
      const Region rhs = Project(Run(a, x), y_axes);
      const auto coords = LatticeCoords(MaxResolution(lhs, rhs));
      double best = std::numeric_limits<double>::infinity();
      for (int ki = -3; ki <= 3; ++ki) {
        for (int kj = two ? -3 : 0; kj <= (two ? 3 : 0); ++kj) {
          const double di = ki * delta / 4.0, dj = kj * delta / 4.0;
          double sup = 0.0;
          for (double u : coords) {
            for (std::size_t n = 0; n < (two ? coords.size() : 1); ++n) {
              std::map<AxisId, double> at = {{y_axes[0], u}};
              std::map<AxisId, double> back = {{y_axes[0], std::clamp(u - di, 0.0, 1.0)}};
              if (two) {
                at[y_axes[1]] = coords[n];
                back[y_axes[1]] = std::clamp(coords[n] - dj, 0.0, 1.0);
              }
              sup = std::max(sup, std::abs(MembershipAt(lhs, at) - MembershipAt(rhs, back)));
            }
          }
          best = std::min(best, sup);
        }
      }
      out.worst = std::max(out.worst, best);
    }
  }
  out.holds = out.worst < epsilon;
  return out;
}

ExhaustiveBest ExhaustiveDescribe(const DescribeProblem &problem, int depth, int level) {
  std::vector<const MeaningOperator *> ops;
  for (const auto &e : problem.pool) {
    if (level < 0 || e.level == level) ops.push_back(&e.op);
  }
  ExhaustiveBest best;
  best.mean = -1.0;
  std::vector<std::size_t> idx;
  // Odometer over sequences of length 1..depth.
  for (int len = 1; len <= depth; ++len) {
    idx.assign(len, 0);
    while (true) {
      std::vector<MeaningOperator> seq;
      for (auto i : idx) seq.push_back(*ops[i]);
      try {
        std::vector<Region> results;
        for (const auto &s : problem.sources) results.push_back(Run(seq, s));
        const auto g = SummarizeGoal(problem.goal.Apply(results), problem.goal_threshold);
        ++best.evaluated;
        if (g.mean > best.mean) {
          best.mean = g.mean;
          best.names.clear();
          for (const auto &op : seq) best.names.push_back(op.name());
        }
      } catch (const Error &) {
      }
      int pos = len - 1;
      while (pos >= 0 && ++idx[pos] == ops.size()) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return best;
}

std::optional<ErrorCode> CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return std::nullopt;
}

double SupDistance(const Region &a, const Region &b) {
  const auto j = SampleJoint(a, b);
  double sup = 0.0;
  for (std::size_t i = 0; i < j.a.size(); ++i) sup = std::max(sup, std::abs(j.a[i] - j.b[i]));
  return sup;
}

}  // namespace meaning::testing
