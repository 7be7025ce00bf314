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

#include "meaning/abstraction.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "meaning/error.h"

namespace meaning {

namespace {

int ResolutionOf(const Region &a, const Region &b) {
  int res = 0;
  for (const auto &f : a.factors()) res = std::max(res, f.grid.resolution());
  for (const auto &f : b.factors()) res = std::max(res, f.grid.resolution());
  return res == 0 ? MembershipGrid::kDefaultResolution : res;
}

Region OnAxes(const Region &x, const std::vector<AxisId> &axes) {
  for (const auto &a : axes) {
    if (!x.context().Contains(a)) {
      throw ContextMismatchError("probe context '" + x.context().id() +
                                 "' lacks axis '" + a + "'");
    }
  }
  return Project(x, axes);
}

}  // namespace

Region Blur(const Region &region, double radius) {
  if (radius < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "blur radius must be >= 0");
  }
  if (radius == 0.0) return region;
  auto factors = region.factors();
  for (auto &f : factors) f.grid = BoxFilter(f.grid, radius);
  return region.WithFactors(std::move(factors));
}

MeaningOperator Restrict(const MeaningOperator &op,
                         const std::vector<AxisId> &subspace) {
  if (subspace.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot restrict to an empty subspace");
  }
  const auto ext = op.ExternalAxes();
  const std::set<AxisId> want(subspace.begin(), subspace.end());
  const std::set<AxisId> have(ext.begin(), ext.end());
  if (!ext.empty()) {
    for (const auto &a : subspace) {
      if (!have.count(a)) {
        throw ContextMismatchError("axis '" + a + "' is outside operator '" +
                                   op.name() + "'");
      }
    }
    if (want == have) return op;
  }
  if (const auto *sum = std::get_if<DirectSum>(&op.body())) {
    std::vector<MeaningOperator> kept;
    for (const auto &part : sum->parts) {
      bool inside = true;
      for (const auto &a : part.ExternalAxes()) inside &= want.count(a) > 0;
      if (inside) kept.push_back(part);
    }
    if (kept.size() == 1) return kept.front();
    if (!kept.empty()) return MakeDirectSum(std::move(kept));
  }
  return MeaningOperator(
      Restriction{std::make_shared<const MeaningOperator>(op), subspace},
      "restrict(" + op.name() + ")");
}

std::vector<Region> SmoothProbes(const std::vector<AxisId> &axes, int res) {
  if (axes.empty() || axes.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument, "probes span one or two axes");
  }
  const Context ctx("probe", axes);
  auto single = [&](MembershipGrid g, const char *label) {
    return Region(ctx, {Factor{std::move(g), 1.0}}, label);
  };
  auto bump = [&](double c) {
    return MembershipGrid::Tabulate(axes, res, [c](std::span<const double> x) {
      double d2 = 0.0;
      for (double v : x) d2 += (v - c) * (v - c);
      return std::exp(-d2 / (2.0 * 0.1 * 0.1));
    });
  };
  std::vector<Region> out;
  out.push_back(single(MembershipGrid::Constant(axes, 0.0, res), "zero"));
  out.push_back(single(MembershipGrid::Constant(axes, 0.5, res), "half"));
  out.push_back(single(MembershipGrid::Constant(axes, 1.0, res), "one"));
  out.push_back(single(MembershipGrid::Tabulate(
                           axes, res, [](std::span<const double> x) { return x[0]; }),
                       "ramp-up"));
  out.push_back(single(MembershipGrid::Tabulate(
                           axes, res,
                           [](std::span<const double> x) { return 1.0 - x[0]; }),
                       "ramp-down"));
  out.push_back(single(bump(0.3), "bump-0.3"));
  out.push_back(single(bump(0.7), "bump-0.7"));
  return out;
}

std::vector<Region> DefaultProbes(const std::vector<AxisId> &axes, int res) {
  auto out = SmoothProbes(axes, res);
  const int cell = std::max(1, res / 8);
  out.push_back(Region(
      out.front().context(),
      {Factor{MembershipGrid::Tabulate(
                  axes, res,
                  [res, cell](std::span<const double> x) {
                    int parity = 0;
                    for (double v : x) {
                      parity += static_cast<int>(std::lround(v * (res - 1))) / cell;
                    }
                    return parity % 2 == 0 ? 1.0 : 0.0;
                  }),
              1.0}},
      "checker"));
  return out;
}

Region ApplyComposition(const std::vector<MeaningOperator> &composition,
                        const Region &region) {
  Region r = region;
  for (auto it = composition.rbegin(); it != composition.rend(); ++it) {
    r = Apply(*it, r);
  }
  return r;
}

AbstractionVerdict IsAbstracting(
    const std::vector<MeaningOperator> &b,
    const std::vector<std::vector<MeaningOperator>> &family,
    const std::vector<AxisId> &y_axes, const AbstractionParams &params,
    const std::vector<Region> &probes) {
  if (probes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "probe set is empty");
  }
  if (y_axes.empty() || y_axes.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument, "Y spans one or two axes");
  }
  for (const auto &op : b) {
    for (const auto &a : op.ExternalAxes()) {
      if (std::find(y_axes.begin(), y_axes.end(), a) == y_axes.end()) {
        throw ContextMismatchError("operator '" + op.name() + "' acts on '" + a +
                                   "' outside Y");
      }
    }
  }
  // Shift grid: k * delta / 4 for |k| <= 3, which stays strictly inside the
  // delta ball.
  const double step = params.delta / 4.0;
  std::vector<std::vector<double>> shifts;
  for (int i = -3; i <= 3; ++i) {
    if (y_axes.size() == 1) {
      shifts.push_back({i * step});
      continue;
    }
    for (int j = -3; j <= 3; ++j) shifts.push_back({i * step, j * step});
  }

  AbstractionVerdict verdict;
  verdict.worst_residual = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const Region &x = probes[p];
      const Region lhs = ApplyComposition(b, OnAxes(x, y_axes));
      const Region rhs = OnAxes(ApplyComposition(family[i], x), y_axes);
      const int res = ResolutionOf(lhs, rhs);
      const auto l = SampleLattice(lhs, y_axes, res);
      double best = std::numeric_limits<double>::infinity();
      std::vector<double> best_shift;
      for (const auto &dy : shifts) {
        const auto r = SampleLattice(rhs, y_axes, res, dy);
        double sup = 0.0;
        for (std::size_t k = 0; k < l.size(); ++k) {
          sup = std::max(sup, std::abs(l[k] - r[k]));
          if (sup >= best) break;
        }
        if (sup < best) {
          best = sup;
          best_shift = dy;
        }
      }
      ++verdict.probes_checked;
      if (best > verdict.worst_residual || verdict.family_member < 0) {
        verdict.worst_residual = best;
        verdict.worst_shift = best_shift;
        verdict.family_member = static_cast<int>(i);
        verdict.probe = static_cast<int>(p);
      }
    }
  }
  verdict.holds = verdict.worst_residual < params.epsilon;
  return verdict;
}

}  // namespace meaning
