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

// Interpolation of scattered reference points onto membership grids.

#include <algorithm>
#include <cmath>
#include <map>

#include "meaning/error.h"
#include "meaning/region.h"

namespace meaning {

namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

double InterpolateIdw(std::span<const double> x,
                      const std::vector<ReferencePoint> &points, bool falloff,
                      double sigma) {
  double weight_sum = 0.0;
  double value_sum = 0.0;
  double coverage = 0.0;
  for (const auto &p : points) {
    const double d2 = SquaredDistance(x, p.coords);
    if (d2 < 1e-24) return p.membership;
    double w = 1.0 / d2;
    if (falloff) {
      const double g = std::exp(-d2 / (2.0 * sigma * sigma));
      coverage = std::max(coverage, g);
    }
    weight_sum += w;
    value_sum += w * p.membership;
  }
  const double idw = value_sum / weight_sum;
  return falloff ? idw * coverage : idw;
}

double InterpolateLinear(double x, const std::vector<ReferencePoint> &sorted) {
  if (x <= sorted.front().coords[0]) return sorted.front().membership;
  if (x >= sorted.back().coords[0]) return sorted.back().membership;
  auto hi = std::upper_bound(
      sorted.begin(), sorted.end(), x,
      [](double v, const ReferencePoint &p) { return v < p.coords[0]; });
  auto lo = hi - 1;
  const double span = hi->coords[0] - lo->coords[0];
  if (span <= 0.0) return hi->membership;
  const double t = (x - lo->coords[0]) / span;
  return lo->membership * (1.0 - t) + hi->membership * t;
}

}  // namespace

MembershipGrid BuildGrid(std::vector<AxisId> axes,
                         const std::vector<ReferencePoint> &points,
                         const GridOptions &options) {
  if (points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no reference points");
  }
  const int dims = static_cast<int>(axes.size());
  if (dims < 1 || dims > 2) {
    throw Error(ErrorCode::kInvalidArgument, "grids span one or two axes");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto &p = points[i];
    if (static_cast<int>(p.coords.size()) != dims) {
      throw Error(ErrorCode::kInvalidArgument,
                  "reference point " + std::to_string(i) + " has " +
                      std::to_string(p.coords.size()) + " coordinates, want " +
                      std::to_string(dims));
    }
    for (double c : p.coords) {
      if (!(c >= 0.0 && c <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "reference point " + std::to_string(i) +
                        " has a coordinate outside [0,1]");
      }
    }
    if (!(p.membership >= 0.0 && p.membership <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "reference point " + std::to_string(i) +
                      " has membership outside [0,1]");
    }
  }
  if (options.kernel == InterpolationKernel::kLinear && dims != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "linear kernel is defined for one-dimensional grids only");
  }

  const int res = options.resolution;
  std::vector<ReferencePoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const ReferencePoint &a, const ReferencePoint &b) {
              return a.coords < b.coords;
            });

  auto eval = [&](std::span<const double> x) {
    switch (options.kernel) {
      case InterpolationKernel::kLinear:
        return InterpolateLinear(x[0], sorted);
      case InterpolationKernel::kIdw:
        return InterpolateIdw(x, points, false, options.falloff_sigma);
      case InterpolationKernel::kIdwGaussian:
        break;
    }
    return InterpolateIdw(x, points, true, options.falloff_sigma);
  };
  MembershipGrid raw = MembershipGrid::Tabulate(axes, res, eval);

  // Pin the node nearest to each reference point.
  std::vector<double> values = raw.values();
  std::map<std::size_t, std::pair<double, int>> pinned;
  for (const auto &p : points) {
    std::size_t index = 0;
    for (int d = 0; d < dims; ++d) {
      index = index * res +
              static_cast<std::size_t>(std::lround(p.coords[d] * (res - 1)));
    }
    auto &slot = pinned[index];
    slot.first += p.membership;
    slot.second += 1;
  }
  for (const auto &[index, acc] : pinned) {
    values[index] = acc.first / acc.second;
  }
  return MembershipGrid(std::move(axes), res, std::move(values), points);
}

}  // namespace meaning
