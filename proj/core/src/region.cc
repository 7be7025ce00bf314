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

#include "meaning/region.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "meaning/error.h"

namespace meaning {

namespace {

constexpr double kQuantum = 4294967296.0;  // 2^32
constexpr std::size_t kMaxLatticeSamples = std::size_t{1} << 24;

std::string JoinAxes(const std::vector<AxisId> &axes) {
  std::string out;
  for (const auto &a : axes) {
    if (!out.empty()) out += ",";
    out += a;
  }
  return out;
}

bool SameAxisSet(const std::vector<AxisId> &a, const std::vector<AxisId> &b) {
  return std::set<AxisId>(a.begin(), a.end()) ==
         std::set<AxisId>(b.begin(), b.end());
}

std::size_t IntPow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

// Interpolation position along one axis. Snaps to a node when the coordinate
// is within rounding distance of it.
void Locate(double x, int resolution, int *lo, double *frac) {
  x = std::clamp(x, 0.0, 1.0);
  const double pos = x * (resolution - 1);
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) < 1e-9) {
    *lo = static_cast<int>(nearest);
    *frac = 0.0;
    return;
  }
  int i = static_cast<int>(std::floor(pos));
  if (i >= resolution - 1) i = resolution - 2;
  *lo = i;
  *frac = pos - i;
}

}  // namespace

// ---------------------------------------------------------------------------
// Context

Context::Context(std::string id, std::vector<AxisId> axes,
                 std::optional<std::string> parent)
    : id_(std::move(id)), axes_(std::move(axes)), parent_(std::move(parent)) {
  if (axes_.size() > kMaxContextAxes) {
    throw Error(ErrorCode::kTooLarge,
                "context '" + id_ + "' has " + std::to_string(axes_.size()) +
                    " axes; the cap is " + std::to_string(kMaxContextAxes));
  }
  std::set<AxisId> seen;
  for (const auto &a : axes_) {
    if (!seen.insert(a).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate axis '" + a + "' in context '" + id_ + "'");
    }
  }
}

bool Context::Contains(const AxisId &axis) const {
  return std::find(axes_.begin(), axes_.end(), axis) != axes_.end();
}

Context Context::WithId(std::string id) const {
  Context c = *this;
  c.id_ = std::move(id);
  return c;
}

Context Context::WithParent(std::optional<std::string> parent) const {
  Context c = *this;
  c.parent_ = std::move(parent);
  return c;
}

Context UnionContext(const Context &a, const Context &b) {
  std::vector<AxisId> axes = a.axes();
  bool grew = false;
  for (const auto &axis : b.axes()) {
    if (!a.Contains(axis)) {
      axes.push_back(axis);
      grew = true;
    }
  }
  if (!grew) return a;
  return Context(a.id() + "+" + b.id(), std::move(axes), a.parent());
}

// ---------------------------------------------------------------------------
// MembershipGrid

double QuantizeMembership(double value) {
  if (!(value > 0.0)) return 0.0;  // also maps NaN to 0
  if (value >= 1.0) return 1.0;
  return std::round(value * kQuantum) / kQuantum;
}

MembershipGrid::MembershipGrid(std::vector<AxisId> axes, int resolution,
                               std::vector<double> values,
                               std::vector<ReferencePoint> source_points)
    : axes_(std::move(axes)),
      resolution_(resolution),
      values_(std::move(values)),
      source_points_(std::move(source_points)) {
  if (axes_.empty() || axes_.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "membership grids span one or two axes, got " +
                    std::to_string(axes_.size()));
  }
  if (axes_.size() == 2 && axes_[0] == axes_[1]) {
    throw Error(ErrorCode::kInvalidArgument, "grid axes must differ");
  }
  if (resolution_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be >= 2");
  }
  const std::size_t expected = IntPow(resolution_, dims());
  if (values_.size() != expected) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid over " + JoinAxes(axes_) + " needs " +
                    std::to_string(expected) + " samples, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::isnan(values_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "NaN membership at sample " + std::to_string(i));
    }
    values_[i] = QuantizeMembership(values_[i]);
  }
}

MembershipGrid MembershipGrid::Constant(std::vector<AxisId> axes, double value,
                                        int resolution) {
  const std::size_t n = IntPow(resolution, static_cast<int>(axes.size()));
  return MembershipGrid(std::move(axes), resolution,
                        std::vector<double>(n, value));
}

MembershipGrid MembershipGrid::Tabulate(
    std::vector<AxisId> axes, int resolution,
    const std::function<double(std::span<const double>)> &fn) {
  std::vector<double> values;
  if (axes.size() == 1) {
    values.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
      const double c[1] = {NodeCoord(i, resolution)};
      values[i] = fn(c);
    }
  } else if (axes.size() == 2) {
    values.resize(static_cast<std::size_t>(resolution) * resolution);
    for (int i = 0; i < resolution; ++i) {
      for (int j = 0; j < resolution; ++j) {
        const double c[2] = {NodeCoord(i, resolution), NodeCoord(j, resolution)};
        values[i * resolution + j] = fn(c);
      }
    }
  }
  return MembershipGrid(std::move(axes), resolution, std::move(values));
}

double MembershipGrid::Sample(std::span<const double> coords) const {
  if (dims() == 1) {
    int i;
    double f;
    Locate(coords[0], resolution_, &i, &f);
    if (f == 0.0) return values_[i];
    return values_[i] * (1.0 - f) + values_[i + 1] * f;
  }
  int i, j;
  double fi, fj;
  Locate(coords[0], resolution_, &i, &fi);
  Locate(coords[1], resolution_, &j, &fj);
  if (fi == 0.0 && fj == 0.0) return At(i, j);
  const int i1 = fi == 0.0 ? i : i + 1;
  const int j1 = fj == 0.0 ? j : j + 1;
  const double top = At(i, j) * (1.0 - fj) + At(i, j1) * fj;
  const double bottom = At(i1, j) * (1.0 - fj) + At(i1, j1) * fj;
  return top * (1.0 - fi) + bottom * fi;
}

bool MembershipGrid::Covers(const AxisId &axis) const {
  return std::find(axes_.begin(), axes_.end(), axis) != axes_.end();
}

MembershipGrid MembershipGrid::WithAxes(std::vector<AxisId> axes) const {
  if (axes.size() != axes_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "axis relabel arity mismatch");
  }
  MembershipGrid g = *this;
  g.axes_ = std::move(axes);
  return g;
}

MembershipGrid MembershipGrid::Map(const std::function<double(double)> &fn) const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), fn);
  return MembershipGrid(axes_, resolution_, std::move(out));
}

bool MembershipGrid::operator==(const MembershipGrid &other) const {
  return axes_ == other.axes_ && resolution_ == other.resolution_ &&
         values_ == other.values_ && source_points_ == other.source_points_;
}

// ---------------------------------------------------------------------------
// Region

Region::Region(Context context, std::string label)
    : context_(std::move(context)), label_(std::move(label)) {}

Region::Region(Context context, std::vector<Factor> factors, std::string label)
    : context_(std::move(context)),
      factors_(std::move(factors)),
      label_(std::move(label)) {
  std::set<AxisId> used;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Factor &f = factors_[i];
    if (!(f.alpha > 0.0) || !std::isfinite(f.alpha)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "factor " + std::to_string(i) + " has non-positive exponent");
    }
    for (const auto &axis : f.grid.axes()) {
      if (!context_.Contains(axis)) {
        throw ContextMismatchError("factor axis '" + axis +
                                   "' is not in context '" + context_.id() +
                                   "'");
      }
      if (!used.insert(axis).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "axis '" + axis + "' is covered by more than one factor");
      }
    }
  }
}

Region Region::Normalized(Context context, std::vector<Factor> factors,
                          std::string label) {
  double sum = 0.0;
  for (const auto &f : factors) sum += f.alpha;
  if (sum > 0.0) {
    for (auto &f : factors) f.alpha /= sum;
  }
  return Region(std::move(context), std::move(factors), std::move(label));
}

int Region::FactorIndexFor(const AxisId &axis) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].grid.Covers(axis)) return static_cast<int>(i);
  }
  return -1;
}

std::vector<AxisId> Region::CoveredAxes() const {
  std::vector<AxisId> out;
  for (const auto &axis : context_.axes()) {
    if (FactorIndexFor(axis) >= 0) out.push_back(axis);
  }
  return out;
}

double Region::AlphaSum() const {
  double s = 0.0;
  for (const auto &f : factors_) s += f.alpha;
  return s;
}

Region Region::WithLabel(std::string label) const {
  Region r = *this;
  r.label_ = std::move(label);
  return r;
}

Region Region::WithContext(Context context) const {
  return Region(std::move(context), factors_, label_);
}

Region Region::WithFactors(std::vector<Factor> factors) const {
  return Region(context_, std::move(factors), label_);
}

// ---------------------------------------------------------------------------
// Evaluation

double CombineFactors(std::span<const double> values,
                      std::span<const double> alphas) {
  // Group equal values; n is small (a handful of factors).
  double result = 1.0;
  std::vector<bool> done(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (done[i]) continue;
    const double v = values[i];
    if (v == 0.0) return 0.0;
    double exponent = 0.0;
    for (std::size_t j = i; j < values.size(); ++j) {
      if (!done[j] && values[j] == v) {
        exponent += alphas[j];
        done[j] = true;
      }
    }
    if (v == 1.0) continue;
    result *= std::abs(exponent - 1.0) < 1e-12 ? v : std::pow(v, exponent);
  }
  return result;
}

double MembershipAt(const Region &region,
                    const std::map<AxisId, double> &coords) {
  const auto &factors = region.factors();
  std::vector<double> values(factors.size());
  std::vector<double> alphas(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto &grid = factors[i].grid;
    double c[2] = {0.0, 0.0};
    for (int d = 0; d < grid.dims(); ++d) {
      auto it = coords.find(grid.axes()[d]);
      if (it == coords.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "missing coordinate for axis '" + grid.axes()[d] + "'");
      }
      c[d] = it->second;
    }
    values[i] = grid.Sample(std::span<const double>(c, grid.dims()));
    alphas[i] = factors[i].alpha;
  }
  return CombineFactors(values, alphas);
}

double Membership(const Region &region, const Point &point) {
  if (point.context != region.context().id()) {
    throw ContextMismatchError("point context '" + point.context +
                               "' does not match region context '" +
                               region.context().id() + "'");
  }
  for (const auto &axis : region.context().axes()) {
    auto it = point.coords.find(axis);
    if (it == point.coords.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point lacks coordinate for axis '" + axis + "'");
    }
    if (it->second < 0.0 || it->second > 1.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "coordinate for axis '" + axis + "' outside [0,1]");
    }
  }
  if (point.coords.size() != region.context().axes().size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "point has coordinates for axes outside the context");
  }
  return MembershipAt(region, point.coords);
}

// ---------------------------------------------------------------------------
// Projection and expansion

Region Project(const Region &region, const std::vector<AxisId> &keep_axes) {
  const Context &ctx = region.context();
  std::set<AxisId> keep(keep_axes.begin(), keep_axes.end());
  for (const auto &axis : keep) {
    if (!ctx.Contains(axis)) {
      throw ContextMismatchError("cannot keep axis '" + axis +
                                 "' absent from context '" + ctx.id() + "'");
    }
  }
  if (keep.size() == ctx.axes().size()) return region;

  std::vector<Factor> kept;
  for (const auto &f : region.factors()) {
    std::size_t inside = 0;
    for (const auto &axis : f.grid.axes()) inside += keep.count(axis);
    if (inside == f.grid.axes().size()) {
      kept.push_back(f);
    } else if (inside != 0) {
      throw NonSeparableError("factor over {" + JoinAxes(f.grid.axes()) +
                              "} straddles the projection boundary");
    }
  }
  std::vector<AxisId> sub_axes;
  for (const auto &axis : ctx.axes()) {
    if (keep.count(axis)) sub_axes.push_back(axis);
  }
  Context sub(ctx.id() + "|" + JoinAxes(sub_axes), std::move(sub_axes),
              ctx.id());
  return Region(std::move(sub), std::move(kept), region.label());
}

Region ExpandAxis(const Region &region, const Axis &axis) {
  if (axis.kind != AxisKind::kDerived) {
    throw Error(ErrorCode::kInvalidArgument,
                "axis '" + axis.id + "' is basic and cannot be expanded");
  }
  if (!axis.reference) {
    throw Error(ErrorCode::kInvalidArgument,
                "derived axis '" + axis.id + "' has no reference region");
  }
  const Context &ctx = region.context();
  if (!ctx.Contains(axis.id)) {
    throw ContextMismatchError("axis '" + axis.id + "' is not in context '" +
                               ctx.id() + "'");
  }
  const Region &reference = *axis.reference;
  const std::vector<AxisId> ref_axes = reference.CoveredAxes();
  if (ref_axes.empty() || ref_axes.size() > 2) {
    throw NonSeparableError("reference region of '" + axis.id + "' covers " +
                            std::to_string(ref_axes.size()) +
                            " axes; expansion materializes at most two");
  }
  for (const auto &ra : ref_axes) {
    if (ra == axis.id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "axis '" + axis.id + "' references itself");
    }
    if (ctx.Contains(ra)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "reference axis '" + ra + "' already present in context '" +
                      ctx.id() + "'");
    }
  }

  std::vector<AxisId> new_axes;
  for (const auto &a : ctx.axes()) {
    if (a == axis.id) {
      new_axes.insert(new_axes.end(), ref_axes.begin(), ref_axes.end());
    } else {
      new_axes.push_back(a);
    }
  }
  Context expanded(ctx.id() + "/" + axis.id, std::move(new_axes), ctx.parent());

  std::vector<Factor> factors;
  for (const auto &f : region.factors()) {
    if (!f.grid.Covers(axis.id)) {
      factors.push_back(f);
      continue;
    }
    if (f.grid.dims() != 1) {
      throw NonSeparableError("axis '" + axis.id +
                              "' shares a 2D factor; expand requires a "
                              "standalone factor");
    }
    int resolution = f.grid.resolution();
    for (const auto &rf : reference.factors()) {
      resolution = std::max(resolution, rf.grid.resolution());
    }
    const std::vector<double> ref_values =
        SampleLattice(reference, ref_axes, resolution);
    std::vector<double> composed(ref_values.size());
    for (std::size_t i = 0; i < ref_values.size(); ++i) {
      const double q[1] = {ref_values[i]};
      composed[i] = f.grid.Sample(q);
    }
    factors.push_back(
        {MembershipGrid(ref_axes, resolution, std::move(composed)), f.alpha});
  }
  return Region(std::move(expanded), std::move(factors), region.label());
}

// ---------------------------------------------------------------------------
// Lattice sampling

std::vector<double> SampleLattice(const Region &region,
                                  const std::vector<AxisId> &axes,
                                  int resolution,
                                  std::span<const double> offset) {
  const int n = static_cast<int>(axes.size());
  const std::size_t total = IntPow(resolution, n);
  if (total > kMaxLatticeSamples) {
    throw Error(ErrorCode::kTooLarge,
                "joint lattice over " + std::to_string(n) + " axes at " +
                    std::to_string(resolution) + " samples is too large");
  }
  auto axis_pos = [&](const AxisId &a) -> int {
    auto it = std::find(axes.begin(), axes.end(), a);
    if (it == axes.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "factor axis '" + a + "' not in sampling lattice");
    }
    return static_cast<int>(it - axes.begin());
  };

  // Per-factor tables over the factor's own lattice axes.
  struct Table {
    std::vector<int> positions;
    std::vector<double> values;
    double alpha;
  };
  std::vector<Table> tables;
  for (const auto &f : region.factors()) {
    Table t;
    t.alpha = f.alpha;
    for (const auto &a : f.grid.axes()) t.positions.push_back(axis_pos(a));
    const int d = f.grid.dims();
    t.values.resize(IntPow(resolution, d));
    for (std::size_t k = 0; k < t.values.size(); ++k) {
      double c[2];
      std::size_t rem = k;
      for (int dd = d - 1; dd >= 0; --dd) {
        const int node = static_cast<int>(rem % resolution);
        rem /= resolution;
        double x = MembershipGrid::NodeCoord(node, resolution);
        if (!offset.empty()) x = std::clamp(x - offset[t.positions[dd]], 0.0, 1.0);
        c[dd] = x;
      }
      t.values[k] = f.grid.Sample(std::span<const double>(c, d));
    }
    tables.push_back(std::move(t));
  }

  std::vector<double> out(total);
  std::vector<int> idx(n, 0);
  std::vector<double> vals(tables.size());
  std::vector<double> alphas(tables.size());
  for (std::size_t t = 0; t < tables.size(); ++t) alphas[t] = tables[t].alpha;
  for (std::size_t k = 0; k < total; ++k) {
    for (std::size_t t = 0; t < tables.size(); ++t) {
      std::size_t local = 0;
      for (int p : tables[t].positions) local = local * resolution + idx[p];
      vals[t] = tables[t].values[local];
    }
    out[k] = CombineFactors(vals, alphas);
    for (int d = n - 1; d >= 0; --d) {
      if (++idx[d] < resolution) break;
      idx[d] = 0;
    }
  }
  return out;
}

JointSamples SampleJoint(const Region &a, const Region &b) {
  JointSamples js;
  js.axes = a.CoveredAxes();
  for (const auto &axis : b.CoveredAxes()) {
    if (std::find(js.axes.begin(), js.axes.end(), axis) == js.axes.end()) {
      js.axes.push_back(axis);
    }
  }
  int res = 0;
  for (const auto *r : {&a, &b}) {
    for (const auto &f : r->factors()) res = std::max(res, f.grid.resolution());
  }
  js.resolution = res == 0 ? MembershipGrid::kDefaultResolution : res;
  js.a = SampleLattice(a, js.axes, js.resolution);
  js.b = SampleLattice(b, js.axes, js.resolution);
  return js;
}

double RegionDistance(const Region &a, const Region &b) {
  if (!SameAxisSet(a.context().axes(), b.context().axes())) {
    throw ContextMismatchError("distance between regions in contexts '" +
                               a.context().id() + "' and '" +
                               b.context().id() + "'");
  }
  const JointSamples js = SampleJoint(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < js.a.size(); ++i) {
    d = std::max(d, std::abs(js.a[i] - js.b[i]));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Statistics

RegionStats ComputeStats(const Region &region, double tau) {
  RegionStats stats;
  stats.coverage_threshold = tau;
  const auto &factors = region.factors();
  if (factors.empty()) {
    stats.coverage_fraction = 1.0 > tau ? 1.0 : 0.0;
    return stats;
  }
  // Factor memberships raised to their exponents, sorted descending.
  std::vector<std::vector<double>> powered;
  for (const auto &f : factors) {
    std::vector<double> p(f.grid.values().size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double v = f.grid.values()[i];
      p[i] = (v == 0.0 || v == 1.0 || f.alpha == 1.0) ? v : std::pow(v, f.alpha);
    }
    std::sort(p.begin(), p.end(), std::greater<>());
    powered.push_back(std::move(p));
  }
  stats.max_membership = 1.0;
  stats.mean_membership = 1.0;
  for (const auto &p : powered) {
    stats.max_membership *= p.front();
    stats.mean_membership *= std::accumulate(p.begin(), p.end(), 0.0) / p.size();
  }
  if (factors.size() == 1) {
    // Exact membership including the single-factor fast path.
    const auto &f = factors[0];
    std::size_t count = 0;
    for (double v : f.grid.values()) {
      const double w = f.alpha == 1.0 ? v : std::pow(v, f.alpha);
      if (w > tau) ++count;
    }
    stats.max_membership = f.alpha == 1.0
                               ? *std::max_element(f.grid.values().begin(),
                                                   f.grid.values().end())
                               : stats.max_membership;
    stats.coverage_fraction =
        static_cast<double>(count) / f.grid.values().size();
    return stats;
  }

  // Exact count over the cartesian product with bound-based pruning.
  const std::size_t n = powered.size();
  std::vector<double> rest_max(n + 1, 1.0), rest_min(n + 1, 1.0);
  std::vector<double> rest_size(n + 1, 1.0);
  for (std::size_t i = n; i-- > 0;) {
    rest_max[i] = rest_max[i + 1] * powered[i].front();
    rest_min[i] = rest_min[i + 1] * powered[i].back();
    rest_size[i] = rest_size[i + 1] * powered[i].size();
  }
  std::function<double(std::size_t, double)> count = [&](std::size_t i,
                                                          double partial) {
    if (i == n) return partial > tau ? 1.0 : 0.0;
    double c = 0.0;
    const auto &vals = powered[i];
    for (std::size_t k = 0; k < vals.size(); ++k) {
      const double p = partial * vals[k];
      if (p * rest_max[i + 1] <= tau) break;
      if (p * rest_min[i + 1] > tau) {
        c += rest_size[i + 1];
        continue;
      }
      c += count(i + 1, p);
    }
    return c;
  };
  stats.coverage_fraction = count(0, 1.0) / rest_size[0];
  return stats;
}

// ---------------------------------------------------------------------------
// Structural helpers

std::optional<MembershipGrid> FlattenFactors(const Region &region) {
  if (region.empty()) return std::nullopt;
  const std::vector<AxisId> axes = region.CoveredAxes();
  if (axes.size() > 2) {
    throw NonSeparableError("region covers " + std::to_string(axes.size()) +
                            " axes; joint grids are limited to two");
  }
  int res = 0;
  for (const auto &f : region.factors()) res = std::max(res, f.grid.resolution());
  if (region.factors().size() == 1 && region.factors()[0].alpha == 1.0 &&
      region.factors()[0].grid.axes() == axes) {
    return region.factors()[0].grid;
  }
  return MembershipGrid(axes, res, SampleLattice(region, axes, res));
}

Region DirectSumRegions(const Region &a, const Region &b) {
  for (const auto &axis : b.context().axes()) {
    if (a.context().Contains(axis)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "direct sum requires disjoint contexts; '" + axis +
                      "' appears in both");
    }
  }
  std::vector<AxisId> axes = a.context().axes();
  axes.insert(axes.end(), b.context().axes().begin(), b.context().axes().end());
  std::vector<Factor> factors = a.factors();
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  return Region(Context(a.context().id() + "+" + b.context().id(),
                        std::move(axes)),
                std::move(factors));
}

}  // namespace meaning
