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

#include "meaning/operators.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "meaning/error.h"

namespace meaning {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Family {
  const char *name;
  double (*fn)(double);
};

const Family kFamilies[] = {
    {"identity", [](double x) { return x; }},
    {"very", [](double x) { return x * x; }},
    {"not", [](double x) { return 1.0 - x; }},
    {"somewhat", [](double x) { return std::sqrt(x); }},
    {"extremely", [](double x) { return x * x * x; }},
};

const Family *FindFamily(std::string_view name) {
  for (const auto &f : kFamilies) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

const Family &RequireFamily(std::string_view name) {
  const Family *f = FindFamily(name);
  if (f == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown hedge '" + std::string(name) + "'");
  }
  return *f;
}

std::string Join(const std::vector<AxisId> &axes) {
  std::string out;
  for (const auto &a : axes) {
    if (!out.empty()) out += ",";
    out += a;
  }
  return out;
}

std::set<AxisId> AsSet(const std::vector<AxisId> &v) {
  return std::set<AxisId>(v.begin(), v.end());
}

void RequireAxesInContext(const std::vector<AxisId> &axes, const Context &ctx) {
  for (const auto &a : axes) {
    if (!ctx.Contains(a)) {
      throw ContextMismatchError("axis '" + a + "' is not in context '" +
                                 ctx.id() + "'");
    }
  }
}

// Indices of factors touching `target`; throws if one of them also spans an
// axis outside `target`.
std::vector<std::size_t> TouchingFactors(const Region &region,
                                         const std::vector<AxisId> &target) {
  const auto want = AsSet(target);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < region.factors().size(); ++i) {
    const auto &axes = region.factors()[i].grid.axes();
    std::size_t inside = 0;
    for (const auto &a : axes) inside += want.count(a);
    if (inside == 0) continue;
    if (inside != axes.size()) {
      throw NonSeparableError("factor over {" + Join(axes) +
                              "} straddles target {" + Join(target) + "}");
    }
    out.push_back(i);
  }
  return out;
}

// Axes of `target` ordered as in the context.
std::vector<AxisId> InContextOrder(const std::vector<AxisId> &target,
                                   const Context &ctx) {
  const auto want = AsSet(target);
  std::vector<AxisId> out;
  for (const auto &a : ctx.axes()) {
    if (want.count(a)) out.push_back(a);
  }
  return out;
}

Region ApplyPointwiseWhole(const Family &f, const Region &region) {
  if (region.empty()) {
    if (f.fn(1.0) == 1.0) return region;
    if (region.context().axes().empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cannot complement a region in a context without axes");
    }
    return region.WithFactors({Factor{
        MembershipGrid::Constant({region.context().axes().front()}, f.fn(1.0)),
        1.0}});
  }
  if (region.factors().size() == 1 && region.factors()[0].alpha == 1.0) {
    return region.WithFactors({Factor{region.factors()[0].grid.Map(f.fn), 1.0}});
  }
  const auto joint = FlattenFactors(region);
  return region.WithFactors({Factor{joint->Map(f.fn), 1.0}});
}

Region ApplyPointwiseTargeted(const Family &f, const Region &region,
                              const std::vector<AxisId> &target) {
  RequireAxesInContext(target, region.context());
  const auto touching = TouchingFactors(region, target);
  if (touching.empty()) {
    if (f.fn(1.0) == 1.0) return region;
    if (target.size() > 2) {
      throw NonSeparableError("hedge target spans more than two axes");
    }
    auto factors = region.factors();
    factors.push_back(
        {MembershipGrid::Constant(InContextOrder(target, region.context()),
                                  f.fn(1.0)),
         1.0});
    return region.WithFactors(std::move(factors));
  }
  auto factors = region.factors();
  if (touching.size() == 1) {
    Factor &factor = factors[touching[0]];
    factor.grid = factor.grid.Map(f.fn);
    return region.WithFactors(std::move(factors));
  }
  std::vector<Factor> inside, outside;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (std::find(touching.begin(), touching.end(), i) != touching.end()) {
      inside.push_back(factors[i]);
    } else {
      outside.push_back(factors[i]);
    }
  }
  const auto joint = FlattenFactors(Region(region.context(), inside));
  outside.push_back({joint->Map(f.fn), 1.0});
  return region.WithFactors(std::move(outside));
}

// Resamples every factor covering `axis` under new(y) = old(map(y)).
Region ResampleAxis(const Region &region, const AxisId &axis,
                    const std::function<double(double)> &map) {
  auto factors = region.factors();
  bool changed = false;
  for (auto &f : factors) {
    if (!f.grid.Covers(axis)) continue;
    const auto &g = f.grid;
    const int pos = g.axes()[0] == axis ? 0 : 1;
    f.grid = MembershipGrid::Tabulate(
        g.axes(), g.resolution(), [&](std::span<const double> c) {
          double moved[2] = {c[0], g.dims() == 2 ? c[1] : 0.0};
          moved[pos] = std::clamp(map(c[pos]), 0.0, 1.0);
          return g.Sample(std::span<const double>(moved, g.dims()));
        });
    changed = true;
  }
  if (!changed) return region;
  return region.WithFactors(std::move(factors));
}

double CurveAt(const std::vector<double> &curve, double tau) {
  if (curve.empty()) return 1.0;
  if (curve.size() == 1) return curve[0];
  const double pos = std::clamp(tau, 0.0, 1.0) * (curve.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(pos), curve.size() - 2);
  const double t = pos - i;
  return curve[i] * (1.0 - t) + curve[i + 1] * t;
}

std::vector<double> TrajectoryAt(const TrajectoryAnchor &a, double tau) {
  std::vector<double> out(a.start.size());
  const double u = 1.0 - tau;
  for (std::size_t d = 0; d < out.size(); ++d) {
    const double c = d < a.control.size() ? a.control[d] : a.start[d];
    out[d] = u * u * a.start[d] + 2.0 * u * tau * c + tau * tau * a.end[d];
  }
  return out;
}

Region ApplyTrajectory(const Region &region, const GeneralTransform &t) {
  const auto &target = t.target_axes;
  if (target.empty() || target.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "trajectory transforms act on one or two axes");
  }
  RequireAxesInContext(target, region.context());
  for (const auto &a : t.anchors) {
    if (a.start.size() != target.size() || a.end.size() != target.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "trajectory anchor arity does not match target axes");
    }
  }
  bool identity = true;
  for (const auto &a : t.anchors) {
    if (TrajectoryAt(a, 1.0) != a.start || CurveAt(a.membership_curve, 1.0) != 1.0) {
      identity = false;
    }
  }
  if (identity) return region;

  const auto touching = TouchingFactors(region, target);
  if (touching.size() > 1) {
    throw NonSeparableError("trajectory target spans several factors");
  }
  if (touching.size() == 1 &&
      AsSet(region.factors()[touching[0]].grid.axes()) != AsSet(target)) {
    throw NonSeparableError("trajectory target is not a standalone factor");
  }
  const std::vector<AxisId> axes =
      touching.empty() ? target : region.factors()[touching[0]].grid.axes();
  const MembershipGrid grid =
      touching.empty() ? MembershipGrid::Constant(axes, 1.0)
                       : region.factors()[touching[0]].grid;
  // Anchor coordinates follow target order; grid order may differ.
  std::vector<int> perm(axes.size());
  for (std::size_t d = 0; d < axes.size(); ++d) {
    perm[d] = static_cast<int>(std::find(target.begin(), target.end(), axes[d]) -
                               target.begin());
  }

  std::vector<ReferencePoint> points = grid.source_points();
  const bool dense = points.empty();
  if (dense) {
    const int res = grid.resolution();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      ReferencePoint p;
      if (grid.dims() == 1) {
        p.coords = {MembershipGrid::NodeCoord(static_cast<int>(k), res)};
      } else {
        p.coords = {MembershipGrid::NodeCoord(static_cast<int>(k) / res, res),
                    MembershipGrid::NodeCoord(static_cast<int>(k) % res, res)};
      }
      p.membership = grid.values()[k];
      points.push_back(std::move(p));
    }
  }
  for (auto &p : points) {
    std::vector<double> disp(axes.size(), 0.0);
    double mult = 1.0;
    double wsum = 0.0;
    std::vector<double> acc(axes.size(), 0.0);
    double macc = 0.0;
    bool exact = false;
    for (const auto &a : t.anchors) {
      double d2 = 0.0;
      for (std::size_t d = 0; d < axes.size(); ++d) {
        const double diff = p.coords[d] - a.start[perm[d]];
        d2 += diff * diff;
      }
      const auto end = TrajectoryAt(a, 1.0);
      if (d2 < 1e-24) {
        for (std::size_t d = 0; d < axes.size(); ++d) {
          disp[d] = end[perm[d]] - a.start[perm[d]];
        }
        mult = CurveAt(a.membership_curve, 1.0);
        exact = true;
        break;
      }
      const double w = 1.0 / d2;
      wsum += w;
      for (std::size_t d = 0; d < axes.size(); ++d) {
        acc[d] += w * (end[perm[d]] - a.start[perm[d]]);
      }
      macc += w * CurveAt(a.membership_curve, 1.0);
    }
    if (!exact && wsum > 0.0) {
      for (std::size_t d = 0; d < axes.size(); ++d) disp[d] = acc[d] / wsum;
      mult = macc / wsum;
    }
    for (std::size_t d = 0; d < axes.size(); ++d) {
      p.coords[d] = std::clamp(p.coords[d] + disp[d], 0.0, 1.0);
    }
    p.membership = std::clamp(p.membership * mult, 0.0, 1.0);
  }
  GridOptions options;
  options.resolution = grid.resolution();
  options.kernel =
      dense ? InterpolationKernel::kIdw : InterpolationKernel::kIdwGaussian;
  MembershipGrid rebuilt = BuildGrid(axes, points, options);
  if (dense) {
    rebuilt = MembershipGrid(rebuilt.axes(), rebuilt.resolution(),
                             rebuilt.values());
  }
  auto factors = region.factors();
  if (touching.empty()) {
    factors.push_back({std::move(rebuilt), 1.0});
  } else {
    factors[touching[0]].grid = std::move(rebuilt);
  }
  return region.WithFactors(std::move(factors));
}

MembershipGrid RidgeGrid(const std::vector<AxisId> &axes, double slope,
                         double width, int resolution) {
  return MembershipGrid::Tabulate(axes, resolution, [&](std::span<const double> c) {
    const double d = c[0] - slope * c[1];
    return std::exp(-d * d / (2.0 * width * width));
  });
}

std::vector<AxisId> UnionAxes(const std::vector<MeaningOperator> &ops) {
  std::vector<AxisId> out;
  for (const auto &op : ops) {
    for (const auto &a : op.ExternalAxes()) {
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Equality

bool operator==(const Pointwise &a, const Pointwise &b) {
  return a.family == b.family && a.target_axes == b.target_axes;
}
bool operator==(const Projection &a, const Projection &b) {
  return a.target_axes == b.target_axes && a.replacement == b.replacement;
}
bool operator==(const TrajectoryAnchor &a, const TrajectoryAnchor &b) {
  return a.start == b.start && a.control == b.control && a.end == b.end &&
         a.membership_curve == b.membership_curve;
}
bool operator==(const GeneralTransform &a, const GeneralTransform &b) {
  return a.form == b.form && a.target_axes == b.target_axes &&
         a.amount == b.amount && a.anchors == b.anchors;
}
bool operator==(const Conjunction &a, const Conjunction &b) {
  return a.kind == b.kind && a.operands == b.operands;
}
bool operator==(const Negation &a, const Negation &b) {
  if (!a.operand || !b.operand) return a.operand == b.operand;
  return *a.operand == *b.operand;
}
bool operator==(const DirectSum &a, const DirectSum &b) {
  return a.parts == b.parts;
}
bool operator==(const Actualize &a, const Actualize &b) {
  return a.base == b.base && a.modifiers == b.modifiers;
}
bool operator==(const Restriction &a, const Restriction &b) {
  if (a.axes != b.axes) return false;
  if (!a.inner || !b.inner) return a.inner == b.inner;
  return *a.inner == *b.inner;
}

// ---------------------------------------------------------------------------
// MeaningOperator

MeaningOperator::MeaningOperator(Body body, std::string name)
    : body_(std::move(body)), name_(std::move(name)) {
  if (name_.empty()) {
    name_ = std::visit(
        Overloaded{
            [](const Pointwise &p) { return p.family; },
            [](const Projection &) { return std::string("projection"); },
            [](const GeneralTransform &) { return std::string("transform"); },
            [](const Conjunction &c) {
              return std::string(c.kind == ConjunctionKind::kAnd ? "and" : "or");
            },
            [](const Negation &n) {
              return "not(" + (n.operand ? n.operand->name() : "") + ")";
            },
            [](const DirectSum &) { return std::string("direct-sum"); },
            [](const Actualize &) { return std::string("actualize"); },
            [](const Restriction &r) {
              return "restrict(" + (r.inner ? r.inner->name() : "") + ")";
            },
        },
        body_);
  }
}

MeaningOperator MeaningOperator::Block(std::string name,
                                       Context internal_context,
                                       Region parameter_region,
                                       Derivation derivation,
                                       std::optional<Region> base) {
  MeaningOperator op(Pointwise{"identity", {}}, std::move(name));
  if (!AsSet(parameter_region.context().axes()).empty() &&
      AsSet(parameter_region.context().axes()) !=
          AsSet(internal_context.axes())) {
    throw ContextMismatchError("parameter region axes do not match internal "
                               "context '" + internal_context.id() + "'");
  }
  op.parameter_region_ = parameter_region.WithContext(internal_context);
  op.internal_context_ = std::move(internal_context);
  op.derivation_ = std::move(derivation);
  if (op.derivation_.kind == DerivationKind::kActualize) {
    if (!base) {
      throw Error(ErrorCode::kInvalidArgument,
                  "actualizing block needs a base region");
    }
    op.body_ = Actualize{*base, {}};
  }
  op.DeriveBody();
  return op;
}

MeaningOperator MeaningOperator::Restore(std::string name, Body body,
                                         std::optional<Context> internal_context,
                                         std::optional<Region> parameter_region,
                                         Derivation derivation,
                                         std::map<AxisId, double> parameters) {
  if (internal_context.has_value() != parameter_region.has_value()) {
    throw Error(ErrorCode::kInvalidArgument,
                "parameter region present iff internal context present");
  }
  MeaningOperator op(std::move(body), std::move(name));
  op.internal_context_ = std::move(internal_context);
  op.parameter_region_ = std::move(parameter_region);
  op.derivation_ = std::move(derivation);
  op.parameters_ = std::move(parameters);
  return op;
}

void MeaningOperator::DeriveBody() {
  if (!parameter_region_) return;
  const Context &ic = *internal_context_;
  parameters_ = ParameterCentroid(*parameter_region_);
  switch (derivation_.kind) {
    case DerivationKind::kNone:
    case DerivationKind::kActualize:
      return;
    case DerivationKind::kCopy: {
      const auto &ext = derivation_.external_axes;
      if (ext.size() != ic.axes().size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "copy derivation needs one external axis per internal axis");
      }
      auto relabel = [&](const std::vector<AxisId> &axes) {
        std::vector<AxisId> out;
        for (const auto &a : axes) {
          const auto pos = std::find(ic.axes().begin(), ic.axes().end(), a) -
                           ic.axes().begin();
          out.push_back(ext[pos]);
        }
        return out;
      };
      const auto joint = FlattenFactors(*parameter_region_);
      if (!joint) {
        body_ = Projection{ext, MembershipGrid::Constant(
                                    std::vector<AxisId>(ext.begin(),
                                                        ext.begin() + std::min<std::size_t>(ext.size(), 2)),
                                    1.0, derivation_.resolution)};
        return;
      }
      const auto axes = relabel(joint->axes());
      body_ = Projection{axes, joint->WithAxes(axes)};
      return;
    }
    case DerivationKind::kRidge: {
      const auto &ext = derivation_.external_axes;
      if (ext.size() != 2 || ic.axes().empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "ridge derivation needs (distance, time) external axes");
      }
      const double c = parameters_.at(ic.axes().front());
      body_ = Projection{ext, RidgeGrid(ext, derivation_.slope_scale * c,
                                        derivation_.width,
                                        derivation_.resolution)};
      return;
    }
  }
}

std::vector<AxisId> MeaningOperator::ExternalAxes() const {
  return std::visit(
      Overloaded{
          [](const Pointwise &p) { return p.target_axes; },
          [](const Projection &p) { return p.target_axes; },
          [](const GeneralTransform &t) { return t.target_axes; },
          [](const Conjunction &c) { return UnionAxes(c.operands); },
          [](const Negation &n) {
            return n.operand ? n.operand->ExternalAxes() : std::vector<AxisId>{};
          },
          [](const DirectSum &d) { return UnionAxes(d.parts); },
          [](const Actualize &a) { return a.base.context().axes(); },
          [](const Restriction &r) { return r.axes; },
      },
      body_);
}

MeaningOperator MeaningOperator::WithName(std::string name) const {
  MeaningOperator op = *this;
  op.name_ = std::move(name);
  return op;
}

bool MeaningOperator::operator==(const MeaningOperator &other) const {
  return name_ == other.name_ && body_ == other.body_ &&
         internal_context_ == other.internal_context_ &&
         parameter_region_ == other.parameter_region_ &&
         derivation_ == other.derivation_ && parameters_ == other.parameters_;
}

// ---------------------------------------------------------------------------
// Registry and constructors

bool HasPointwiseFamily(std::string_view family) {
  return FindFamily(family) != nullptr;
}

double EvaluatePointwise(std::string_view family, double x) {
  return RequireFamily(family).fn(x);
}

std::vector<std::string> PointwiseFamilies() {
  std::vector<std::string> out;
  for (const auto &f : kFamilies) out.emplace_back(f.name);
  return out;
}

MeaningOperator MakeHedge(std::string family, std::vector<AxisId> target) {
  RequireFamily(family);
  std::string name = family;
  return MeaningOperator(Pointwise{std::move(family), std::move(target)},
                         std::move(name));
}

MeaningOperator MakeProjection(std::string name, MembershipGrid replacement) {
  auto axes = replacement.axes();
  return MeaningOperator(Projection{std::move(axes), std::move(replacement)},
                         std::move(name));
}

MeaningOperator MakeRescale(std::string name, AxisId axis, double k) {
  if (!(k > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "rescale factor must be positive");
  }
  return MeaningOperator(
      GeneralTransform{TransformForm::kRescale, {std::move(axis)}, k, {}},
      std::move(name));
}

MeaningOperator MakeShift(std::string name, AxisId axis, double offset) {
  return MeaningOperator(
      GeneralTransform{TransformForm::kShift, {std::move(axis)}, offset, {}},
      std::move(name));
}

MeaningOperator MakeSmooth(std::string name, std::vector<AxisId> axes,
                           double radius) {
  return MeaningOperator(
      GeneralTransform{TransformForm::kSmooth, std::move(axes), radius, {}},
      std::move(name));
}

MeaningOperator MakeConjunction(ConjunctionKind kind,
                                std::vector<MeaningOperator> operands) {
  std::string name = kind == ConjunctionKind::kAnd ? "and(" : "or(";
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (i) name += ", ";
    name += operands[i].name();
  }
  name += ")";
  return MeaningOperator(Conjunction{kind, std::move(operands)}, std::move(name));
}

MeaningOperator MakeNegation(MeaningOperator operand) {
  return MeaningOperator(
      Negation{std::make_shared<const MeaningOperator>(std::move(operand))});
}

MeaningOperator MakeDirectSum(std::vector<MeaningOperator> parts) {
  std::set<AxisId> seen;
  for (const auto &part : parts) {
    for (const auto &a : part.ExternalAxes()) {
      if (!seen.insert(a).second) {
        throw Error(ErrorCode::kInvalidArgument, "direct-sum parts overlap on axis '" + a + "'");
      }
    }
  }
  return MeaningOperator(DirectSum{std::move(parts)});
}

// ---------------------------------------------------------------------------
// Application

Region Apply(const MeaningOperator &op, const Region &region) {
  return std::visit(
      Overloaded{
          [&](const Pointwise &p) {
            const Family &f = RequireFamily(p.family);
            return p.target_axes.empty()
                       ? ApplyPointwiseWhole(f, region)
                       : ApplyPointwiseTargeted(f, region, p.target_axes);
          },
          [&](const Projection &p) {
            return ApplyProjectionAdjective(region, p.target_axes,
                                            p.replacement);
          },
          [&](const GeneralTransform &t) {
            return ApplyGeneralTransform(region, t);
          },
          [&](const Conjunction &c) {
            if (c.operands.empty()) return region;
            std::vector<Region> results;
            for (const auto &operand : c.operands) {
              results.push_back(Apply(operand, region));
            }
            return CombineRegions(c.kind, results);
          },
          [&](const Negation &n) {
            Region r = Apply(*n.operand, region);
            const auto target = n.operand->ExternalAxes();
            if (target.empty()) return ApplyNot(r);
            return ApplyPointwiseTargeted(RequireFamily("not"), r, target);
          },
          [&](const DirectSum &d) {
            std::set<AxisId> seen;
            for (const auto &part : d.parts) {
              for (const auto &a : part.ExternalAxes()) {
                if (!seen.insert(a).second) {
                  throw Error(ErrorCode::kInvalidArgument,
                              "direct-sum parts overlap on axis '" + a + "'");
                }
              }
            }
            Region r = region;
            for (const auto &part : d.parts) r = Apply(part, r);
            return r;
          },
          [&](const Actualize &a) {
            Region r = region;
            if (region.empty()) {
              RequireAxesInContext(a.base.CoveredAxes(), region.context());
              r = Region(region.context(), a.base.factors(), region.label());
            }
            for (const auto &m : a.modifiers) r = Apply(m, r);
            return r;
          },
          [&](const Restriction &rs) {
            const auto inner_axes = rs.inner->ExternalAxes();
            std::vector<AxisId> axes = region.context().axes();
            for (const auto &a : inner_axes) {
              if (std::find(axes.begin(), axes.end(), a) == axes.end()) {
                axes.push_back(a);
              }
            }
            Region embedded = region;
            if (axes.size() != region.context().axes().size()) {
              embedded = Region(Context(region.context().id() + "^", axes),
                                region.factors(), region.label());
            }
            Region applied = Apply(*rs.inner, embedded);
            Region projected = Project(applied, region.context().axes());
            // Anything the inner operator wrote outside the subspace is
            // discarded; axes of the subspace keep the caller's context.
            std::vector<Factor> factors;
            const auto allowed = AsSet(rs.axes);
            for (const auto &f : projected.factors()) {
              bool inside = true;
              for (const auto &a : f.grid.axes()) inside &= allowed.count(a) > 0;
              if (inside) {
                factors.push_back(f);
              } else {
                const int idx = region.FactorIndexFor(f.grid.axes().front());
                if (idx >= 0) factors.push_back(region.factors()[idx]);
              }
            }
            return Region(region.context(), std::move(factors), region.label());
          },
      },
      op.body());
}

Region ApplyLine(const std::vector<MeaningOperator> &line, const Region &source) {
  Region r = source;
  for (const auto &op : line) r = Apply(op, r);
  return r;
}

Region ApplyPhrase(const PhraseOperator &phrase, const Region &source) {
  if (!phrase.context.id().empty() &&
      AsSet(phrase.context.axes()) != AsSet(source.context().axes())) {
    throw ContextMismatchError("phrase context '" + phrase.context.id() +
                               "' does not match source context '" +
                               source.context().id() + "'");
  }
  return ApplyLine(phrase.line, source);
}

Region ApplyNot(const Region &region) {
  return ApplyPointwiseWhole(RequireFamily("not"), region);
}

Region ApplyHedge(std::string_view name, const Region &region,
                  const std::vector<AxisId> &target_axes) {
  const Family &f = RequireFamily(name);
  return target_axes.empty() ? ApplyPointwiseWhole(f, region)
                             : ApplyPointwiseTargeted(f, region, target_axes);
}

Region CombineRegions(ConjunctionKind kind, const std::vector<Region> &operands) {
  if (operands.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "conjunction of nothing");
  }
  if (operands.size() == 1) return operands.front();
  Context ctx = operands.front().context();
  for (std::size_t i = 1; i < operands.size(); ++i) {
    ctx = UnionContext(ctx, operands[i].context());
  }
  std::vector<Region> lifted;
  for (const auto &r : operands) {
    lifted.push_back(Region(ctx, r.factors(), r.label()));
  }
  const double w = 1.0 / static_cast<double>(operands.size());

  if (kind == ConjunctionKind::kOr) {
    std::vector<AxisId> covered;
    int res = 0;
    for (const auto &r : lifted) {
      for (const auto &a : r.CoveredAxes()) {
        if (std::find(covered.begin(), covered.end(), a) == covered.end()) {
          covered.push_back(a);
        }
      }
      for (const auto &f : r.factors()) res = std::max(res, f.grid.resolution());
    }
    if (covered.empty()) return Region(ctx);
    covered = InContextOrder(covered, ctx);
    if (covered.size() > 2) {
      throw NonSeparableError("'or' needs a joint grid over " +
                              std::to_string(covered.size()) + " axes");
    }
    std::vector<std::vector<double>> samples;
    for (const auto &r : lifted) samples.push_back(SampleLattice(r, covered, res));
    std::vector<double> h(samples.front().size());
    std::vector<double> comp(lifted.size()), alphas(lifted.size(), w);
    for (std::size_t k = 0; k < h.size(); ++k) {
      for (std::size_t i = 0; i < lifted.size(); ++i) comp[i] = 1.0 - samples[i][k];
      h[k] = 1.0 - CombineFactors(comp, alphas);
    }
    return Region(ctx, {Factor{MembershipGrid(covered, res, std::move(h)), 1.0}});
  }

  // 'and' separates over groups of factors connected by shared axes.
  struct Item {
    std::size_t region;
    const Factor *factor;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    for (const auto &f : lifted[i].factors()) items.push_back({i, &f});
  }
  std::vector<std::size_t> parent(items.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const auto &ai = items[i].factor->grid.axes();
      const auto &aj = items[j].factor->grid.axes();
      bool share = false;
      for (const auto &a : ai) {
        share |= std::find(aj.begin(), aj.end(), a) != aj.end();
      }
      if (share) parent[find(i)] = find(j);
    }
  }
  std::vector<Factor> out;
  std::set<std::size_t> emitted;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::size_t root = find(i);
    if (!emitted.insert(root).second) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (find(j) == root) members.push_back(j);
    }
    if (members.size() == 1) {
      Factor f = *items[i].factor;
      f.alpha *= w;
      out.push_back(std::move(f));
      continue;
    }
    std::vector<AxisId> axes;
    int res = 0;
    std::vector<std::vector<Factor>> per_region(lifted.size());
    for (std::size_t m : members) {
      for (const auto &a : items[m].factor->grid.axes()) {
        if (std::find(axes.begin(), axes.end(), a) == axes.end()) axes.push_back(a);
      }
      res = std::max(res, items[m].factor->grid.resolution());
      per_region[items[m].region].push_back(*items[m].factor);
    }
    axes = InContextOrder(axes, ctx);
    if (axes.size() > 2) {
      throw NonSeparableError("'and' needs a joint grid over " +
                              std::to_string(axes.size()) + " axes");
    }
    std::vector<std::vector<double>> samples;
    for (std::size_t r = 0; r < lifted.size(); ++r) {
      samples.push_back(SampleLattice(Region(ctx, per_region[r]), axes, res));
    }
    std::vector<double> h(samples.front().size());
    std::vector<double> vals(lifted.size()), alphas(lifted.size(), w);
    for (std::size_t k = 0; k < h.size(); ++k) {
      for (std::size_t r = 0; r < lifted.size(); ++r) vals[r] = samples[r][k];
      h[k] = CombineFactors(vals, alphas);
    }
    out.push_back({MembershipGrid(axes, res, std::move(h)), 1.0});
  }
  return Region(ctx, std::move(out));
}

Region ApplyAnd(const Region &f, const Region &g) {
  return CombineRegions(ConjunctionKind::kAnd, {f, g});
}

Region ApplyOr(const Region &f, const Region &g) {
  return CombineRegions(ConjunctionKind::kOr, {f, g});
}

std::pair<Region, Region> ApplyBut(const Region &source,
                                   const PhraseOperator &first,
                                   const PhraseOperator &second) {
  Region b = ApplyPhrase(first, source);
  Region fa = ApplyPhrase(second, source);
  return {std::move(b), std::move(fa)};
}

Region ApplyProjectionAdjective(const Region &region,
                                const std::vector<AxisId> &target_axes,
                                const MembershipGrid &replacement) {
  if (AsSet(target_axes) != AsSet(replacement.axes())) {
    throw Error(ErrorCode::kInvalidArgument,
                "replacement grid axes {" + Join(replacement.axes()) +
                    "} differ from target {" + Join(target_axes) + "}");
  }
  RequireAxesInContext(target_axes, region.context());
  const auto touching = TouchingFactors(region, target_axes);
  auto factors = region.factors();
  if (touching.size() == 1 &&
      AsSet(factors[touching[0]].grid.axes()) == AsSet(target_axes)) {
    factors[touching[0]].grid = replacement;
    return region.WithFactors(std::move(factors));
  }
  std::vector<Factor> kept;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (std::find(touching.begin(), touching.end(), i) == touching.end()) {
      kept.push_back(factors[i]);
    }
  }
  kept.push_back({replacement, 1.0});
  return region.WithFactors(std::move(kept));
}

Region ApplyGeneralTransform(const Region &region, const GeneralTransform &t) {
  switch (t.form) {
    case TransformForm::kTrajectory:
      return ApplyTrajectory(region, t);
    case TransformForm::kRescale: {
      if (!(t.amount > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "rescale factor must be positive");
      }
      if (t.target_axes.size() != 1) {
        throw Error(ErrorCode::kInvalidArgument, "rescale acts on one axis");
      }
      RequireAxesInContext(t.target_axes, region.context());
      const double k = t.amount;
      return ResampleAxis(region, t.target_axes[0],
                          [k](double y) { return std::min(1.0, k * y); });
    }
    case TransformForm::kShift: {
      if (t.target_axes.size() != 1) {
        throw Error(ErrorCode::kInvalidArgument, "shift acts on one axis");
      }
      RequireAxesInContext(t.target_axes, region.context());
      const double off = t.amount;
      return ResampleAxis(region, t.target_axes[0],
                          [off](double y) { return y - off; });
    }
    case TransformForm::kSmooth: {
      if (t.amount < 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "blur radius must be >= 0");
      }
      RequireAxesInContext(t.target_axes, region.context());
      auto factors = region.factors();
      bool changed = false;
      for (auto &f : factors) {
        bool hit = t.target_axes.empty();
        for (const auto &a : t.target_axes) hit |= f.grid.Covers(a);
        if (!hit) continue;
        f.grid = BoxFilter(f.grid, t.amount, t.target_axes);
        changed = true;
      }
      return changed ? region.WithFactors(std::move(factors)) : region;
    }
  }
  return region;
}

MeaningOperator ComposeBlock(const MeaningOperator &modifier,
                             const MeaningOperator &target) {
  if (!target.internal_context() || !target.parameter_region()) {
    throw Error(ErrorCode::kInvalidArgument,
                "operator '" + target.name() + "' has no internal context");
  }
  const Context &ic = *target.internal_context();
  for (const auto &a : modifier.ExternalAxes()) {
    if (!ic.Contains(a)) {
      throw ContextMismatchError("modifier '" + modifier.name() +
                                 "' acts on axis '" + a +
                                 "' outside the internal context of '" +
                                 target.name() + "'");
    }
  }
  MeaningOperator out = target;
  out.parameter_region_ = Apply(modifier, *target.parameter_region());
  if (target.derivation().kind == DerivationKind::kActualize) {
    auto body = std::get<Actualize>(target.body());
    body.modifiers.push_back(modifier);
    out.body_ = std::move(body);
  }
  out.DeriveBody();
  out.name_ = target.name() + "<" + modifier.name() + ">";
  return out;
}

std::map<AxisId, double> ParameterCentroid(const Region &region) {
  std::map<AxisId, double> out;
  for (const auto &axis : region.context().axes()) {
    const int idx = region.FactorIndexFor(axis);
    if (idx < 0) {
      out[axis] = 0.5;
      continue;
    }
    const Factor &f = region.factors()[idx];
    const auto &g = f.grid;
    const int res = g.resolution();
    const int pos = g.axes()[0] == axis ? 0 : 1;
    std::vector<double> weights(res, 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const int node = g.dims() == 1 ? static_cast<int>(k)
                                     : (pos == 0 ? static_cast<int>(k) / res
                                                 : static_cast<int>(k) % res);
      const double v = g.values()[k];
      weights[node] += f.alpha == 1.0 ? v : std::pow(v, f.alpha);
    }
    double num = 0.0, den = 0.0;
    for (int k = 0; k < res; ++k) {
      num += MembershipGrid::NodeCoord(k, res) * weights[k];
      den += weights[k];
    }
    out[axis] = den > 0.0 ? num / den : 0.5;
  }
  return out;
}

MembershipGrid BoxFilter(const MembershipGrid &grid, double radius,
                         const std::vector<AxisId> &axes) {
  const int res = grid.resolution();
  const int h = static_cast<int>(std::lround(radius * (res - 1)));
  if (h <= 0) return grid;
  std::vector<double> values = grid.values();
  for (int d = 0; d < grid.dims(); ++d) {
    if (!axes.empty() &&
        std::find(axes.begin(), axes.end(), grid.axes()[d]) == axes.end()) {
      continue;
    }
    std::vector<double> next(values.size());
    const int lines = grid.dims() == 1 ? 1 : res;
    for (int line = 0; line < lines; ++line) {
      auto index = [&](int k) -> std::size_t {
        if (grid.dims() == 1) return k;
        return d == 0 ? static_cast<std::size_t>(k) * res + line
                      : static_cast<std::size_t>(line) * res + k;
      };
      for (int k = 0; k < res; ++k) {
        const int lo = std::max(0, k - h), hi = std::min(res - 1, k + h);
        double s = 0.0;
        for (int m = lo; m <= hi; ++m) s += values[index(m)];
        next[index(k)] = s / (hi - lo + 1);
      }
    }
    values = std::move(next);
  }
  return MembershipGrid(grid.axes(), res, std::move(values));
}

}  // namespace meaning
