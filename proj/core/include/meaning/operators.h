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

// Meaning-operators: region transforms standing for words and phrases.
//
// An operator has an external body (what it does to a narrative region) and,
// optionally, an internal context with a parameter region. Another operator
// can modify that parameter region (ComposeBlock); the external body is then
// re-derived from the modified parameters, giving a block-operator.

#ifndef MEANING_OPERATORS_H_
#define MEANING_OPERATORS_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "meaning/region.h"

namespace meaning {

class MeaningOperator;

// f: [0,1] -> [0,1] from a named family ("very", "not", "somewhat", ...).
// With no target axes the function applies to the whole region membership;
// otherwise to the standalone factor over exactly those axes.
struct Pointwise {
  std::string family;
  std::vector<AxisId> target_axes;
};

// Replaces the factor over target_axes with a fixed grid.
struct Projection {
  std::vector<AxisId> target_axes;
  MembershipGrid replacement;
};

// One trajectory of the trajectory form: a quadratic spline from `start`
// through `control` to `end`, with a piecewise-linear membership multiplier
// sampled uniformly over the trajectory parameter.
struct TrajectoryAnchor {
  std::vector<double> start;
  std::vector<double> control;
  std::vector<double> end;
  std::vector<double> membership_curve = {1.0, 1.0};
};

enum class TransformForm {
  kTrajectory,
  // Compression of one axis: points move t -> min(1, t / amount).
  kRescale,
  // Translation of one axis by `amount`.
  kShift,
  // Box blur of radius `amount` on the factors covering target_axes.
  kSmooth,
};

struct GeneralTransform {
  TransformForm form = TransformForm::kRescale;
  std::vector<AxisId> target_axes;
  double amount = 1.0;
  std::vector<TrajectoryAnchor> anchors;
};

enum class ConjunctionKind { kAnd, kOr };

struct Conjunction {
  ConjunctionKind kind = ConjunctionKind::kAnd;
  std::vector<MeaningOperator> operands;
};

struct Negation {
  std::shared_ptr<const MeaningOperator> operand;
};

// Parts act on disjoint axis subsets.
struct DirectSum {
  std::vector<MeaningOperator> parts;
};

// Noun body: installs `base` into an unspecified region, then applies the
// modifiers composed into the noun; on an existing region only the modifiers
// run.
struct Actualize {
  Region base;
  std::vector<MeaningOperator> modifiers;
};

// Operator restricted to a subspace: embed, apply, project back.
struct Restriction {
  std::shared_ptr<const MeaningOperator> inner;
  std::vector<AxisId> axes;
};

enum class DerivationKind {
  kNone,
  // External projection grid = parameter region, relabelled onto
  // external_axes.
  kCopy,
  // External projection = distance/time ridge s = slope * t whose slope is
  // slope_scale times the parameter centroid on the first internal axis.
  kRidge,
  // Noun bodies; the modifier list grows with each composition.
  kActualize,
};

struct Derivation {
  DerivationKind kind = DerivationKind::kNone;
  std::vector<AxisId> external_axes;
  double width = 0.08;
  double slope_scale = 2.0;
  int resolution = MembershipGrid::kDefaultResolution;

  bool operator==(const Derivation &other) const = default;
};

bool operator==(const Pointwise &a, const Pointwise &b);
bool operator==(const Projection &a, const Projection &b);
bool operator==(const TrajectoryAnchor &a, const TrajectoryAnchor &b);
bool operator==(const GeneralTransform &a, const GeneralTransform &b);
bool operator==(const Conjunction &a, const Conjunction &b);
bool operator==(const Negation &a, const Negation &b);
bool operator==(const DirectSum &a, const DirectSum &b);
bool operator==(const Actualize &a, const Actualize &b);
bool operator==(const Restriction &a, const Restriction &b);

class MeaningOperator {
 public:
  using Body = std::variant<Pointwise, Projection, GeneralTransform,
                            Conjunction, Negation, DirectSum, Actualize,
                            Restriction>;

  MeaningOperator() : body_(Pointwise{"identity", {}}) {}
  explicit MeaningOperator(Body body, std::string name = {});

  // Operator whose external body is derived from `parameter_region` over
  // `internal_context`. For kActualize, `base` is the noun's default region.
  static MeaningOperator Block(std::string name, Context internal_context,
                               Region parameter_region, Derivation derivation,
                               std::optional<Region> base = std::nullopt);

  const std::string &name() const { return name_; }
  const Body &body() const { return body_; }
  const std::optional<Context> &internal_context() const {
    return internal_context_;
  }
  const std::optional<Region> &parameter_region() const {
    return parameter_region_;
  }
  const Derivation &derivation() const { return derivation_; }
  // Membership-weighted centroid of the parameter region per internal axis.
  const std::map<AxisId, double> &parameters() const { return parameters_; }

  // Axes of the narrative context the operator reads or writes.
  std::vector<AxisId> ExternalAxes() const;

  MeaningOperator WithName(std::string name) const;

  // Reassembles a block from persisted parts without re-deriving its body.
  static MeaningOperator Restore(std::string name, Body body,
                                 std::optional<Context> internal_context,
                                 std::optional<Region> parameter_region,
                                 Derivation derivation,
                                 std::map<AxisId, double> parameters);

  bool operator==(const MeaningOperator &other) const;

 private:
  friend MeaningOperator ComposeBlock(const MeaningOperator &modifier,
                                      const MeaningOperator &target);

  // Recomputes parameters_ and, unless kActualize/kNone, the external body.
  void DeriveBody();

  Body body_;
  std::string name_;
  std::optional<Context> internal_context_;
  std::optional<Region> parameter_region_;
  Derivation derivation_;
  std::map<AxisId, double> parameters_;
};

// Ordered line of block-operators applied left to right.
struct PhraseOperator {
  std::vector<MeaningOperator> line;
  Context context;
};

// Pointwise family registry.
bool HasPointwiseFamily(std::string_view family);
double EvaluatePointwise(std::string_view family, double x);
std::vector<std::string> PointwiseFamilies();

// Convenience constructors.
MeaningOperator MakeHedge(std::string family, std::vector<AxisId> target = {});
MeaningOperator MakeProjection(std::string name, MembershipGrid replacement);
MeaningOperator MakeRescale(std::string name, AxisId axis, double k);
MeaningOperator MakeShift(std::string name, AxisId axis, double offset);
MeaningOperator MakeSmooth(std::string name, std::vector<AxisId> axes,
                           double radius);
MeaningOperator MakeConjunction(ConjunctionKind kind,
                                std::vector<MeaningOperator> operands);
MeaningOperator MakeNegation(MeaningOperator operand);
MeaningOperator MakeDirectSum(std::vector<MeaningOperator> parts);

Region Apply(const MeaningOperator &op, const Region &region);
Region ApplyPhrase(const PhraseOperator &phrase, const Region &source);
Region ApplyLine(const std::vector<MeaningOperator> &line, const Region &source);

// Complement of the whole region membership. Multi-factor regions are first
// flattened into one joint grid (at most two axes).
Region ApplyNot(const Region &region);

// Named pointwise hedge. With target axes, only the factor over exactly those
// axes changes.
Region ApplyHedge(std::string_view name, const Region &region,
                  const std::vector<AxisId> &target_axes = {});

// h = sqrt(f g). Factors on disjoint axes are kept with halved exponents;
// overlapping factor groups are flattened.
Region ApplyAnd(const Region &f, const Region &g);
// h = 1 - sqrt((1 - f)(1 - g)) on a flattened joint grid.
Region ApplyOr(const Region &f, const Region &g);
// N-ary forms with exponents 1/n.
Region CombineRegions(ConjunctionKind kind, const std::vector<Region> &operands);

// Returns (first(A), second(A)): the second part never sees the first part's
// output.
std::pair<Region, Region> ApplyBut(const Region &source,
                                   const PhraseOperator &first,
                                   const PhraseOperator &second);

Region ApplyProjectionAdjective(const Region &region,
                                const std::vector<AxisId> &target_axes,
                                const MembershipGrid &replacement);

Region ApplyGeneralTransform(const Region &region, const GeneralTransform &t);

// Block-operator: `modifier` applied to target's parameter region, target's
// external body re-derived. Throws when the target has no internal context or
// the modifier acts outside it.
MeaningOperator ComposeBlock(const MeaningOperator &modifier,
                             const MeaningOperator &target);

// Membership-weighted centroid per context axis (0.5 for unspecified axes).
std::map<AxisId, double> ParameterCentroid(const Region &region);

// Normalized box filter along `axes` (all grid axes when empty).
MembershipGrid BoxFilter(const MembershipGrid &grid, double radius,
                         const std::vector<AxisId> &axes = {});

}  // namespace meaning

#endif  // MEANING_OPERATORS_H_
