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

// Contexts, axes and fuzzy regions.
//
// A region is a fuzzy subset of the unit hypercube spanned by a context's
// axes. It is stored as a product of one- and two-dimensional membership
// grids, each raised to a positive exponent:
//
//   membership(p) = prod_i m_i(p)^alpha_i
//
// Axes not covered by any factor are unspecified and contribute 1. All values
// are immutable after construction; operations return new regions.

#ifndef MEANING_REGION_H_
#define MEANING_REGION_H_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace meaning {

using AxisId = std::string;

class Region;

enum class AxisKind { kBasic, kDerived };

struct Axis {
  AxisId id;
  std::string name;
  AxisKind kind = AxisKind::kBasic;
  // Reference region defining the axis values. Present iff kind == kDerived.
  std::shared_ptr<const Region> reference;
  std::string scale_note;
  // Bound to a system output channel (see comprehension::ExtractEffector).
  bool effector = false;
};

inline constexpr std::size_t kMaxContextAxes = 50;

// Ordered set of axes; the coordinate system regions live in.
class Context {
 public:
  Context() = default;
  Context(std::string id, std::vector<AxisId> axes,
          std::optional<std::string> parent = std::nullopt);

  const std::string &id() const { return id_; }
  const std::vector<AxisId> &axes() const { return axes_; }
  const std::optional<std::string> &parent() const { return parent_; }

  bool Contains(const AxisId &axis) const;

  Context WithId(std::string id) const;
  Context WithParent(std::optional<std::string> parent) const;

  bool operator==(const Context &other) const = default;

 private:
  std::string id_;
  std::vector<AxisId> axes_;
  std::optional<std::string> parent_;
};

struct ReferencePoint {
  std::vector<double> coords;
  double membership = 0.0;

  bool operator==(const ReferencePoint &other) const = default;
};

// Samples are stored as multiples of 2^-32. This keeps 1 - v exact, so
// complement is an exact involution on stored grids.
double QuantizeMembership(double value);

// Membership samples over one or two axes on a regular node lattice. Node k
// along an axis sits at coordinate k / (resolution - 1). Values are row-major
// with the first axis varying slowest.
class MembershipGrid {
 public:
  static constexpr int kDefaultResolution = 64;

  MembershipGrid() = default;
  MembershipGrid(std::vector<AxisId> axes, int resolution,
                 std::vector<double> values,
                 std::vector<ReferencePoint> source_points = {});

  static MembershipGrid Constant(std::vector<AxisId> axes, double value,
                                 int resolution = kDefaultResolution);

  // Evaluates `fn` at every node. The span holds one coordinate per axis.
  static MembershipGrid Tabulate(
      std::vector<AxisId> axes, int resolution,
      const std::function<double(std::span<const double>)> &fn);

  int dims() const { return static_cast<int>(axes_.size()); }
  const std::vector<AxisId> &axes() const { return axes_; }
  int resolution() const { return resolution_; }
  const std::vector<double> &values() const { return values_; }
  const std::vector<ReferencePoint> &source_points() const {
    return source_points_;
  }
  std::size_t size() const { return values_.size(); }

  double At(int i) const { return values_[i]; }
  double At(int i, int j) const { return values_[i * resolution_ + j]; }

  // Linear (1D) or bilinear (2D) interpolation; coordinates are clamped to
  // [0,1]. Coordinates that land on a node return the stored sample exactly.
  double Sample(std::span<const double> coords) const;

  bool Covers(const AxisId &axis) const;

  MembershipGrid WithAxes(std::vector<AxisId> axes) const;
  MembershipGrid Map(const std::function<double(double)> &fn) const;

  static double NodeCoord(int k, int resolution) {
    return static_cast<double>(k) / (resolution - 1);
  }

  bool operator==(const MembershipGrid &other) const;

 private:
  std::vector<AxisId> axes_;
  int resolution_ = kDefaultResolution;
  std::vector<double> values_;
  std::vector<ReferencePoint> source_points_;
};

enum class InterpolationKernel {
  // Inverse-distance weighting (power 2) attenuated by a Gaussian falloff
  // around the nearest reference points. Default.
  kIdwGaussian,
  // Plain Shepard inverse-distance weighting, power 2.
  kIdw,
  // Piecewise-linear between sorted points, constant beyond the ends. 1D only.
  kLinear,
};

struct GridOptions {
  int resolution = MembershipGrid::kDefaultResolution;
  InterpolationKernel kernel = InterpolationKernel::kIdwGaussian;
  double falloff_sigma = 0.15;
};

// Builds a grid from scattered reference points. The node nearest to each
// reference point is pinned to that point's membership (averaged when several
// points share a node). Throws Error(kInvalidArgument) naming the offending
// point index on empty input or out-of-range values.
MembershipGrid BuildGrid(std::vector<AxisId> axes,
                         const std::vector<ReferencePoint> &points,
                         const GridOptions &options = {});

struct Factor {
  MembershipGrid grid;
  double alpha = 1.0;

  bool operator==(const Factor &other) const = default;
};

class Region {
 public:
  Region() = default;
  // Empty (unspecified) region: membership 1 everywhere.
  explicit Region(Context context, std::string label = {});
  // Exponents are taken as given. Throws on overlapping factor axes, axes
  // outside the context, or non-positive exponents.
  Region(Context context, std::vector<Factor> factors, std::string label = {});

  // Same as the factor constructor but rescales exponents to sum to one.
  static Region Normalized(Context context, std::vector<Factor> factors,
                           std::string label = {});

  const Context &context() const { return context_; }
  const std::vector<Factor> &factors() const { return factors_; }
  const std::string &label() const { return label_; }
  bool empty() const { return factors_.empty(); }

  // Index of the factor covering `axis`, or -1.
  int FactorIndexFor(const AxisId &axis) const;
  std::vector<AxisId> CoveredAxes() const;
  double AlphaSum() const;

  Region WithLabel(std::string label) const;
  Region WithContext(Context context) const;
  Region WithFactors(std::vector<Factor> factors) const;

  bool operator==(const Region &other) const = default;

 private:
  Context context_;
  std::vector<Factor> factors_;
  std::string label_;
};

struct Point {
  std::string context;
  std::map<AxisId, double> coords;
};

// Weighted product of factor memberships. Equal values are grouped first so
// that x^a * x^b is evaluated as x^(a+b), and an exponent sum within 1e-12 of
// one returns x itself.
double CombineFactors(std::span<const double> values,
                      std::span<const double> alphas);

double Membership(const Region &region, const Point &point);

// Membership at coordinates given for the region's covered axes, in
// region.CoveredAxes() order is not required: a lookup by axis id is used.
double MembershipAt(const Region &region,
                    const std::map<AxisId, double> &coords);

// Keeps only the factors lying inside `keep_axes`. Throws NonSeparableError
// when a factor straddles the keep/discard boundary.
Region Project(const Region &region, const std::vector<AxisId> &keep_axes);

// Rewrites a derived axis through its reference region by function
// composition: A(..., X(x1, x2), ...). The reference region may cover at most
// two axes; deeper hierarchies are expanded one axis at a time.
Region ExpandAxis(const Region &region, const Axis &axis);

struct RegionStats {
  double max_membership = 1.0;
  double mean_membership = 1.0;
  double coverage_fraction = 1.0;
  double coverage_threshold = 0.0;
};

// Statistics over the cartesian product of the factor grids.
// coverage_fraction is the fraction of samples with membership > tau.
RegionStats ComputeStats(const Region &region, double tau);

// Memberships of a region at every node of the product lattice over `axes`
// (first axis slowest). Every factor must lie inside `axes`. `offset` shifts
// the lookup coordinates: the value at node y is membership(clamp(y - offset)).
std::vector<double> SampleLattice(const Region &region,
                                  const std::vector<AxisId> &axes,
                                  int resolution,
                                  std::span<const double> offset = {});

struct JointSamples {
  std::vector<AxisId> axes;
  int resolution = MembershipGrid::kDefaultResolution;
  std::vector<double> a;
  std::vector<double> b;
};

// Samples both regions on the lattice over the union of their covered axes.
// Contexts are compared by axis membership, not by id.
JointSamples SampleJoint(const Region &a, const Region &b);

// L-infinity distance over the joint sample lattice. Throws
// ContextMismatchError if the regions live in different contexts.
double RegionDistance(const Region &a, const Region &b);

// Collapses all factors of `region` into one grid over its covered axes
// (at most two). Empty regions have no grid to return: std::nullopt.
std::optional<MembershipGrid> FlattenFactors(const Region &region);

// Factor union over the concatenation of the two contexts. Exponents are kept.
Region DirectSumRegions(const Region &a, const Region &b);

// Context whose axes are the union of both, in a-then-b order. Returns `a`
// unchanged when it already contains every axis of `b`.
Context UnionContext(const Context &a, const Context &b);

}  // namespace meaning

#endif  // MEANING_REGION_H_
