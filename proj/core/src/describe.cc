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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "meaning/abstraction.h"
#include "meaning/error.h"

namespace meaning {

namespace {

constexpr double kGridEps = 1e-12;

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments MomentsOf(const std::vector<double> &v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  return m;
}

double Fuzziness(const std::vector<double> &v) {
  double f = 0.0;
  for (double x : v) f += std::min(x, 1.0 - x);
  return f / static_cast<double>(v.size());
}

std::vector<AxisId> PairAxes(const Region &x, const Region &t) {
  std::set<AxisId> s;
  for (const auto &a : x.CoveredAxes()) s.insert(a);
  for (const auto &a : t.CoveredAxes()) s.insert(a);
  std::vector<AxisId> axes;
  // Keep the target's axis order.
  for (const auto &a : t.context().axes()) {
    if (s.erase(a)) axes.push_back(a);
  }
  for (const auto &a : x.context().axes()) {
    if (s.erase(a)) axes.push_back(a);
  }
  return axes;
}

int PairResolution(const Region &a, const Region &b, int fallback) {
  int res = 0;
  for (const auto &f : a.factors()) res = std::max(res, f.grid.resolution());
  for (const auto &f : b.factors()) res = std::max(res, f.grid.resolution());
  return res == 0 ? fallback : res;
}

double ScorePair(const Region &x, const Region &t, int fallback_res) {
  const auto axes = PairAxes(x, t);
  if (axes.empty()) {
    // Both unspecified: identical.
    return 1.0;
  }
  if (axes.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "goal test compares regions over at most two axes");
  }
  const int res = PairResolution(x, t, fallback_res);
  const auto xs = SampleLattice(x, axes, res);
  const auto ts = SampleLattice(t, axes, res);
  double diff = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) diff += std::abs(xs[i] - ts[i]);
  diff /= static_cast<double>(xs.size());
  const Moments mx = MomentsOf(xs);
  const Moments mt = MomentsOf(ts);
  double corr = 0.0;
  if (mx.var < kGridEps && mt.var < kGridEps) {
    corr = diff < 1e-9 ? 1.0 : 0.0;
  } else if (mx.var >= kGridEps && mt.var >= kGridEps) {
    double cov = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      cov += (xs[i] - mx.mean) * (ts[i] - mt.mean);
    }
    corr = cov / std::sqrt(mx.var * mt.var);
  }
  return 0.5 * std::abs(corr) + 0.5 * (1.0 - diff);
}

}  // namespace

GoalTest::GoalTest(std::vector<Region> targets, int resolution)
    : targets_(std::move(targets)), resolution_(resolution) {}

double GoalTest::Satisfaction(const std::vector<Region> &results) const {
  if (results.size() != targets_.size() || targets_.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "goal test needs one result per target");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    s += ScorePair(results[i], targets_[i], resolution_);
  }
  return s / static_cast<double>(results.size());
}

Region GoalTest::Apply(const std::vector<Region> &results) const {
  const double s = Satisfaction(results);
  const double w = kMinWidth + kWidthSlope * (1.0 - s);
  const Context ctx(kGoalAxis, {kGoalAxis});
  return Region(ctx,
                {Factor{MembershipGrid::Tabulate(
                            {kGoalAxis}, resolution_,
                            [s, w](std::span<const double> g) {
                              const double d = g[0] - s;
                              return std::exp(-d * d / (2.0 * w * w));
                            }),
                        1.0}},
                "goal");
}

GoalSummary SummarizeGoal(const Region &goal_region, double goal_threshold) {
  const auto grid = FlattenFactors(goal_region);
  GoalSummary out;
  if (!grid || grid->dims() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "goal region must be one-dimensional");
  }
  const int res = grid->resolution();
  const double cut = 1.0 - goal_threshold;
  double mass = 0.0;
  double moment = 0.0;
  double outside = 0.0;
  std::vector<double> values(res);
  for (int k = 0; k < res; ++k) {
    const double g = MembershipGrid::NodeCoord(k, res);
    const double v = grid->At(k);
    values[k] = v;
    mass += v;
    moment += g * v;
    if (g >= cut - kGridEps) {
      out.membership = std::max(out.membership, v);
    } else {
      outside = std::max(outside, v);
    }
  }
  out.mean = mass > 0.0 ? moment / mass : 0.0;
  out.met = out.membership >= cut && outside < cut;
  out.fuzziness = Fuzziness(values);
  return out;
}

std::vector<std::string> DescribeResult::Names() const {
  std::vector<std::string> names;
  for (const auto &e : composition) names.push_back(e.op.name());
  return names;
}

namespace {

std::string Join(const std::vector<PoolEntry> &comp) {
  if (comp.empty()) return "(identity)";
  std::string s;
  for (const auto &e : comp) {
    if (!s.empty()) s += "->";
    s += e.op.name();
  }
  return s;
}

struct Evaluated {
  bool valid = false;
  GoalSummary summary;
};

class Evaluator {
 public:
  explicit Evaluator(const DescribeProblem &problem) : problem_(problem) {}

  Evaluated Run(const std::vector<PoolEntry> &comp) {
    ++count_;
    std::vector<MeaningOperator> ops;
    for (const auto &e : comp) ops.push_back(e.op);
    std::vector<Region> results;
    try {
      for (const auto &src : problem_.sources) {
        results.push_back(ApplyComposition(ops, src));
      }
      return {true,
              SummarizeGoal(problem_.goal.Apply(results), problem_.goal_threshold)};
    } catch (const Error &) {
      return {};
    }
  }

  int count() const { return count_; }

 private:
  const DescribeProblem &problem_;
  int count_ = 0;
};

struct Node {
  std::vector<PoolEntry> comp;
  GoalSummary summary;
  std::vector<double> trace;
  std::set<AxisId> bound;
};

bool Intersects(const std::vector<AxisId> &axes, const std::set<AxisId> &set) {
  for (const auto &a : axes) {
    if (set.count(a)) return true;
  }
  return false;
}

std::string Fixed(double v) {
  std::ostringstream os;
  os.precision(4);
  os << std::fixed << v;
  return os.str();
}

}  // namespace

long ExhaustiveCount(std::size_t pool_size, int depth) {
  long total = 0;
  long power = 1;
  for (int d = 1; d <= depth; ++d) {
    power *= static_cast<long>(pool_size);
    total += power;
  }
  return total;
}

std::vector<PoolEntry> RefineComposition(const std::vector<PoolEntry> &composition,
                                         const DescribeProblem &problem,
                                         std::vector<RefinementStep> *steps,
                                         int *visited) {
  std::vector<PoolEntry> out;
  for (const auto &element : composition) {
    if (element.level == 0) {
      out.push_back(element);
      continue;
    }
    std::vector<AxisId> y = element.op.ExternalAxes();
    if (y.empty()) y = problem.final_axes;
    std::vector<const PoolEntry *> lower;
    for (const auto &e : problem.pool) {
      if (e.level < element.level) lower.push_back(&e);
    }
    std::vector<Region> probes = problem.probes;
    if (probes.empty()) probes = SmoothProbes(y);

    bool replaced = false;
    RefinementStep step;
    step.element = element.op.name();
    const std::size_t n = lower.size();
    for (int len = 1; len <= 3 && !replaced && n > 0; ++len) {
      std::vector<std::size_t> idx(len, 0);
      while (true) {
        std::vector<MeaningOperator> seq;
        for (auto i : idx) seq.push_back(lower[i]->op);
        if (visited) ++*visited;
        try {
          const auto v = IsAbstracting({element.op}, {seq}, y, problem.params, probes);
          if (v.holds) {
            for (auto i : idx) {
              out.push_back(*lower[i]);
              step.replacement.push_back(lower[i]->op.name());
            }
            step.residual = v.worst_residual;
            replaced = true;
            break;
          }
        } catch (const Error &) {
          // Sequences acting off Y or failing on a probe do not qualify.
        }
        int pos = len - 1;
        while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
        if (pos < 0) break;
      }
    }
    if (!replaced) out.push_back(element);
    if (steps) steps->push_back(std::move(step));
  }
  return out;
}

DescribeResult Describe(const DescribeProblem &problem) {
  if (problem.sources.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "describe needs at least one source");
  }
  if (problem.pool.empty()) throw NoDescriptionError("operator pool is empty");

  const std::set<AxisId> final_axes(problem.final_axes.begin(),
                                    problem.final_axes.end());
  bool reachable = false;
  int top = 0;
  for (const auto &e : problem.pool) {
    reachable |= Intersects(e.op.ExternalAxes(), final_axes);
    top = std::max(top, e.level);
  }
  if (!reachable) {
    throw NoDescriptionError("no operator in the pool acts on the final context");
  }
  std::set<AxisId> source_axes;
  for (const auto &s : problem.sources) {
    for (const auto &a : s.context().axes()) source_axes.insert(a);
  }

  DescribeResult result;
  Evaluator eval(problem);
  Node root;
  root.summary = eval.Run({}).summary;
  root.trace = {root.summary.mean};
  result.log.push_back("start " + Fixed(root.summary.mean));

  Node best = root;
  std::vector<Node> beam = {root};
  for (int depth = 1; depth <= problem.max_depth; ++depth) {
    std::vector<Node> next;
    for (const auto &node : beam) {
      std::set<AxisId> scope = source_axes;
      scope.insert(final_axes.begin(), final_axes.end());
      scope.insert(node.bound.begin(), node.bound.end());
      for (const auto &entry : problem.pool) {
        if (entry.level != top) continue;
        const auto axes = entry.op.ExternalAxes();
        if (!axes.empty() && !Intersects(axes, scope)) continue;
        Node child;
        child.comp.reserve(node.comp.size() + 1);
        child.comp.push_back(entry);
        child.comp.insert(child.comp.end(), node.comp.begin(), node.comp.end());
        const Evaluated ev = eval.Run(child.comp);
        if (!ev.valid || !(ev.summary.mean > node.summary.mean)) continue;
        child.summary = ev.summary;
        child.trace = node.trace;
        child.trace.push_back(ev.summary.mean);
        child.bound = node.bound;
        child.bound.insert(axes.begin(), axes.end());
        next.push_back(std::move(child));
      }
    }
    if (next.empty()) break;
    std::stable_sort(next.begin(), next.end(), [](const Node &a, const Node &b) {
      return a.summary.mean > b.summary.mean;
    });
    if (static_cast<int>(next.size()) > problem.beam_width) {
      next.resize(problem.beam_width);
    }
    beam = std::move(next);
    result.log.push_back("depth " + std::to_string(depth) + " best " +
                         Join(beam.front().comp) + " " +
                         Fixed(beam.front().summary.mean));
    if (beam.front().summary.mean > best.summary.mean) best = beam.front();
  }
  if (best.comp.empty()) {
    throw NoDescriptionError("no composition moves the goal");
  }

  result.abstract_composition = best.comp;
  result.abstract_goal = best.summary;
  result.composition = best.comp;
  result.goal = best.summary;
  result.trace = best.trace;

  int checks = 0;
  while (!result.goal.met) {
    const bool abstract_left = std::any_of(
        result.composition.begin(), result.composition.end(),
        [](const PoolEntry &e) { return e.level > 0; });
    if (!abstract_left) break;
    auto refined =
        RefineComposition(result.composition, problem, &result.refinements, &checks);
    bool changed = refined.size() != result.composition.size();
    for (std::size_t i = 0; !changed && i < refined.size(); ++i) {
      changed = refined[i].op.name() != result.composition[i].op.name() ||
                refined[i].level != result.composition[i].level;
    }
    if (!changed) break;
    result.composition = std::move(refined);
    const Evaluated ev = eval.Run(result.composition);
    if (!ev.valid) break;
    result.goal = ev.summary;
    result.trace.push_back(ev.summary.mean);
    result.log.push_back("refined " + Join(result.composition) + " " +
                         Fixed(ev.summary.mean));
  }
  result.visited = eval.count() + checks;
  result.log.push_back("result " + Join(result.composition) +
                       (result.goal.met ? " goal met" : " goal not met"));
  return result;
}

std::vector<PoolEntry> LexiconPool(const Lexicon &lexicon,
                                   const std::vector<std::string> &exclude_words) {
  std::vector<PoolEntry> pool;
  for (const auto &[word, entry] : lexicon.entries()) {
    if (entry.pos == PartOfSpeech::kConjunction ||
        entry.pos == PartOfSpeech::kQuantifierStub) {
      continue;
    }
    if (std::find(exclude_words.begin(), exclude_words.end(), word) !=
        exclude_words.end()) {
      continue;
    }
    for (const auto &sense : entry.senses) {
      pool.push_back({sense.op, sense.abstraction_level});
    }
  }
  return pool;
}

DescribeResult DescribeOperator(const MeaningOperator &op,
                                std::vector<PoolEntry> pool) {
  const auto axes = op.ExternalAxes();
  if (axes.empty() || axes.size() > 2) {
    throw NoDescriptionError("operator '" + op.name() +
                             "' has no one- or two-axis context to describe");
  }
  const Context ctx("concept", axes);
  std::vector<Region> sources = {
      Region(ctx, "unspecified"),
      Region(ctx, {Factor{MembershipGrid::Constant(axes, 0.5), 1.0}}, "half")};
  std::vector<Region> targets;
  for (const auto &s : sources) targets.push_back(meaning::Apply(op, s));

  DescribeProblem problem;
  problem.sources = std::move(sources);
  problem.pool = std::move(pool);
  problem.goal = GoalTest(std::move(targets));
  problem.final_axes = axes;
  return Describe(problem);
}

DescribeResult DescribeOwnConcept(const std::string &word, const Lexicon &lexicon) {
  const LexiconEntry *entry = lexicon.Find(word);
  if (!entry || entry->senses.empty()) {
    throw Error(ErrorCode::kUnknownWord, "unknown word '" + word + "'");
  }
  return DescribeOperator(entry->senses.front().op,
                          LexiconPool(lexicon, {entry->word}));
}

DescribeResult DescribeRegion(const Region &region, const Lexicon &lexicon) {
  DescribeProblem problem;
  problem.sources = {Region(region.context(), "unspecified")};
  problem.pool = LexiconPool(lexicon);
  problem.goal = GoalTest({region});
  problem.final_axes = region.context().axes();
  return Describe(problem);
}

std::vector<FailureEntry> DescribeFailure(const std::vector<FailureCase> &cases,
                                          const Lexicon &lexicon,
                                          const ComprehensionConfig &config) {
  const auto effectors = lexicon.EffectorAxes();
  std::vector<FailureEntry> out;
  for (const auto &c : cases) {
    std::vector<Region> prefix = {c.source};
    for (const auto &op : c.line) prefix.push_back(meaning::Apply(op, prefix.back()));

    auto fails = [&](std::size_t k) {
      if (k == 0) return false;
      CheckInput in;
      in.source = c.source;
      in.change_reference = prefix[k - 1];
      in.result = prefix[k];
      in.mood = c.mood;
      in.effector_axes = effectors;
      return Evaluate(in, config).scores.at(c.check) < 1.0;
    };
    if (!fails(prefix.size() - 1)) continue;

    FailureEntry entry;
    entry.label = c.label;
    entry.check = c.check;
    std::size_t first = 1;
    while (!fails(first)) ++first;
    entry.first_failing = static_cast<int>(first);
    entry.last_passing = static_cast<int>(first - 1);
    auto words = [&](const Region &r) -> std::vector<std::string> {
      try {
        return DescribeRegion(r, lexicon).Names();
      } catch (const Error &) {
        return {};
      }
    };
    entry.passing_description = words(prefix[first - 1]);
    entry.failing_description = words(prefix[first]);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace meaning
