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

#include "meaning/io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "meaning/error.h"

namespace meaning {

namespace {

// ---------------------------------------------------------------------------
// Checked access

std::string Sub(const std::string &path, const std::string &key) {
  return path + "." + key;
}

std::string At(const std::string &path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json &Object(const Json &j, const std::string &path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  return j;
}

const Json &Req(const Json &j, const std::string &path, const std::string &key) {
  Object(j, path);
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(Sub(path, key), "missing field");
  return *it;
}

const Json *Opt(const Json &j, const std::string &path, const std::string &key) {
  Object(j, path);
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

const Json &Array(const Json &j, const std::string &path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::string String(const Json &j, const std::string &path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

double Number(const Json &j, const std::string &path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

long Integer(const Json &j, const std::string &path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<long>();
}

bool Bool(const Json &j, const std::string &path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected a boolean");
  return j.get<bool>();
}

std::string ReqString(const Json &j, const std::string &path, const std::string &key) {
  return String(Req(j, path, key), Sub(path, key));
}

double ReqNumber(const Json &j, const std::string &path, const std::string &key) {
  return Number(Req(j, path, key), Sub(path, key));
}

long ReqInteger(const Json &j, const std::string &path, const std::string &key) {
  return Integer(Req(j, path, key), Sub(path, key));
}

std::vector<std::string> Strings(const Json &j, const std::string &path) {
  Array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(String(j[i], At(path, i)));
  return out;
}

std::vector<double> Numbers(const Json &j, const std::string &path) {
  Array(j, path);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(Number(j[i], At(path, i)));
  return out;
}

std::vector<int> Integers(const Json &j, const std::string &path) {
  Array(j, path);
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<int>(Integer(j[i], At(path, i))));
  }
  return out;
}

// Runs `fn`, turning engine validation errors into schema errors at `path`.
template <typename Fn>
auto Validated(const std::string &path, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    throw SchemaError(path, e.what());
  }
}

// ---------------------------------------------------------------------------
// Enum names

template <typename E>
struct EnumName {
  E value;
  const char *name;
};

constexpr EnumName<AxisKind> kAxisKinds[] = {{AxisKind::kBasic, "basic"},
                                             {AxisKind::kDerived, "derived"}};
constexpr EnumName<TransformForm> kForms[] = {
    {TransformForm::kTrajectory, "trajectory"},
    {TransformForm::kRescale, "rescale"},
    {TransformForm::kShift, "shift"},
    {TransformForm::kSmooth, "smooth"}};
constexpr EnumName<ConjunctionKind> kConjunctions[] = {
    {ConjunctionKind::kAnd, "and"}, {ConjunctionKind::kOr, "or"}};
constexpr EnumName<DerivationKind> kDerivations[] = {
    {DerivationKind::kNone, "none"},
    {DerivationKind::kCopy, "copy"},
    {DerivationKind::kRidge, "ridge"},
    {DerivationKind::kActualize, "actualize"}};
constexpr EnumName<HeadKind> kHeadKinds[] = {
    {HeadKind::kNone, "none"}, {HeadKind::kVerb, "verb"}, {HeadKind::kNoun, "noun"}};
constexpr EnumName<Expr::Kind> kExprKinds[] = {
    {Expr::Kind::kTerm, "term"}, {Expr::Kind::kAnd, "and"}, {Expr::Kind::kOr, "or"}};
constexpr EnumName<Mood> kMoods[] = {{Mood::kImperative, "imperative"},
                                     {Mood::kRealis, "realis"},
                                     {Mood::kConditional, "conditional"}};
constexpr EnumName<Action> kActions[] = {
    {Action::kAccepted, "accepted"},
    {Action::kRetriedSpareContext, "retried_spare_context"},
    {Action::kClarificationRequested, "clarification_requested"}};

template <typename E, std::size_t N>
const char *NameOf(const EnumName<E> (&table)[N], E value) {
  for (const auto &e : table) {
    if (e.value == value) return e.name;
  }
  return "?";
}

template <typename E, std::size_t N>
E ParseEnum(const EnumName<E> (&table)[N], const Json &j, const std::string &path) {
  const std::string s = String(j, path);
  for (const auto &e : table) {
    if (s == e.name) return e.value;
  }
  throw SchemaError(path, "unknown value '" + s + "'");
}

Flag FlagFromJson(const Json &j, const std::string &path) {
  const std::string s = String(j, path);
  auto f = ParseFlag(s);
  if (!f) throw SchemaError(path, "unknown flag '" + s + "'");
  return *f;
}

// ---------------------------------------------------------------------------
// Operator bodies

Json BodyToJson(const MeaningOperator::Body &body);
MeaningOperator::Body BodyFromJson(const Json &j, const std::string &path);

Json OperatorsToJson(const std::vector<MeaningOperator> &ops) {
  Json arr = Json::array();
  for (const auto &op : ops) arr.push_back(OperatorToJson(op));
  return arr;
}

std::vector<MeaningOperator> OperatorsFromJson(const Json &j, const std::string &path) {
  Array(j, path);
  std::vector<MeaningOperator> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(OperatorFromJson(j[i], At(path, i)));
  }
  return out;
}

Json BodyToJson(const MeaningOperator::Body &body) {
  return std::visit(
      [](const auto &b) -> Json {
        using T = std::decay_t<decltype(b)>;
        Json j;
        if constexpr (std::is_same_v<T, Pointwise>) {
          j["kind"] = "pointwise";
          j["family"] = b.family;
          j["target_axes"] = b.target_axes;
        } else if constexpr (std::is_same_v<T, Projection>) {
          j["kind"] = "projection";
          j["target_axes"] = b.target_axes;
          j["replacement"] = GridToJson(b.replacement);
        } else if constexpr (std::is_same_v<T, GeneralTransform>) {
          j["kind"] = "transform";
          j["form"] = NameOf(kForms, b.form);
          j["target_axes"] = b.target_axes;
          j["amount"] = b.amount;
          Json anchors = Json::array();
          for (const auto &a : b.anchors) {
            anchors.push_back({{"start", a.start},
                               {"control", a.control},
                               {"end", a.end},
                               {"membership_curve", a.membership_curve}});
          }
          j["anchors"] = std::move(anchors);
        } else if constexpr (std::is_same_v<T, Conjunction>) {
          j["kind"] = "conjunction";
          j["conjunction"] = NameOf(kConjunctions, b.kind);
          j["operands"] = OperatorsToJson(b.operands);
        } else if constexpr (std::is_same_v<T, Negation>) {
          j["kind"] = "negation";
          j["operand"] = OperatorToJson(*b.operand);
        } else if constexpr (std::is_same_v<T, DirectSum>) {
          j["kind"] = "direct_sum";
          j["parts"] = OperatorsToJson(b.parts);
        } else if constexpr (std::is_same_v<T, Actualize>) {
          j["kind"] = "actualize";
          j["base"] = RegionToJson(b.base);
          j["modifiers"] = OperatorsToJson(b.modifiers);
        } else {
          j["kind"] = "restriction";
          j["inner"] = OperatorToJson(*b.inner);
          j["axes"] = b.axes;
        }
        return j;
      },
      body);
}

MeaningOperator::Body BodyFromJson(const Json &j, const std::string &path) {
  const std::string kind = ReqString(j, path, "kind");
  auto axes = [&](const char *key) {
    return Strings(Req(j, path, key), Sub(path, key));
  };
  if (kind == "pointwise") {
    Pointwise p{ReqString(j, path, "family"), axes("target_axes")};
    if (!HasPointwiseFamily(p.family)) {
      throw SchemaError(Sub(path, "family"), "unknown family '" + p.family + "'");
    }
    return p;
  }
  if (kind == "projection") {
    return Projection{axes("target_axes"),
                      GridFromJson(Req(j, path, "replacement"),
                                   Sub(path, "replacement"))};
  }
  if (kind == "transform") {
    GeneralTransform t;
    t.form = ParseEnum(kForms, Req(j, path, "form"), Sub(path, "form"));
    t.target_axes = axes("target_axes");
    t.amount = ReqNumber(j, path, "amount");
    if (const Json *anchors = Opt(j, path, "anchors")) {
      const std::string ap = Sub(path, "anchors");
      Array(*anchors, ap);
      for (std::size_t i = 0; i < anchors->size(); ++i) {
        const Json &a = (*anchors)[i];
        const std::string p = At(ap, i);
        TrajectoryAnchor anchor;
        anchor.start = Numbers(Req(a, p, "start"), Sub(p, "start"));
        anchor.control = Numbers(Req(a, p, "control"), Sub(p, "control"));
        anchor.end = Numbers(Req(a, p, "end"), Sub(p, "end"));
        if (const Json *m = Opt(a, p, "membership_curve")) {
          anchor.membership_curve = Numbers(*m, Sub(p, "membership_curve"));
        }
        t.anchors.push_back(std::move(anchor));
      }
    }
    return t;
  }
  if (kind == "conjunction") {
    return Conjunction{
        ParseEnum(kConjunctions, Req(j, path, "conjunction"), Sub(path, "conjunction")),
        OperatorsFromJson(Req(j, path, "operands"), Sub(path, "operands"))};
  }
  if (kind == "negation") {
    return Negation{std::make_shared<const MeaningOperator>(
        OperatorFromJson(Req(j, path, "operand"), Sub(path, "operand")))};
  }
  if (kind == "direct_sum") {
    return DirectSum{OperatorsFromJson(Req(j, path, "parts"), Sub(path, "parts"))};
  }
  if (kind == "actualize") {
    return Actualize{RegionFromJson(Req(j, path, "base"), Sub(path, "base")),
                     OperatorsFromJson(Req(j, path, "modifiers"), Sub(path, "modifiers"))};
  }
  if (kind == "restriction") {
    return Restriction{std::make_shared<const MeaningOperator>(
                           OperatorFromJson(Req(j, path, "inner"), Sub(path, "inner"))),
                       axes("axes")};
  }
  throw SchemaError(Sub(path, "kind"), "unknown operator kind '" + kind + "'");
}

Json DerivationToJson(const Derivation &d) {
  return {{"kind", NameOf(kDerivations, d.kind)},
          {"external_axes", d.external_axes},
          {"width", d.width},
          {"slope_scale", d.slope_scale},
          {"resolution", d.resolution}};
}

Derivation DerivationFromJson(const Json &j, const std::string &path) {
  Derivation d;
  d.kind = ParseEnum(kDerivations, Req(j, path, "kind"), Sub(path, "kind"));
  d.external_axes = Strings(Req(j, path, "external_axes"), Sub(path, "external_axes"));
  if (const Json *v = Opt(j, path, "width")) d.width = Number(*v, Sub(path, "width"));
  if (const Json *v = Opt(j, path, "slope_scale")) {
    d.slope_scale = Number(*v, Sub(path, "slope_scale"));
  }
  if (const Json *v = Opt(j, path, "resolution")) {
    d.resolution = static_cast<int>(Integer(*v, Sub(path, "resolution")));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Parse candidates

Json ExprToJson(const Expr &e) {
  Json j = {{"kind", NameOf(kExprKinds, e.kind)}};
  if (e.kind == Expr::Kind::kTerm) {
    j["mods"] = e.mods;
    j["head"] = e.head;
  } else {
    Json children = Json::array();
    for (const auto &c : e.children) children.push_back(ExprToJson(c));
    j["children"] = std::move(children);
  }
  return j;
}

Expr ExprFromJson(const Json &j, const std::string &path) {
  Expr e;
  e.kind = ParseEnum(kExprKinds, Req(j, path, "kind"), Sub(path, "kind"));
  if (e.kind == Expr::Kind::kTerm) {
    e.mods = Integers(Req(j, path, "mods"), Sub(path, "mods"));
    e.head = static_cast<int>(ReqInteger(j, path, "head"));
    return e;
  }
  const Json &children = Array(Req(j, path, "children"), Sub(path, "children"));
  for (std::size_t i = 0; i < children.size(); ++i) {
    e.children.push_back(ExprFromJson(children[i], At(Sub(path, "children"), i)));
  }
  return e;
}

Json RegionOrNull(const std::optional<Region> &r) {
  return r ? RegionToJson(*r) : Json(nullptr);
}

Json SpareToJson(const SpareContext &s) {
  return {{"context_id", s.context_id},
          {"region", RegionToJson(s.region)},
          {"origin", s.origin}};
}

Json EvaluationToJson(const CandidateEvaluation &c) {
  Json j = {{"index", c.index},
            {"structure", c.structure},
            {"target_contexts", c.target_contexts},
            {"score", c.score},
            {"report", ReportToJson(c.report)},
            {"error", c.error ? Json(*c.error) : Json(nullptr)},
            {"result", RegionOrNull(c.result)}};
  if (c.next_state) j["next_state"] = StateToJson(*c.next_state);
  return j;
}

CandidateEvaluation EvaluationFromJson(const Json &j, const std::string &path) {
  CandidateEvaluation c;
  c.index = static_cast<int>(ReqInteger(j, path, "index"));
  c.structure = ReqString(j, path, "structure");
  c.target_contexts =
      Strings(Req(j, path, "target_contexts"), Sub(path, "target_contexts"));
  c.score = ReqNumber(j, path, "score");
  c.report = ReportFromJson(Req(j, path, "report"), Sub(path, "report"));
  if (const Json *e = Opt(j, path, "error")) c.error = String(*e, Sub(path, "error"));
  if (const Json *r = Opt(j, path, "result")) {
    c.result = RegionFromJson(*r, Sub(path, "result"));
  }
  if (const Json *s = Opt(j, path, "next_state")) {
    c.next_state = StateFromJson(*s, Sub(path, "next_state"));
  }
  return c;
}

std::string Slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Spill(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path.string() + "'");
  }
  out << text;
}

}  // namespace

// ---------------------------------------------------------------------------
// Regions

Json ContextToJson(const Context &context) {
  Json j = {{"id", context.id()}, {"axes", context.axes()}};
  if (context.parent()) j["parent"] = *context.parent();
  return j;
}

Context ContextFromJson(const Json &j, const std::string &path) {
  const std::string id = ReqString(j, path, "id");
  auto axes = Strings(Req(j, path, "axes"), Sub(path, "axes"));
  std::optional<std::string> parent;
  if (const Json *p = Opt(j, path, "parent")) parent = String(*p, Sub(path, "parent"));
  return Validated(path, [&] { return Context(id, std::move(axes), parent); });
}

Json GridToJson(const MembershipGrid &grid) {
  Json j = {{"axes", grid.axes()},
            {"resolution", grid.resolution()},
            {"values", grid.values()}};
  if (!grid.source_points().empty()) {
    Json pts = Json::array();
    for (const auto &p : grid.source_points()) {
      pts.push_back({{"coords", p.coords}, {"membership", p.membership}});
    }
    j["source_points"] = std::move(pts);
  }
  return j;
}

MembershipGrid GridFromJson(const Json &j, const std::string &path) {
  auto axes = Strings(Req(j, path, "axes"), Sub(path, "axes"));
  const int res = static_cast<int>(ReqInteger(j, path, "resolution"));
  auto values = Numbers(Req(j, path, "values"), Sub(path, "values"));
  std::vector<ReferencePoint> points;
  if (const Json *pts = Opt(j, path, "source_points")) {
    const std::string pp = Sub(path, "source_points");
    Array(*pts, pp);
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const std::string p = At(pp, i);
      points.push_back({Numbers(Req((*pts)[i], p, "coords"), Sub(p, "coords")),
                        ReqNumber((*pts)[i], p, "membership")});
    }
  }
  return Validated(path, [&] {
    return MembershipGrid(std::move(axes), res, std::move(values), std::move(points));
  });
}

Json RegionToJson(const Region &region) {
  Json factors = Json::array();
  for (const auto &f : region.factors()) {
    Json g = GridToJson(f.grid);
    g["alpha"] = f.alpha;
    factors.push_back(std::move(g));
  }
  return {{"context", ContextToJson(region.context())},
          {"factors", std::move(factors)},
          {"label", region.label()}};
}

Region RegionFromJson(const Json &j, const std::string &path) {
  Context ctx = ContextFromJson(Req(j, path, "context"), Sub(path, "context"));
  const std::string fp = Sub(path, "factors");
  const Json &arr = Array(Req(j, path, "factors"), fp);
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = At(fp, i);
    factors.push_back({GridFromJson(arr[i], p), ReqNumber(arr[i], p, "alpha")});
  }
  std::string label;
  if (const Json *l = Opt(j, path, "label")) label = String(*l, Sub(path, "label"));
  return Validated(path, [&] {
    return Region(std::move(ctx), std::move(factors), std::move(label));
  });
}

Json AxisToJson(const Axis &axis) {
  Json j = {{"id", axis.id},
            {"name", axis.name},
            {"kind", NameOf(kAxisKinds, axis.kind)},
            {"scale_note", axis.scale_note},
            {"effector", axis.effector}};
  if (axis.reference) j["reference"] = RegionToJson(*axis.reference);
  return j;
}

Axis AxisFromJson(const Json &j, const std::string &path) {
  Axis a;
  a.id = ReqString(j, path, "id");
  if (const Json *v = Opt(j, path, "name")) a.name = String(*v, Sub(path, "name"));
  if (const Json *v = Opt(j, path, "kind")) {
    a.kind = ParseEnum(kAxisKinds, *v, Sub(path, "kind"));
  }
  if (const Json *v = Opt(j, path, "scale_note")) {
    a.scale_note = String(*v, Sub(path, "scale_note"));
  }
  if (const Json *v = Opt(j, path, "effector")) a.effector = Bool(*v, Sub(path, "effector"));
  if (const Json *v = Opt(j, path, "reference")) {
    a.reference = std::make_shared<const Region>(RegionFromJson(*v, Sub(path, "reference")));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Operators

Json OperatorToJson(const MeaningOperator &op) {
  Json j = {{"name", op.name()}, {"body", BodyToJson(op.body())}};
  if (op.internal_context()) {
    j["internal_context"] = ContextToJson(*op.internal_context());
    j["parameter_region"] = RegionToJson(*op.parameter_region());
    j["derivation"] = DerivationToJson(op.derivation());
    Json params = Json::object();
    for (const auto &[axis, v] : op.parameters()) params[axis] = v;
    j["parameters"] = std::move(params);
  }
  return j;
}

MeaningOperator OperatorFromJson(const Json &j, const std::string &path) {
  const std::string name = ReqString(j, path, "name");
  const Json *body = Opt(j, path, "body");
  const Json *ic = Opt(j, path, "internal_context");
  if (!ic) {
    if (!body) throw SchemaError(Sub(path, "body"), "missing field");
    auto b = BodyFromJson(*body, Sub(path, "body"));
    return Validated(path, [&] { return MeaningOperator(std::move(b), name); });
  }
  Context ctx = ContextFromJson(*ic, Sub(path, "internal_context"));
  Region param = RegionFromJson(Req(j, path, "parameter_region"),
                                Sub(path, "parameter_region"));
  Derivation d = DerivationFromJson(Req(j, path, "derivation"), Sub(path, "derivation"));
  if (!body) {
    std::optional<Region> base;
    if (const Json *b = Opt(j, path, "base")) base = RegionFromJson(*b, Sub(path, "base"));
    return Validated(path, [&] {
      return MeaningOperator::Block(name, std::move(ctx), std::move(param),
                                    std::move(d), std::move(base));
    });
  }
  auto b = BodyFromJson(*body, Sub(path, "body"));
  std::map<AxisId, double> params;
  if (const Json *p = Opt(j, path, "parameters")) {
    const std::string pp = Sub(path, "parameters");
    Object(*p, pp);
    for (const auto &[axis, v] : p->items()) params[axis] = Number(v, Sub(pp, axis));
  }
  return Validated(path, [&] {
    return MeaningOperator::Restore(name, std::move(b), std::move(ctx), std::move(param),
                                    std::move(d), std::move(params));
  });
}

// ---------------------------------------------------------------------------
// Lexicon

Json LexiconToJson(const Lexicon &lexicon) {
  Json axes = Json::array();
  for (const auto &a : lexicon.axes()) axes.push_back(AxisToJson(a));
  Json contexts = Json::array();
  for (const auto &c : lexicon.contexts()) contexts.push_back(ContextToJson(c));
  Json regions = Json::object();
  for (const auto &[name, r] : lexicon.regions()) regions[name] = RegionToJson(r);
  Json entries = Json::array();
  for (const auto &[word, e] : lexicon.entries()) {
    Json senses = Json::array();
    for (const auto &s : e.senses) {
      senses.push_back({{"id", s.id},
                        {"op", OperatorToJson(s.op)},
                        {"usage_tags", s.usage_tags},
                        {"abstraction_level", s.abstraction_level},
                        {"home_axes", s.home_axes}});
    }
    entries.push_back({{"word", word},
                       {"pos", std::string(PartOfSpeechName(e.pos))},
                       {"senses", std::move(senses)}});
  }
  return {{"format", kLexiconFormatVersion},
          {"axes", std::move(axes)},
          {"contexts", std::move(contexts)},
          {"regions", std::move(regions)},
          {"entries", std::move(entries)},
          {"inflections", lexicon.inflections()},
          {"multiwords", lexicon.multiwords()}};
}

Lexicon LexiconFromJson(const Json &j, const std::string &path) {
  const long format = ReqInteger(j, path, "format");
  if (format != kLexiconFormatVersion) {
    throw SchemaError(Sub(path, "format"),
                      "unsupported format " + std::to_string(format));
  }
  Lexicon lex;
  {
    const std::string p = Sub(path, "axes");
    const Json &arr = Array(Req(j, path, "axes"), p);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Axis a = AxisFromJson(arr[i], At(p, i));
      Validated(At(p, i), [&] { lex.AddAxis(std::move(a)); });
    }
  }
  {
    const std::string p = Sub(path, "contexts");
    const Json &arr = Array(Req(j, path, "contexts"), p);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Context c = ContextFromJson(arr[i], At(p, i));
      Validated(At(p, i), [&] { lex.AddContext(std::move(c)); });
    }
  }
  if (const Json *regions = Opt(j, path, "regions")) {
    const std::string p = Sub(path, "regions");
    Object(*regions, p);
    for (const auto &[name, r] : regions->items()) {
      lex.AddRegion(name, RegionFromJson(r, Sub(p, name)));
    }
  }
  {
    const std::string p = Sub(path, "entries");
    const Json &arr = Array(Req(j, path, "entries"), p);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ep = At(p, i);
      const std::string word = ReqString(arr[i], ep, "word");
      const std::string pos_name = ReqString(arr[i], ep, "pos");
      PartOfSpeech pos;
      try {
        pos = ParsePartOfSpeech(pos_name);
      } catch (const Error &) {
        throw SchemaError(Sub(ep, "pos"), "unknown part of speech '" + pos_name + "'");
      }
      const std::string sp = Sub(ep, "senses");
      const Json &senses = Array(Req(arr[i], ep, "senses"), sp);
      for (std::size_t k = 0; k < senses.size(); ++k) {
        const std::string q = At(sp, k);
        const Json &sj = senses[k];
        Sense s;
        if (const Json *v = Opt(sj, q, "id")) s.id = String(*v, Sub(q, "id"));
        s.op = OperatorFromJson(Req(sj, q, "op"), Sub(q, "op"));
        if (const Json *v = Opt(sj, q, "usage_tags")) {
          s.usage_tags = Strings(*v, Sub(q, "usage_tags"));
        }
        if (const Json *v = Opt(sj, q, "abstraction_level")) {
          s.abstraction_level = static_cast<int>(Integer(*v, Sub(q, "abstraction_level")));
        }
        if (const Json *v = Opt(sj, q, "home_axes")) {
          s.home_axes = Strings(*v, Sub(q, "home_axes"));
        }
        Validated(q, [&] { lex.AddSense(word, pos, std::move(s)); });
      }
    }
  }
  auto string_map = [&](const char *key, auto add) {
    const Json *m = Opt(j, path, key);
    if (!m) return;
    const std::string p = Sub(path, key);
    Object(*m, p);
    for (const auto &[k, v] : m->items()) add(k, String(v, Sub(p, k)));
  };
  string_map("inflections", [&](const std::string &k, std::string v) {
    lex.AddInflection(k, std::move(v));
  });
  string_map("multiwords", [&](const std::string &k, std::string v) {
    lex.AddMultiword(k, std::move(v));
  });
  return lex;
}

// ---------------------------------------------------------------------------
// Config and reports

Json ConfigToJson(const ComprehensionConfig &c) {
  return {{"contradiction_level", c.contradiction_level},
          {"vacuity_level", c.vacuity_level},
          {"vacuity_fraction", c.vacuity_fraction},
          {"no_change_distance", c.no_change_distance},
          {"vagueness_ratio", c.vagueness_ratio},
          {"vagueness_min_before", c.vagueness_min_before},
          {"effector_level", c.effector_level},
          {"effector_max_width", c.effector_max_width},
          {"mood_penalty", c.mood_penalty},
          {"clarification_penalty", c.clarification_penalty},
          {"threshold", c.threshold},
          {"spare_limit", c.spare_limit}};
}

ComprehensionConfig ConfigFromJson(const Json &j, const std::string &path,
                                   const ComprehensionConfig &base) {
  Object(j, path);
  ComprehensionConfig c = base;
  struct Field {
    const char *key;
    double ComprehensionConfig::*member;
  };
  static constexpr Field kFields[] = {
      {"contradiction_level", &ComprehensionConfig::contradiction_level},
      {"vacuity_level", &ComprehensionConfig::vacuity_level},
      {"vacuity_fraction", &ComprehensionConfig::vacuity_fraction},
      {"no_change_distance", &ComprehensionConfig::no_change_distance},
      {"vagueness_ratio", &ComprehensionConfig::vagueness_ratio},
      {"vagueness_min_before", &ComprehensionConfig::vagueness_min_before},
      {"effector_level", &ComprehensionConfig::effector_level},
      {"effector_max_width", &ComprehensionConfig::effector_max_width},
      {"mood_penalty", &ComprehensionConfig::mood_penalty},
      {"clarification_penalty", &ComprehensionConfig::clarification_penalty},
      {"threshold", &ComprehensionConfig::threshold},
  };
  for (const auto &[key, value] : j.items()) {
    const std::string p = Sub(path, key);
    if (key == "spare_limit") {
      const long v = Integer(value, p);
      if (v < 0) throw SchemaError(p, "must be >= 0");
      c.spare_limit = static_cast<int>(v);
      continue;
    }
    auto it = std::find_if(std::begin(kFields), std::end(kFields),
                           [&](const Field &f) { return key == f.key; });
    if (it == std::end(kFields)) throw SchemaError(p, "unknown field");
    const double v = Number(value, p);
    if (!(v >= 0.0) || (key != "vagueness_ratio" && v > 1.0)) {
      throw SchemaError(p, "out of range");
    }
    c.*(it->member) = v;
  }
  return c;
}

Json ReportToJson(const ComprehensionReport &r) {
  Json flags = Json::array();
  for (Flag f : r.flags) flags.push_back(std::string(FlagName(f)));
  Json scores = Json::object();
  for (const auto &[f, s] : r.scores) scores[std::string(FlagName(f))] = s;
  Json j = {{"flags", std::move(flags)},
            {"scores", std::move(scores)},
            {"aggregate", r.aggregate},
            {"effector_command", nullptr}};
  if (r.effector_command) {
    j["effector_command"] = {{"axis", r.effector_command->axis},
                             {"value", r.effector_command->value}};
  }
  return j;
}

ComprehensionReport ReportFromJson(const Json &j, const std::string &path) {
  ComprehensionReport r;
  {
    const std::string p = Sub(path, "flags");
    const Json &arr = Array(Req(j, path, "flags"), p);
    for (std::size_t i = 0; i < arr.size(); ++i) r.flags.insert(FlagFromJson(arr[i], At(p, i)));
  }
  {
    const std::string p = Sub(path, "scores");
    const Json &m = Object(Req(j, path, "scores"), p);
    for (const auto &[k, v] : m.items()) {
      r.scores[FlagFromJson(Json(k), Sub(p, k))] = Number(v, Sub(p, k));
    }
  }
  r.aggregate = ReqNumber(j, path, "aggregate");
  if (const Json *e = Opt(j, path, "effector_command")) {
    const std::string p = Sub(path, "effector_command");
    r.effector_command = EffectorCommand{ReqString(*e, p, "axis"), ReqNumber(*e, p, "value")};
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sessions

Json CandidateToJson(const ParseCandidate &c) {
  Json tokens = Json::array();
  for (const auto &t : c.tokens) {
    tokens.push_back({{"text", t.text},
                      {"lemma", t.lemma},
                      {"pos", t.pos ? Json(std::string(PartOfSpeechName(*t.pos)))
                                    : Json(nullptr)},
                      {"keyword", t.keyword}});
  }
  Json clauses = Json::array();
  for (const auto &cl : c.clauses) {
    Json chain = Json::array();
    for (const auto &e : cl.chain) chain.push_back(ExprToJson(e));
    clauses.push_back({{"mood", NameOf(kMoods, cl.mood)},
                       {"head_kind", NameOf(kHeadKinds, cl.head_kind)},
                       {"head", cl.head},
                       {"chain", std::move(chain)}});
  }
  return {{"tokens", std::move(tokens)},
          {"reset", c.reset},
          {"clauses", std::move(clauses)},
          {"sense_choices", c.sense_choices}};
}

ParseCandidate CandidateFromJson(const Json &j, const std::string &path) {
  ParseCandidate c;
  {
    const std::string p = Sub(path, "tokens");
    const Json &arr = Array(Req(j, path, "tokens"), p);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string tp = At(p, i);
      Token t;
      t.text = ReqString(arr[i], tp, "text");
      t.lemma = ReqString(arr[i], tp, "lemma");
      if (const Json *pos = Opt(arr[i], tp, "pos")) {
        const std::string name = String(*pos, Sub(tp, "pos"));
        try {
          t.pos = ParsePartOfSpeech(name);
        } catch (const Error &) {
          throw SchemaError(Sub(tp, "pos"), "unknown part of speech '" + name + "'");
        }
      }
      t.keyword = Bool(Req(arr[i], tp, "keyword"), Sub(tp, "keyword"));
      c.tokens.push_back(std::move(t));
    }
  }
  c.reset = Bool(Req(j, path, "reset"), Sub(path, "reset"));
  {
    const std::string p = Sub(path, "clauses");
    const Json &arr = Array(Req(j, path, "clauses"), p);
    if (arr.empty()) throw SchemaError(p, "expected at least one clause");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string cp = At(p, i);
      ClauseParse cl;
      cl.mood = ParseEnum(kMoods, Req(arr[i], cp, "mood"), Sub(cp, "mood"));
      cl.head_kind =
          ParseEnum(kHeadKinds, Req(arr[i], cp, "head_kind"), Sub(cp, "head_kind"));
      cl.head = static_cast<int>(ReqInteger(arr[i], cp, "head"));
      const std::string chp = Sub(cp, "chain");
      const Json &chain = Array(Req(arr[i], cp, "chain"), chp);
      for (std::size_t k = 0; k < chain.size(); ++k) {
        cl.chain.push_back(ExprFromJson(chain[k], At(chp, k)));
      }
      c.clauses.push_back(std::move(cl));
    }
  }
  c.sense_choices = Integers(Req(j, path, "sense_choices"), Sub(path, "sense_choices"));
  return c;
}

Json StateToJson(const SessionState &s) {
  Json nodes = Json::array();
  for (const auto &n : s.hierarchy.nodes()) {
    nodes.push_back({{"context", ContextToJson(n.context)},
                     {"region", RegionToJson(n.region)}});
  }
  Json spares = Json::array();
  for (const auto &sp : s.spares.items()) spares.push_back(SpareToJson(sp));
  return {{"nodes", std::move(nodes)},
          {"indexes", s.hierarchy.indexes()},
          {"active_context", s.active_context},
          {"spare_limit", s.spares.limit()},
          {"spares", std::move(spares)},
          {"fresh_counter", s.fresh_counter}};
}

SessionState StateFromJson(const Json &j, const std::string &path) {
  SessionState s;
  {
    const std::string p = Sub(path, "nodes");
    const Json &arr = Array(Req(j, path, "nodes"), p);
    std::vector<ContextHierarchy::Node> nodes;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string np = At(p, i);
      nodes.push_back({ContextFromJson(Req(arr[i], np, "context"), Sub(np, "context")),
                       RegionFromJson(Req(arr[i], np, "region"), Sub(np, "region"))});
    }
    // Parents may be stored after their children; link them in a second pass.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      Validated(At(p, i), [&] {
        s.hierarchy.Put(nodes[i].context.WithParent(std::nullopt), nodes[i].region);
      });
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].context.parent()) continue;
      Validated(At(p, i), [&] { s.hierarchy.Put(nodes[i].context, nodes[i].region); });
    }
  }
  if (const Json *idx = Opt(j, path, "indexes")) {
    const std::string p = Sub(path, "indexes");
    Object(*idx, p);
    for (const auto &[name, m] : idx->items()) {
      const std::string ip = Sub(p, name);
      Object(m, ip);
      for (const auto &[key, id] : m.items()) {
        const std::string value = String(id, Sub(ip, key));
        Validated(Sub(ip, key), [&] { s.hierarchy.Index(name, key, value); });
      }
    }
  }
  s.active_context = ReqString(j, path, "active_context");
  if (!s.active_context.empty() && !s.hierarchy.Contains(s.active_context)) {
    throw SchemaError(Sub(path, "active_context"),
                      "no context '" + s.active_context + "'");
  }
  const long limit = ReqInteger(j, path, "spare_limit");
  if (limit < 0) throw SchemaError(Sub(path, "spare_limit"), "must be >= 0");
  s.spares = SpareBuffer(static_cast<int>(limit));
  {
    const std::string p = Sub(path, "spares");
    const Json &arr = Array(Req(j, path, "spares"), p);
    for (std::size_t i = arr.size(); i-- > 0;) {
      const std::string sp = At(p, i);
      s.spares.Push({ReqString(arr[i], sp, "context_id"),
                     RegionFromJson(Req(arr[i], sp, "region"), Sub(sp, "region")),
                     ReqString(arr[i], sp, "origin")});
    }
  }
  s.fresh_counter = static_cast<int>(ReqInteger(j, path, "fresh_counter"));
  return s;
}

Json OutcomeToJson(const InterpretationOutcome &o) {
  Json chosen = nullptr;
  if (o.chosen) {
    chosen = {{"candidate", CandidateToJson(o.chosen->candidate)},
              {"line", OperatorsToJson(o.chosen->phrase.line)},
              {"phrase_context", ContextToJson(o.chosen->phrase.context)},
              {"region", RegionToJson(o.chosen->region)},
              {"report", ReportToJson(o.chosen->report)},
              {"context_id", o.chosen->context_id}};
  }
  Json candidates = Json::array();
  for (const auto &c : o.candidates) candidates.push_back(EvaluationToJson(c));
  Json flags = Json::array();
  for (Flag f : o.flags) flags.push_back(std::string(FlagName(f)));
  return {{"action", NameOf(kActions, o.action)},
          {"chosen", std::move(chosen)},
          {"alternatives_kept", o.alternatives_kept},
          {"trace", o.trace},
          {"candidates", std::move(candidates)},
          {"clarification", o.clarification},
          {"failing_check", o.failing_check ? Json(std::string(FlagName(*o.failing_check)))
                                            : Json(nullptr)},
          {"flags", std::move(flags)}};
}

InterpretationOutcome OutcomeFromJson(const Json &j, const std::string &path) {
  InterpretationOutcome o;
  o.action = ParseEnum(kActions, Req(j, path, "action"), Sub(path, "action"));
  if (const Json *c = Opt(j, path, "chosen")) {
    const std::string p = Sub(path, "chosen");
    ChosenInterpretation ch;
    ch.candidate = CandidateFromJson(Req(*c, p, "candidate"), Sub(p, "candidate"));
    ch.phrase.line = OperatorsFromJson(Req(*c, p, "line"), Sub(p, "line"));
    ch.phrase.context =
        ContextFromJson(Req(*c, p, "phrase_context"), Sub(p, "phrase_context"));
    ch.region = RegionFromJson(Req(*c, p, "region"), Sub(p, "region"));
    ch.report = ReportFromJson(Req(*c, p, "report"), Sub(p, "report"));
    ch.context_id = ReqString(*c, p, "context_id");
    o.chosen = std::move(ch);
  }
  o.alternatives_kept = static_cast<int>(ReqInteger(j, path, "alternatives_kept"));
  o.trace = Strings(Req(j, path, "trace"), Sub(path, "trace"));
  {
    const std::string p = Sub(path, "candidates");
    const Json &arr = Array(Req(j, path, "candidates"), p);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      o.candidates.push_back(EvaluationFromJson(arr[i], At(p, i)));
    }
  }
  o.clarification = ReqString(j, path, "clarification");
  if (const Json *f = Opt(j, path, "failing_check")) {
    o.failing_check = FlagFromJson(*f, Sub(path, "failing_check"));
  }
  {
    const std::string p = Sub(path, "flags");
    const Json &arr = Array(Req(j, path, "flags"), p);
    for (std::size_t i = 0; i < arr.size(); ++i) o.flags.insert(FlagFromJson(arr[i], At(p, i)));
  }
  return o;
}

Json SessionToJson(const Session &session) {
  Json history = Json::array();
  for (const auto &h : session.history()) {
    history.push_back({{"phrase", h.phrase},
                       {"action", NameOf(kActions, h.action)},
                       {"digest", h.digest},
                       {"before", StateToJson(h.before)},
                       {"outcome", OutcomeToJson(h.outcome)}});
  }
  return {{"format", kSessionFormatVersion},
          {"config", ConfigToJson(session.config())},
          {"version", session.version()},
          {"state", StateToJson(session.state())},
          {"history", std::move(history)}};
}

Session SessionFromJson(const Json &j, std::shared_ptr<const Lexicon> lexicon,
                        const std::string &path) {
  const long format = ReqInteger(j, path, "format");
  if (format != kSessionFormatVersion) {
    throw SchemaError(Sub(path, "format"),
                      "unsupported format " + std::to_string(format));
  }
  Session session(std::move(lexicon),
                  ConfigFromJson(Req(j, path, "config"), Sub(path, "config")));
  const long version = ReqInteger(j, path, "version");
  SessionState state = StateFromJson(Req(j, path, "state"), Sub(path, "state"));
  std::vector<HistoryEntry> history;
  const std::string hp = Sub(path, "history");
  const Json &arr = Array(Req(j, path, "history"), hp);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = At(hp, i);
    HistoryEntry h;
    h.phrase = ReqString(arr[i], p, "phrase");
    h.action = ParseEnum(kActions, Req(arr[i], p, "action"), Sub(p, "action"));
    h.digest = ReqString(arr[i], p, "digest");
    h.before = StateFromJson(Req(arr[i], p, "before"), Sub(p, "before"));
    h.outcome = OutcomeFromJson(Req(arr[i], p, "outcome"), Sub(p, "outcome"));
    history.push_back(std::move(h));
  }
  session.Restore(std::move(state), std::move(history), version);
  return session;
}

Json DescribeResultToJson(const DescribeResult &r) {
  auto comp = [](const std::vector<PoolEntry> &c) {
    Json arr = Json::array();
    for (const auto &e : c) arr.push_back({{"name", e.op.name()}, {"level", e.level}});
    return arr;
  };
  auto goal = [](const GoalSummary &g) {
    return Json{{"mean", g.mean},
                {"membership", g.membership},
                {"met", g.met},
                {"fuzziness", g.fuzziness}};
  };
  Json refinements = Json::array();
  for (const auto &s : r.refinements) {
    refinements.push_back({{"element", s.element},
                           {"replacement", s.replacement},
                           {"residual", s.residual}});
  }
  return {{"composition", comp(r.composition)},
          {"trace", r.trace},
          {"goal", goal(r.goal)},
          {"abstract_composition", comp(r.abstract_composition)},
          {"abstract_goal", goal(r.abstract_goal)},
          {"refinements", std::move(refinements)},
          {"visited", r.visited},
          {"log", r.log}};
}

// ---------------------------------------------------------------------------
// Files

Json ReadJsonFile(const std::filesystem::path &path) {
  const std::string text = Slurp(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw SchemaError("$", std::string("malformed JSON in '") + path.string() +
                               "': " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path &path, const Json &j) {
  Spill(path, j.dump(1) + "\n");
}

Lexicon LoadLexicon(const std::filesystem::path &path) {
  return LexiconFromJson(ReadJsonFile(path));
}

void SaveLexicon(const Lexicon &lexicon, const std::filesystem::path &path) {
  WriteJsonFile(path, LexiconToJson(lexicon));
}

// ---------------------------------------------------------------------------
// Heatmaps

Heatmap MakeHeatmap(const Region &region, const std::vector<AxisId> &axes,
                    int resolution) {
  std::vector<AxisId> use = axes;
  if (use.empty()) use = region.CoveredAxes();
  if (use.empty()) use = region.context().axes();
  if (use.empty() || use.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "heatmaps cover one or two axes, got " + std::to_string(use.size()));
  }
  Heatmap map;
  map.axes = use;
  map.width = resolution;
  map.height = use.size() == 2 ? resolution : 1;
  map.values = SampleLattice(Project(region, use), use, resolution);
  return map;
}

std::string ToGraymap(const Heatmap &map) {
  std::ostringstream os;
  os << "P2\n# axes:";
  for (const auto &a : map.axes) os << ' ' << a;
  os << "\n" << map.width << ' ' << map.height << "\n255\n";
  for (int row = 0; row < map.height; ++row) {
    // High end of the first axis at the top.
    const int i = map.height - 1 - row;
    for (int k = 0; k < map.width; ++k) {
      const double v = map.values[static_cast<std::size_t>(i) * map.width + k];
      os << (k ? " " : "") << static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    }
    os << "\n";
  }
  return os.str();
}

Json HeatmapToJson(const Heatmap &map) {
  return {{"axes", map.axes},
          {"width", map.width},
          {"height", map.height},
          {"values", map.values}};
}

void ExportRegion(const Region &region, const std::filesystem::path &pgm_path,
                  int resolution) {
  const Heatmap map = MakeHeatmap(region, {}, resolution);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (double v : map.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  Spill(pgm_path, ToGraymap(map));
  std::filesystem::path side = pgm_path;
  side.replace_extension(".json");
  WriteJsonFile(side, {{"context", ContextToJson(region.context())},
                       {"label", region.label()},
                       {"axes", map.axes},
                       {"resolution", resolution},
                       {"width", map.width},
                       {"height", map.height},
                       {"stats",
                        {{"min", lo},
                         {"max", hi},
                         {"mean", sum / static_cast<double>(map.values.size())}}}});
}

}  // namespace meaning
