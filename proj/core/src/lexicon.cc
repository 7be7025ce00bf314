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

#include "meaning/lexicon.h"

#include <algorithm>
#include <set>

#include "meaning/error.h"

namespace meaning {

namespace {

constexpr std::pair<PartOfSpeech, std::string_view> kPosNames[] = {
    {PartOfSpeech::kQualAdjective, "qual_adjective"},
    {PartOfSpeech::kCompAdjective, "comp_adjective"},
    {PartOfSpeech::kNoun, "noun"},
    {PartOfSpeech::kVerb, "verb"},
    {PartOfSpeech::kAdverbHedge, "adverb_hedge"},
    {PartOfSpeech::kConjunction, "conjunction"},
    {PartOfSpeech::kNegation, "negation"},
    {PartOfSpeech::kQuantifierStub, "quantifier_stub"},
};

bool SameAxes(const std::vector<AxisId> &a, const std::vector<AxisId> &b) {
  return std::set<AxisId>(a.begin(), a.end()) ==
         std::set<AxisId>(b.begin(), b.end());
}

Region PointwiseMax(const Region &a, const Region &b) {
  if (a.empty() || b.empty()) return Region(a.context(), a.label());
  std::vector<AxisId> axes;
  for (const auto &axis : a.context().axes()) {
    if (a.FactorIndexFor(axis) >= 0 || b.FactorIndexFor(axis) >= 0) {
      axes.push_back(axis);
    }
  }
  int res = 0;
  for (const auto &f : a.factors()) res = std::max(res, f.grid.resolution());
  for (const auto &f : b.factors()) res = std::max(res, f.grid.resolution());
  const auto sa = SampleLattice(a, axes, res);
  const auto sb = SampleLattice(b.WithContext(a.context()), axes, res);
  std::vector<double> out(sa.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(sa[i], sb[i]);
  return Region(a.context(), {Factor{MembershipGrid(axes, res, std::move(out)), 1.0}},
                a.label());
}

bool Mergeable(const Sense &a, const Sense &b) {
  const auto &ia = a.op.internal_context();
  const auto &ib = b.op.internal_context();
  if (!ia || !ib) return false;
  return SameAxes(ia->axes(), ib->axes()) &&
         a.op.derivation() == b.op.derivation();
}

Sense Merge(const Sense &existing, const Sense &incoming) {
  Sense out = existing;
  const Context &ic = *existing.op.internal_context();
  Region param = PointwiseMax(*existing.op.parameter_region(),
                              incoming.op.parameter_region()->WithContext(ic));
  std::optional<Region> base;
  if (const auto *act = std::get_if<Actualize>(&existing.op.body())) {
    base = act->base;
  }
  out.op = MeaningOperator::Block(existing.op.name(), ic, std::move(param),
                                  existing.op.derivation(), base);
  for (const auto &tag : incoming.usage_tags) {
    if (std::find(out.usage_tags.begin(), out.usage_tags.end(), tag) ==
        out.usage_tags.end()) {
      out.usage_tags.push_back(tag);
    }
  }
  out.abstraction_level =
      std::min(existing.abstraction_level, incoming.abstraction_level);
  return out;
}

bool AxisEqual(const Axis &a, const Axis &b) {
  if (a.id != b.id || a.name != b.name || a.kind != b.kind ||
      a.scale_note != b.scale_note || a.effector != b.effector) {
    return false;
  }
  if (!a.reference || !b.reference) return a.reference == b.reference;
  return *a.reference == *b.reference;
}

std::string FindOrCreate(ContextHierarchy &hierarchy, const Sense &sense,
                        const char *index, const char *prefix, Region region) {
  if (auto found = hierarchy.Lookup(index, sense.id)) return *found;
  std::string id = std::string(prefix) + sense.id;
  for (int n = 2; hierarchy.Contains(id); ++n) {
    id = std::string(prefix) + sense.id + "." + std::to_string(n);
  }
  Context ctx(id, sense.home_axes);
  hierarchy.Put(ctx, Region(ctx, region.factors(), region.label()));
  hierarchy.Index(index, sense.id, id);
  return id;
}

}  // namespace

std::string_view PartOfSpeechName(PartOfSpeech pos) {
  for (const auto &[p, name] : kPosNames) {
    if (p == pos) return name;
  }
  return "unknown";
}

PartOfSpeech ParsePartOfSpeech(std::string_view name) {
  for (const auto &[p, n] : kPosNames) {
    if (n == name) return p;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown part of speech '" + std::string(name) + "'");
}

std::vector<AxisId> Sense::InternalAxes() const {
  return op.internal_context() ? op.internal_context()->axes()
                               : std::vector<AxisId>{};
}

// ---------------------------------------------------------------------------
// Lexicon

void Lexicon::AddAxis(Axis axis) {
  if (axis.kind == AxisKind::kDerived && !axis.reference) {
    throw Error(ErrorCode::kInvalidArgument,
                "derived axis '" + axis.id + "' needs a reference region");
  }
  for (auto &a : axes_) {
    if (a.id == axis.id) {
      a = std::move(axis);
      return;
    }
  }
  axes_.push_back(std::move(axis));
}

const Axis *Lexicon::FindAxis(const AxisId &id) const {
  for (const auto &a : axes_) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

void Lexicon::AddContext(Context context) {
  for (auto &c : contexts_) {
    if (c.id() == context.id()) {
      c = std::move(context);
      return;
    }
  }
  contexts_.push_back(std::move(context));
}

const Context *Lexicon::FindContext(const std::string &id) const {
  for (const auto &c : contexts_) {
    if (c.id() == id) return &c;
  }
  return nullptr;
}

void Lexicon::AddRegion(std::string name, Region region) {
  regions_[std::move(name)] = std::move(region);
}

const Region *Lexicon::FindRegion(const std::string &name) const {
  auto it = regions_.find(name);
  return it == regions_.end() ? nullptr : &it->second;
}

bool Lexicon::AddSense(const std::string &word, PartOfSpeech pos, Sense sense) {
  auto [it, inserted] = entries_.try_emplace(word);
  LexiconEntry &entry = it->second;
  if (inserted) {
    entry.word = word;
    entry.pos = pos;
  } else if (entry.pos != pos) {
    throw Error(ErrorCode::kInvalidArgument,
                "word '" + word + "' already has part of speech " +
                    std::string(PartOfSpeechName(entry.pos)));
  }
  for (auto &existing : entry.senses) {
    if (Mergeable(existing, sense)) {
      existing = Merge(existing, sense);
      return true;
    }
  }
  if (sense.id.empty()) {
    sense.id = entry.senses.empty()
                   ? word
                   : word + "#" + std::to_string(entry.senses.size() + 1);
  }
  entry.senses.push_back(std::move(sense));
  return false;
}

void Lexicon::AddInflection(std::string form, std::string lemma) {
  inflections_[std::move(form)] = std::move(lemma);
}

void Lexicon::AddMultiword(std::string phrase, std::string lemma) {
  multiwords_[std::move(phrase)] = std::move(lemma);
}

std::string Lexicon::Lemma(const std::string &word) const {
  auto it = inflections_.find(word);
  return it == inflections_.end() ? word : it->second;
}

const LexiconEntry *Lexicon::Find(const std::string &word) const {
  auto it = entries_.find(Lemma(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Sense> Lexicon::Lookup(const std::string &word) const {
  const LexiconEntry *entry = Find(word);
  return entry ? entry->senses : std::vector<Sense>{};
}

std::vector<AxisId> Lexicon::EffectorAxes() const {
  std::vector<AxisId> out;
  for (const auto &a : axes_) {
    if (a.effector) out.push_back(a.id);
  }
  return out;
}

bool Lexicon::operator==(const Lexicon &other) const {
  if (axes_.size() != other.axes_.size()) return false;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (!AxisEqual(axes_[i], other.axes_[i])) return false;
  }
  return contexts_ == other.contexts_ && regions_ == other.regions_ &&
         entries_ == other.entries_ && inflections_ == other.inflections_ &&
         multiwords_ == other.multiwords_;
}

// ---------------------------------------------------------------------------
// ContextHierarchy

void ContextHierarchy::Put(Context context, Region region) {
  if (const auto &parent = context.parent()) {
    if (*parent == context.id()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "context '" + context.id() + "' cannot be its own parent");
    }
    if (!Contains(*parent)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parent context '" + *parent + "' does not exist");
    }
    // Walk up from the parent; reaching the new id would close a cycle.
    std::string cur = *parent;
    for (std::size_t hops = 0; hops <= nodes_.size(); ++hops) {
      const Node *n = Find(cur);
      if (n == nullptr || !n->context.parent()) break;
      cur = *n->context.parent();
      if (cur == context.id()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "parent link of '" + context.id() + "' forms a cycle");
      }
    }
  }
  region = region.WithContext(context);
  for (auto &n : nodes_) {
    if (n.context.id() == context.id()) {
      n.context = std::move(context);
      n.region = std::move(region);
      return;
    }
  }
  nodes_.push_back({std::move(context), std::move(region)});
}

void ContextHierarchy::SetRegion(const std::string &id, Region region) {
  for (auto &n : nodes_) {
    if (n.context.id() == id) {
      n.region = region.WithContext(n.context);
      return;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "no context '" + id + "'");
}

const ContextHierarchy::Node *ContextHierarchy::Find(const std::string &id) const {
  for (const auto &n : nodes_) {
    if (n.context.id() == id) return &n;
  }
  return nullptr;
}

void ContextHierarchy::Index(const std::string &index, const std::string &key,
                             const std::string &id) {
  if (!Contains(id)) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot index missing context '" + id + "'");
  }
  indexes_[index][key] = id;
}

std::optional<std::string> ContextHierarchy::Lookup(const std::string &index,
                                                    const std::string &key) const {
  auto it = indexes_.find(index);
  if (it == indexes_.end()) return std::nullopt;
  auto jt = it->second.find(key);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

int ContextHierarchy::Depth(const std::string &id) const {
  int depth = 0;
  const Node *n = Find(id);
  while (n != nullptr && n->context.parent()) {
    n = Find(*n->context.parent());
    ++depth;
  }
  return depth;
}

bool ContextHierarchy::operator==(const ContextHierarchy &other) const {
  return nodes_ == other.nodes_ && indexes_ == other.indexes_;
}

// ---------------------------------------------------------------------------
// SpareBuffer

SpareBuffer::SpareBuffer(int limit) : limit_(std::max(0, limit)) {}

void SpareBuffer::Push(SpareContext spare) {
  if (limit_ == 0) return;
  items_.push_front(std::move(spare));
  while (static_cast<int>(items_.size()) > limit_) items_.pop_back();
}

std::optional<SpareContext> SpareBuffer::Pop() {
  if (items_.empty()) return std::nullopt;
  SpareContext out = std::move(items_.front());
  items_.pop_front();
  return out;
}

void SpareBuffer::SetLimit(int limit) {
  limit_ = std::max(0, limit);
  while (static_cast<int>(items_.size()) > limit_) items_.pop_back();
}

// ---------------------------------------------------------------------------
// Actualization

std::string ActualizeNoun(ContextHierarchy &hierarchy, const Sense &sense) {
  Region base;
  if (const auto *act = std::get_if<Actualize>(&sense.op.body())) {
    base = act->base;
  }
  return FindOrCreate(hierarchy, sense, "objects", "obj:", base);
}

std::string ActualizeVerb(ContextHierarchy &hierarchy, const Sense &sense) {
  return FindOrCreate(hierarchy, sense, "actions", "act:", Region());
}

}  // namespace meaning
