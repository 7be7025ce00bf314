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

// Word -> operator store, context hierarchy and spare-context buffer.

#ifndef MEANING_LEXICON_H_
#define MEANING_LEXICON_H_

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meaning/operators.h"
#include "meaning/region.h"

namespace meaning {

enum class PartOfSpeech {
  kQualAdjective,
  kCompAdjective,
  kNoun,
  kVerb,
  kAdverbHedge,
  kConjunction,
  kNegation,
  kQuantifierStub,
};

std::string_view PartOfSpeechName(PartOfSpeech pos);
// Throws Error(kInvalidArgument) for unknown tags.
PartOfSpeech ParsePartOfSpeech(std::string_view name);

struct Sense {
  // Unique within the lexicon, e.g. "bank#river".
  std::string id;
  MeaningOperator op;
  std::vector<std::string> usage_tags;
  int abstraction_level = 0;
  // Nouns and verbs: axes of the object/action context they actualize.
  std::vector<AxisId> home_axes;

  // Internal context axes, or empty.
  std::vector<AxisId> InternalAxes() const;

  bool operator==(const Sense &other) const = default;
};

struct LexiconEntry {
  std::string word;
  PartOfSpeech pos = PartOfSpeech::kQualAdjective;
  std::vector<Sense> senses;

  bool operator==(const LexiconEntry &other) const = default;
};

class Lexicon {
 public:
  void AddAxis(Axis axis);
  const Axis *FindAxis(const AxisId &id) const;
  const std::vector<Axis> &axes() const { return axes_; }

  void AddContext(Context context);
  const Context *FindContext(const std::string &id) const;
  const std::vector<Context> &contexts() const { return contexts_; }

  // Named standalone regions (reference regions, demo fixtures).
  void AddRegion(std::string name, Region region);
  const Region *FindRegion(const std::string &name) const;
  const std::map<std::string, Region> &regions() const { return regions_; }

  // Adds a sense. A block sense whose internal context has the same axis set
  // and derivation as an existing sense of the word is merged into it: the
  // parameter regions are combined by pointwise max and the body re-derived.
  // Returns true when merged.
  bool AddSense(const std::string &word, PartOfSpeech pos, Sense sense);

  // Inflected form -> lemma ("slowly" -> "slow").
  void AddInflection(std::string form, std::string lemma);
  // Space-separated token sequence read as one word ("stand still").
  void AddMultiword(std::string phrase, std::string lemma);

  const std::map<std::string, std::string> &inflections() const {
    return inflections_;
  }
  const std::map<std::string, std::string> &multiwords() const {
    return multiwords_;
  }

  std::string Lemma(const std::string &word) const;
  const LexiconEntry *Find(const std::string &word) const;
  // Senses of the word (after lemmatization); empty for unknown words.
  std::vector<Sense> Lookup(const std::string &word) const;
  const std::map<std::string, LexiconEntry> &entries() const {
    return entries_;
  }

  // Effector axis ids.
  std::vector<AxisId> EffectorAxes() const;

  bool operator==(const Lexicon &other) const;

 private:
  std::vector<Axis> axes_;
  std::vector<Context> contexts_;
  std::map<std::string, Region> regions_;
  std::map<std::string, LexiconEntry> entries_;
  std::map<std::string, std::string> inflections_;
  std::map<std::string, std::string> multiwords_;
};

// The working vocabulary used by the demos and tests.
Lexicon SeedLexicon(int resolution = MembershipGrid::kDefaultResolution);

// Narrative contexts of one session, with parent links and lookup indexes.
class ContextHierarchy {
 public:
  static constexpr const char *kIndexNames[] = {
      "objects", "actions", "time_intervals", "locations", "narrative_parts"};

  struct Node {
    Context context;
    Region region;

    bool operator==(const Node &other) const = default;
  };

  // Adds or replaces a node. Throws on a parent link that would form a cycle
  // or that names a missing node.
  void Put(Context context, Region region);
  void SetRegion(const std::string &id, Region region);
  const Node *Find(const std::string &id) const;
  bool Contains(const std::string &id) const { return Find(id) != nullptr; }
  const std::vector<Node> &nodes() const { return nodes_; }

  void Index(const std::string &index, const std::string &key,
             const std::string &id);
  std::optional<std::string> Lookup(const std::string &index,
                                    const std::string &key) const;
  const std::map<std::string, std::map<std::string, std::string>> &indexes()
      const {
    return indexes_;
  }

  // Number of parent hops from `id` to its root.
  int Depth(const std::string &id) const;

  bool operator==(const ContextHierarchy &other) const;

 private:
  std::vector<Node> nodes_;
  std::map<std::string, std::map<std::string, std::string>> indexes_;
};

struct SpareContext {
  std::string context_id;
  Region region;
  // Serialized parse candidate this snapshot came from, for traces.
  std::string origin;

  bool operator==(const SpareContext &other) const = default;
};

// Ring buffer of at most `limit` snapshots, most recent first.
class SpareBuffer {
 public:
  explicit SpareBuffer(int limit = 2);

  void Push(SpareContext spare);
  std::optional<SpareContext> Pop();
  void SetLimit(int limit);
  void Clear() { items_.clear(); }

  int limit() const { return limit_; }
  std::size_t size() const { return items_.size(); }
  const std::deque<SpareContext> &items() const { return items_; }

  bool operator==(const SpareBuffer &other) const = default;

 private:
  int limit_;
  std::deque<SpareContext> items_;
};

// Finds or creates the context for a noun/verb sense. Existing contexts are
// found through the "objects" (nouns) or "actions" (verbs) index keyed by the
// sense id. New contexts get the sense's home axes and, for nouns, the default
// region of the Actualize body.
std::string ActualizeNoun(ContextHierarchy &hierarchy, const Sense &sense);
std::string ActualizeVerb(ContextHierarchy &hierarchy, const Sense &sense);

}  // namespace meaning

#endif  // MEANING_LEXICON_H_
