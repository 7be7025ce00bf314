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

// Phrase pipeline: tokenize, parse under a small controlled grammar, build
// phrase operators, apply them to the narrative and pick the reading that
// makes the most sense.
//
// Grammar (tokens are lemmas):
//
//   Phrase    := Reset? Clause ("but" Clause)?
//   Clause    := "if"? (Command | Statement)
//   Command   := Verb Chain?
//   Statement := NounPhrase "is" Chain
//              | Subject "was" Verb Chain?
//              | Chain? Noun
//              | Chain                       (applies to the active context)
//   NounPhrase:= "it" | Chain? Noun
//   Chain     := Group+
//   Group     := Term (("and" | "or") Term)*
//   Term      := (Hedge | "not")* Adjective

#ifndef MEANING_INTERPRETER_H_
#define MEANING_INTERPRETER_H_

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "meaning/comprehension.h"
#include "meaning/lexicon.h"
#include "meaning/operators.h"

namespace meaning {

struct Token {
  std::string text;
  std::string lemma;
  // Empty for keywords.
  std::optional<PartOfSpeech> pos;
  bool keyword = false;
};

// Lowercases, strips punctuation, joins multiword entries and lemmatizes.
// Throws Error(kUnknownWord) listing every unknown token, Error(kParseError)
// on empty input.
std::vector<Token> Tokenize(const Lexicon &lexicon, const std::string &text);

// Application tree of a chain group.
struct Expr {
  enum class Kind { kTerm, kAnd, kOr };
  Kind kind = Kind::kTerm;
  // kTerm: hedge/negation token indices (outermost first) and the head token.
  std::vector<int> mods;
  int head = -1;
  std::vector<Expr> children;
};

enum class HeadKind {
  kNone,  // "it" or implicit: the active context
  kVerb,
  kNoun,
};

struct ClauseParse {
  Mood mood = Mood::kRealis;
  HeadKind head_kind = HeadKind::kNone;
  int head = -1;
  std::vector<Expr> chain;
};

struct ParseCandidate {
  std::vector<Token> tokens;
  bool reset = false;
  std::vector<ClauseParse> clauses;
  // Per token: chosen sense index, -1 for keywords.
  std::vector<int> sense_choices;

  Mood mood() const { return clauses.front().mood; }
  // E.g. "very->fast->walk" with sense ids for ambiguous words.
  std::string Describe(const Lexicon &lexicon) const;
};

// All structures licensed by the grammar crossed with sense choices, in a
// deterministic order.
std::vector<ParseCandidate> Parse(const Lexicon &lexicon,
                                  const std::vector<Token> &tokens);

struct ClauseOperator {
  PhraseOperator phrase;
  HeadKind head_kind = HeadKind::kNone;
  // Sense of the head word, when there is one.
  std::optional<Sense> head_sense;
  // Number of leading line entries that come from the head word.
  std::size_t head_ops = 0;
};

// Builds each clause's line: groups acting inside the head's internal context
// are composed into it, the rest follow the head on the line.
std::vector<ClauseOperator> BuildClauses(const Lexicon &lexicon,
                                         const ParseCandidate &candidate);
PhraseOperator Build(const Lexicon &lexicon, const ParseCandidate &candidate);

enum class Action { kAccepted, kRetriedSpareContext, kClarificationRequested };

std::string_view ActionName(Action action);

struct SessionState {
  ContextHierarchy hierarchy;
  std::string active_context;
  SpareBuffer spares;
  int fresh_counter = 0;

  bool operator==(const SessionState &other) const = default;
};

struct CandidateEvaluation {
  int index = 0;
  std::string structure;
  std::vector<std::string> target_contexts;
  double score = 0.0;
  ComprehensionReport report;
  std::optional<std::string> error;
  // Result region of the last clause.
  std::optional<Region> result;
  // State after committing this candidate.
  std::optional<SessionState> next_state;

  bool Passes(double threshold) const {
    return !error && score >= threshold;
  }
};

struct ChosenInterpretation {
  ParseCandidate candidate;
  PhraseOperator phrase;
  Region region;
  ComprehensionReport report;
  std::string context_id;
};

struct InterpretationOutcome {
  Action action = Action::kClarificationRequested;
  std::optional<ChosenInterpretation> chosen;
  int alternatives_kept = 0;
  std::vector<std::string> trace;
  std::vector<CandidateEvaluation> candidates;
  // Set for clarification requests.
  std::string clarification;
  // The failing check of the best rejected candidate, when there is one.
  std::optional<Flag> failing_check;
  // Flags of the best reading in the active context (first attempt) together
  // with those of the chosen reading. A phrase that only made sense in a
  // spare or fresh context still reports why the active context failed.
  std::set<Flag> flags;
};

struct HistoryEntry {
  std::string phrase;
  Action action = Action::kClarificationRequested;
  std::string digest;
  // State before the phrase was interpreted.
  SessionState before;
  // Outcome with per-candidate states dropped.
  InterpretationOutcome outcome;
};

// One-line summary: action, chosen structure, flags, effector command.
std::string Digest(const InterpretationOutcome &outcome);

class Session {
 public:
  static constexpr int kPruneAt = 32;

  explicit Session(std::shared_ptr<const Lexicon> lexicon,
                   ComprehensionConfig config = {});

  InterpretationOutcome Interpret(const std::string &phrase);

  // Replays the last `window` phrases from the state before them with the
  // given spare limit. The session is replaced only if no replayed phrase
  // ends in a clarification request; replayed history entries then carry the
  // new outcomes. window = 0 returns the latest outcome unchanged. Throws
  // Error(kInvalidArgument) when window exceeds the history length.
  InterpretationOutcome ReinterpretWindow(int spare_limit, int window);

  const Lexicon &lexicon() const { return *lexicon_; }
  std::shared_ptr<const Lexicon> shared_lexicon() const { return lexicon_; }
  const ComprehensionConfig &config() const { return config_; }
  void SetConfig(const ComprehensionConfig &config);
  const SessionState &state() const { return state_; }
  const std::vector<HistoryEntry> &history() const { return history_; }
  long version() const { return version_; }

  // Restores a persisted session.
  void Restore(SessionState state, std::vector<HistoryEntry> history,
               long version);

 private:
  InterpretationOutcome InterpretOn(SessionState &state, const std::string &phrase,
                                    int spare_limit) const;

  std::shared_ptr<const Lexicon> lexicon_;
  ComprehensionConfig config_;
  SessionState state_;
  std::vector<HistoryEntry> history_;
  long version_ = 0;
};

// Evaluates one candidate against `state` without modifying it. With
// `fresh`, every clause targets a newly created empty context.
CandidateEvaluation EvaluateCandidate(const Lexicon &lexicon,
                                      const ComprehensionConfig &config,
                                      const SessionState &state,
                                      const ParseCandidate &candidate,
                                      bool fresh = false);

}  // namespace meaning

#endif  // MEANING_INTERPRETER_H_
