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

#include "meaning/interpreter.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "meaning/error.h"

namespace meaning {

namespace {

bool Subset(const std::vector<AxisId> &a, const std::vector<AxisId> &b) {
  for (const auto &x : a) {
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  }
  return true;
}

Sense SenseAt(const Lexicon &lexicon, const ParseCandidate &c, int token) {
  const auto senses = lexicon.Lookup(c.tokens[token].lemma);
  return senses.at(std::max(0, c.sense_choices[token]));
}

MeaningOperator BuildExpr(const Lexicon &lexicon, const ParseCandidate &c,
                          const Expr &e) {
  if (e.kind != Expr::Kind::kTerm) {
    std::vector<MeaningOperator> ops;
    for (const auto &child : e.children) ops.push_back(BuildExpr(lexicon, c, child));
    return MakeConjunction(e.kind == Expr::Kind::kAnd ? ConjunctionKind::kAnd
                                                      : ConjunctionKind::kOr,
                           std::move(ops));
  }
  MeaningOperator op = SenseAt(lexicon, c, e.head).op;
  for (auto it = e.mods.rbegin(); it != e.mods.rend(); ++it) {
    const MeaningOperator mod = SenseAt(lexicon, c, *it).op;
    if (!op.internal_context()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "'" + c.tokens[*it].lemma + "' cannot modify '" + op.name() + "'");
    }
    op = ComposeBlock(mod, op);
  }
  return op;
}

std::vector<AxisId> LineAxes(const std::vector<MeaningOperator> &line) {
  std::vector<AxisId> out;
  for (const auto &op : line) {
    for (const auto &a : op.ExternalAxes()) {
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
  }
  return out;
}

void MergeReport(ComprehensionReport &into, const ComprehensionReport &from) {
  for (const auto &[flag, score] : from.scores) {
    auto it = into.scores.find(flag);
    into.scores[flag] = it == into.scores.end() ? score : std::min(it->second, score);
  }
  into.flags.insert(from.flags.begin(), from.flags.end());
  into.aggregate *= from.aggregate;
  if (from.effector_command) into.effector_command = from.effector_command;
}

std::string FormatScore(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string FlagList(const ComprehensionReport &r) {
  std::string out;
  for (Flag f : r.flags) {
    if (!out.empty()) out += ",";
    out += FlagName(f);
  }
  return out.empty() ? "-" : out;
}

// Index of the best passing evaluation (first on ties), or -1.
int Best(const std::vector<CandidateEvaluation> &evals, double threshold) {
  int best = -1;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].Passes(threshold)) continue;
    if (best < 0 || evals[i].score > evals[best].score) best = static_cast<int>(i);
  }
  return best;
}

// Keeps candidates whose line entries outside the head stay inside the
// head's home axes.
std::vector<ParseCandidate> Prefilter(const Lexicon &lexicon,
                                      const std::vector<ParseCandidate> &all) {
  std::vector<ParseCandidate> kept;
  for (const auto &c : all) {
    bool ok = true;
    try {
      for (const auto &clause : BuildClauses(lexicon, c)) {
        if (!clause.head_sense || clause.head_sense->home_axes.empty()) continue;
        for (std::size_t i = clause.head_ops; i < clause.phrase.line.size(); ++i) {
          ok &= Subset(clause.phrase.line[i].ExternalAxes(),
                       clause.head_sense->home_axes);
        }
      }
    } catch (const Error &) {
      ok = false;
    }
    if (ok) kept.push_back(c);
  }
  return kept.empty() ? all : kept;
}

}  // namespace

std::string_view ActionName(Action action) {
  switch (action) {
    case Action::kAccepted:
      return "accepted";
    case Action::kRetriedSpareContext:
      return "retried_spare_context";
    case Action::kClarificationRequested:
      return "clarification_requested";
  }
  return "unknown";
}

std::vector<ClauseOperator> BuildClauses(const Lexicon &lexicon,
                                         const ParseCandidate &candidate) {
  std::vector<ClauseOperator> out;
  for (const auto &clause : candidate.clauses) {
    ClauseOperator co;
    co.head_kind = clause.head_kind;
    std::optional<MeaningOperator> head;
    if (clause.head >= 0) {
      co.head_sense = SenseAt(lexicon, candidate, clause.head);
      head = co.head_sense->op;
    }
    std::vector<MeaningOperator> tail;
    for (const auto &group : clause.chain) {
      MeaningOperator op = BuildExpr(lexicon, candidate, group);
      if (head && head->internal_context() &&
          Subset(op.ExternalAxes(), head->internal_context()->axes())) {
        head = ComposeBlock(op, *head);
      } else {
        tail.push_back(std::move(op));
      }
    }
    if (head) {
      co.phrase.line.push_back(*head);
      co.head_ops = 1;
    }
    for (auto &op : tail) co.phrase.line.push_back(std::move(op));
    out.push_back(std::move(co));
  }
  return out;
}

PhraseOperator Build(const Lexicon &lexicon, const ParseCandidate &candidate) {
  return BuildClauses(lexicon, candidate).front().phrase;
}

CandidateEvaluation EvaluateCandidate(const Lexicon &lexicon,
                                      const ComprehensionConfig &config,
                                      const SessionState &state,
                                      const ParseCandidate &candidate,
                                      bool fresh) {
  CandidateEvaluation ev;
  ev.structure = candidate.Describe(lexicon);
  SessionState s = state;
  try {
    const auto clauses = BuildClauses(lexicon, candidate);
    ComprehensionReport merged;
    std::optional<std::pair<std::string, Region>> first_source;
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      const ClauseOperator &clause = clauses[ci];
      const ClauseParse &parse = candidate.clauses[ci];
      std::string id;
      if (fresh) {
        std::vector<AxisId> axes =
            clause.head_sense && !clause.head_sense->home_axes.empty()
                ? clause.head_sense->home_axes
                : LineAxes(clause.phrase.line);
        if (axes.empty()) {
          throw Error(ErrorCode::kInvalidArgument, "phrase names no axes");
        }
        id = "fresh:" + std::to_string(++s.fresh_counter);
        Context ctx(id, axes);
        s.hierarchy.Put(ctx, Region(ctx));
      } else if (clause.head_kind == HeadKind::kNoun) {
        id = ActualizeNoun(s.hierarchy, *clause.head_sense);
      } else if (clause.head_kind == HeadKind::kVerb) {
        id = ActualizeVerb(s.hierarchy, *clause.head_sense);
      } else {
        if (s.active_context.empty() || !s.hierarchy.Contains(s.active_context)) {
          throw Error(ErrorCode::kContextMismatch, "no active context for 'it'");
        }
        id = s.active_context;
      }
      const auto *node = s.hierarchy.Find(id);
      const Context ctx = node->context;
      Region source = node->region;
      if (candidate.reset && ci == 0) source = Region(ctx);
      const bool but_same = ci == 1 && first_source && first_source->first == id;
      if (but_same) source = first_source->second;
      if (ci == 0) first_source = {id, source};

      const auto &line = clause.phrase.line;
      Region result = ApplyLine(line, source);
      std::optional<Region> reference;
      if (clause.head_ops > 0 && line.size() > clause.head_ops) {
        reference = ApplyLine({line.begin(), line.begin() + clause.head_ops}, source);
      }
      CheckInput input{source,      reference, result,
                       parse.mood,  candidate.reset && ci == 0,
                       lexicon.EffectorAxes()};
      MergeReport(merged, Evaluate(input, config));

      std::string stored = id;
      if (parse.mood == Mood::kConditional) {
        stored = "if:" + id;
        s.hierarchy.Put(Context(stored, ctx.axes(), id), result);
      } else if (but_same) {
        stored = id + "/but";
        s.hierarchy.Put(Context(stored, ctx.axes(), id), result);
      } else {
        s.hierarchy.SetRegion(id, result);
        s.active_context = id;
      }
      ev.target_contexts.push_back(stored);
      ev.result = result;
    }
    ev.score = merged.aggregate;
    ev.report = std::move(merged);
    ev.next_state = std::move(s);
  } catch (const Error &e) {
    ev.error = e.what();
    ev.score = 0.0;
  }
  return ev;
}

std::string Digest(const InterpretationOutcome &outcome) {
  std::string out(ActionName(outcome.action));
  if (outcome.chosen) {
    out += " | " + outcome.chosen->candidate.tokens.front().lemma;
    for (std::size_t i = 1; i < outcome.chosen->candidate.tokens.size(); ++i) {
      out += " " + outcome.chosen->candidate.tokens[i].lemma;
    }
    out += " | flags=" + FlagList(outcome.chosen->report);
    if (const auto &cmd = outcome.chosen->report.effector_command) {
      out += " | apply " + cmd->axis + "=" + FormatScore(cmd->value);
    }
  } else if (outcome.failing_check) {
    out += " | failing=" + std::string(FlagName(*outcome.failing_check));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Session

Session::Session(std::shared_ptr<const Lexicon> lexicon, ComprehensionConfig config)
    : lexicon_(std::move(lexicon)), config_(config) {
  state_.spares.SetLimit(config_.spare_limit);
}

void Session::SetConfig(const ComprehensionConfig &config) {
  config_ = config;
  state_.spares.SetLimit(config_.spare_limit);
  ++version_;
}

void Session::Restore(SessionState state, std::vector<HistoryEntry> history,
                      long version) {
  state_ = std::move(state);
  history_ = std::move(history);
  version_ = version;
}

InterpretationOutcome Session::InterpretOn(SessionState &state,
                                           const std::string &phrase,
                                           int spare_limit) const {
  InterpretationOutcome out;
  state.spares.SetLimit(spare_limit);
  std::vector<ParseCandidate> candidates;
  try {
    candidates = Parse(*lexicon_, Tokenize(*lexicon_, phrase));
  } catch (const Error &e) {
    out.trace.push_back(std::string("parse failed: ") + e.what());
    out.clarification = std::string("I could not parse that: ") + e.what();
    return out;
  }
  out.trace.push_back(std::to_string(candidates.size()) + " candidate(s)");
  if (static_cast<int>(candidates.size()) >= kPruneAt) {
    const std::size_t before = candidates.size();
    candidates = Prefilter(*lexicon_, candidates);
    out.trace.push_back("prefilter kept " + std::to_string(candidates.size()) +
                        " of " + std::to_string(before));
  }
  const double threshold = config_.threshold;

  auto evaluate_all = [&](const SessionState &s, bool fresh, const char *stage) {
    std::vector<CandidateEvaluation> evals;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      auto ev = EvaluateCandidate(*lexicon_, config_, s, candidates[i], fresh);
      ev.index = static_cast<int>(i);
      std::string line = std::string(stage) + " #" + std::to_string(i) + " " +
                         ev.structure + " score=" + FormatScore(ev.score);
      line += ev.error ? " error: " + *ev.error : " flags=" + FlagList(ev.report);
      out.trace.push_back(std::move(line));
      evals.push_back(std::move(ev));
    }
    return evals;
  };

  auto accept = [&](std::vector<CandidateEvaluation> &evals, int best,
                    Action action) {
    CandidateEvaluation &ev = evals[best];
    const SpareBuffer spares = state.spares;
    state = *ev.next_state;
    state.spares = spares;
    // Runners-up go in ascending score so the strongest ends up in front.
    std::vector<int> runners;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      if (static_cast<int>(i) != best && evals[i].Passes(threshold)) {
        runners.push_back(static_cast<int>(i));
      }
    }
    std::stable_sort(runners.begin(), runners.end(), [&](int a, int b) {
      return evals[a].score > evals[b].score;
    });
    for (auto it = runners.rbegin(); it != runners.rend(); ++it) {
      const auto &r = evals[*it];
      state.spares.Push({r.target_contexts.back(), *r.result, r.structure});
    }
    out.alternatives_kept =
        std::min(static_cast<int>(runners.size()), state.spares.limit());
    out.action = action;
    out.flags.insert(ev.report.flags.begin(), ev.report.flags.end());
    const auto clauses = BuildClauses(*lexicon_, candidates[ev.index]);
    out.chosen = ChosenInterpretation{candidates[ev.index], clauses.back().phrase,
                                      *ev.result, ev.report,
                                      ev.target_contexts.back()};
    out.trace.push_back("chose #" + std::to_string(ev.index) + " (" +
                        std::string(ActionName(action)) + "), kept " +
                        std::to_string(out.alternatives_kept) + " spare(s)");
  };

  auto settle = [&](std::vector<CandidateEvaluation> evals, Action action) {
    const int best = Best(evals, threshold);
    if (best < 0) {
      for (auto &e : evals) out.candidates.push_back(std::move(e));
      return false;
    }
    if (evals[best].report.Has(Flag::kNeedsClarification)) {
      out.action = Action::kClarificationRequested;
      out.failing_check = Flag::kNeedsClarification;
      out.flags.insert(evals[best].report.flags.begin(),
                       evals[best].report.flags.end());
      out.clarification =
          "The phrase allows several separate values; which one did you mean?";
      out.trace.push_back("#" + std::to_string(evals[best].index) +
                          " needs clarification");
      for (auto &e : evals) out.candidates.push_back(std::move(e));
      return true;
    }
    accept(evals, best, action);
    for (auto &e : evals) out.candidates.push_back(std::move(e));
    return true;
  };

  {
    auto evals = evaluate_all(state, false, "try");
    const CandidateEvaluation *top = nullptr;
    for (const auto &e : evals) {
      if (!e.error && (top == nullptr || e.score > top->score)) top = &e;
    }
    if (top != nullptr) out.flags = top->report.flags;
    if (settle(std::move(evals), Action::kAccepted)) return out;
  }

  out.trace.push_back("no candidate reached threshold " + FormatScore(threshold));
  const auto spares = state.spares.items();
  for (std::size_t k = 0; k < spares.size(); ++k) {
    const SpareContext &spare = spares[k];
    SessionState s = state;
    if (s.hierarchy.Contains(spare.context_id)) {
      s.hierarchy.SetRegion(spare.context_id, spare.region);
    } else {
      s.hierarchy.Put(Context(spare.context_id, spare.region.context().axes()),
                      spare.region);
    }
    s.active_context = spare.context_id;
    SpareBuffer rest(s.spares.limit());
    for (std::size_t j = spares.size(); j-- > 0;) {
      if (j != k) rest.Push(spares[j]);
    }
    s.spares = rest;
    out.trace.push_back("retry with spare context " + spare.context_id + " (" +
                        spare.origin + ")");
    out.candidates.clear();
    auto evals = evaluate_all(s, false, "spare");
    if (Best(evals, threshold) >= 0) {
      SessionState saved = state;
      state = s;
      if (settle(std::move(evals), Action::kRetriedSpareContext)) return out;
      state = saved;
    }
  }

  out.trace.push_back("trying a fresh context");
  out.candidates.clear();
  if (settle(evaluate_all(state, true, "fresh"), Action::kAccepted)) return out;

  // Interpretation failed everywhere: report the best-scoring reading.
  out.candidates.clear();
  auto evals = evaluate_all(state, false, "final");
  const CandidateEvaluation *top = nullptr;
  for (const auto &e : evals) {
    if (!e.error && (top == nullptr || e.score > top->score)) top = &e;
  }
  out.action = Action::kClarificationRequested;
  if (top != nullptr) {
    double worst = 2.0;
    for (const auto &[flag, score] : top->report.scores) {
      if (score < worst) {
        worst = score;
        out.failing_check = flag;
      }
    }
    out.clarification = "I could not make sense of \"" + phrase +
                        "\" (" + FlagList(top->report) + "). Could you rephrase?";
  } else {
    out.clarification = "I could not make sense of \"" + phrase +
                        "\" in any context. Could you rephrase?";
  }
  for (auto &e : evals) out.candidates.push_back(std::move(e));
  return out;
}

InterpretationOutcome Session::Interpret(const std::string &phrase) {
  HistoryEntry entry;
  entry.phrase = phrase;
  entry.before = state_;
  InterpretationOutcome out = InterpretOn(state_, phrase, config_.spare_limit);
  entry.action = out.action;
  entry.digest = Digest(out);
  entry.outcome = out;
  for (auto &c : entry.outcome.candidates) c.next_state.reset();
  history_.push_back(std::move(entry));
  ++version_;
  return out;
}

InterpretationOutcome Session::ReinterpretWindow(int spare_limit, int window) {
  if (window < 0 || window > static_cast<int>(history_.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "window " + std::to_string(window) + " exceeds history of " +
                    std::to_string(history_.size()));
  }
  if (window == 0) {
    if (history_.empty()) {
      InterpretationOutcome out;
      out.clarification = "nothing to reinterpret";
      out.trace.push_back("empty history");
      return out;
    }
    InterpretationOutcome out = history_.back().outcome;
    out.trace.push_back("window 0: nothing replayed");
    return out;
  }
  const std::size_t start = history_.size() - window;
  SessionState s = history_[start].before;
  std::vector<HistoryEntry> replayed;
  InterpretationOutcome last;
  for (std::size_t i = start; i < history_.size(); ++i) {
    HistoryEntry entry;
    entry.phrase = history_[i].phrase;
    entry.before = s;
    last = InterpretOn(s, entry.phrase, spare_limit);
    if (last.action == Action::kClarificationRequested) {
      last.trace.push_back("replay failed at \"" + entry.phrase +
                           "\"; session unchanged");
      return last;
    }
    entry.action = last.action;
    entry.digest = Digest(last);
    entry.outcome = last;
    for (auto &c : entry.outcome.candidates) c.next_state.reset();
    replayed.push_back(std::move(entry));
  }
  state_ = std::move(s);
  config_.spare_limit = spare_limit;
  for (std::size_t i = 0; i < replayed.size(); ++i) {
    history_[start + i] = std::move(replayed[i]);
  }
  ++version_;
  last.trace.push_back("replayed " + std::to_string(window) +
                       " phrase(s) with spare limit " + std::to_string(spare_limit));
  return last;
}

}  // namespace meaning
