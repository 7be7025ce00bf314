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
#include <cctype>
#include <set>
#include <sstream>

#include "meaning/error.h"
#include "meaning/interpreter.h"

namespace meaning {

namespace {

constexpr const char *kReset = "forget-everything";
const std::set<std::string> kKeywords = {"it", "i",  "is", "was", "if",
                                         "but", "the", "a", "an", kReset};
const std::set<std::string> kSkipped = {"the", "a", "an"};

bool IsModifier(const Token &t) {
  return t.pos == PartOfSpeech::kAdverbHedge || t.pos == PartOfSpeech::kNegation;
}

bool IsAdjective(const Token &t) {
  return t.pos == PartOfSpeech::kQualAdjective ||
         t.pos == PartOfSpeech::kCompAdjective;
}

bool IsConjunction(const Token &t) {
  return !t.keyword && t.pos == PartOfSpeech::kConjunction &&
         (t.lemma == "and" || t.lemma == "or");
}

[[noreturn]] void Fail(const std::string &msg) {
  throw Error(ErrorCode::kParseError, msg);
}

using Alternatives = std::vector<std::vector<Expr>>;

void Splice(Expr &node, Expr child) {
  if (child.kind == node.kind) {
    for (auto &c : child.children) node.children.push_back(std::move(c));
  } else {
    node.children.push_back(std::move(child));
  }
}

std::string RenderExpr(const Expr &e, const std::vector<Token> &tokens) {
  if (e.kind == Expr::Kind::kTerm) {
    std::string out;
    for (int m : e.mods) out += tokens[m].lemma + "->";
    return out + tokens[e.head].lemma;
  }
  std::string out = e.kind == Expr::Kind::kAnd ? "and(" : "or(";
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += ", ";
    out += RenderExpr(e.children[i], tokens);
  }
  return out + ")";
}

// All bracketings of terms[i..j] joined by ops[i..j-1]; nested nodes of the
// same kind are flattened, duplicates removed.
std::vector<Expr> Bracketings(const std::vector<Expr> &terms,
                              const std::vector<Expr::Kind> &ops, int i, int j,
                              const std::vector<Token> &tokens) {
  if (i == j) return {terms[i]};
  std::vector<Expr> out;
  std::set<std::string> seen;
  for (int k = i; k < j; ++k) {
    for (const auto &left : Bracketings(terms, ops, i, k, tokens)) {
      for (const auto &right : Bracketings(terms, ops, k + 1, j, tokens)) {
        Expr node;
        node.kind = ops[k];
        Splice(node, left);
        Splice(node, right);
        if (seen.insert(RenderExpr(node, tokens)).second) {
          out.push_back(std::move(node));
        }
      }
    }
  }
  return out;
}

Alternatives ParseChain(const std::vector<Token> &tokens,
                        const std::vector<int> &idx) {
  std::vector<std::vector<Expr>> groups;  // alternatives per group
  std::size_t p = 0;
  auto term = [&]() {
    Expr t;
    while (p < idx.size() && IsModifier(tokens[idx[p]])) t.mods.push_back(idx[p++]);
    if (p >= idx.size()) Fail("modifier without an adjective to modify");
    if (!IsAdjective(tokens[idx[p]])) {
      Fail("expected an adjective, got '" + tokens[idx[p]].text + "'");
    }
    t.head = idx[p++];
    return t;
  };
  while (p < idx.size()) {
    std::vector<Expr> terms = {term()};
    std::vector<Expr::Kind> ops;
    while (p < idx.size() && IsConjunction(tokens[idx[p]])) {
      ops.push_back(tokens[idx[p]].lemma == "and" ? Expr::Kind::kAnd
                                                  : Expr::Kind::kOr);
      ++p;
      if (p >= idx.size()) Fail("conjunction without a right operand");
      terms.push_back(term());
    }
    groups.push_back(Bracketings(terms, ops, 0, static_cast<int>(terms.size()) - 1,
                                 tokens));
  }
  Alternatives out = {{}};
  for (const auto &alts : groups) {
    Alternatives next;
    for (const auto &prefix : out) {
      for (const auto &g : alts) {
        auto seq = prefix;
        seq.push_back(g);
        next.push_back(std::move(seq));
      }
    }
    out = std::move(next);
  }
  return out;
}

int Find(const std::vector<Token> &tokens, const std::vector<int> &idx,
         const std::string &lemma) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (tokens[idx[i]].keyword && tokens[idx[i]].lemma == lemma) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<ClauseParse> WithChains(ClauseParse base, const Alternatives &chains) {
  std::vector<ClauseParse> out;
  for (const auto &c : chains) {
    ClauseParse cp = base;
    cp.chain = c;
    out.push_back(std::move(cp));
  }
  return out;
}

Alternatives Concat(const Alternatives &a, const Alternatives &b) {
  Alternatives out;
  for (const auto &x : a) {
    for (const auto &y : b) {
      auto seq = x;
      seq.insert(seq.end(), y.begin(), y.end());
      out.push_back(std::move(seq));
    }
  }
  return out;
}

std::vector<ClauseParse> ParseStatement(const std::vector<Token> &tokens,
                                        std::vector<int> idx, Mood mood) {
  if (idx.empty()) Fail("empty clause");
  ClauseParse base;
  base.mood = mood;
  const auto slice = [&](int from, int to) {
    return std::vector<int>(idx.begin() + from, idx.begin() + to);
  };
  const int n = static_cast<int>(idx.size());

  if (int is = Find(tokens, idx, "is"); is >= 0) {
    if (is == 0) Fail("'is' without a subject");
    if (is == n - 1) Fail("'is' without a predicate");
    const auto left = slice(0, is);
    Alternatives prefix = {{}};
    if (left.size() == 1 && tokens[left[0]].keyword && tokens[left[0]].lemma == "it") {
      base.head_kind = HeadKind::kNone;
    } else {
      const Token &last = tokens[left.back()];
      if (last.pos != PartOfSpeech::kNoun) {
        Fail("subject of 'is' must be 'it' or a noun phrase");
      }
      base.head_kind = HeadKind::kNoun;
      base.head = left.back();
      prefix = ParseChain(tokens, std::vector<int>(left.begin(), left.end() - 1));
    }
    return WithChains(base, Concat(prefix, ParseChain(tokens, slice(is + 1, n))));
  }

  if (int was = Find(tokens, idx, "was"); was >= 0) {
    if (was != 1) Fail("'was' needs a one-word subject");
    const Token &subject = tokens[idx[0]];
    if (!(subject.keyword && (subject.lemma == "i" || subject.lemma == "it")) &&
        subject.pos != PartOfSpeech::kNoun) {
      Fail("subject of 'was' must be 'i', 'it' or a noun");
    }
    if (was + 1 >= n || tokens[idx[was + 1]].pos != PartOfSpeech::kVerb) {
      Fail("'was' must be followed by a verb");
    }
    base.head_kind = HeadKind::kVerb;
    base.head = idx[was + 1];
    return WithChains(base, ParseChain(tokens, slice(was + 2, n)));
  }

  for (int i : idx) {
    if (tokens[i].keyword) Fail("unexpected '" + tokens[i].text + "'");
  }
  if (tokens[idx.back()].pos == PartOfSpeech::kNoun) {
    base.head_kind = HeadKind::kNoun;
    base.head = idx.back();
    return WithChains(base, ParseChain(tokens, slice(0, n - 1)));
  }
  return WithChains(base, ParseChain(tokens, idx));
}

std::vector<ClauseParse> ParseClause(const std::vector<Token> &tokens,
                                     const std::vector<int> &idx) {
  if (idx.empty()) Fail("empty clause");
  const Token &first = tokens[idx[0]];
  Mood mood = Mood::kImperative;
  std::vector<int> rest = idx;
  if (first.keyword && first.lemma == "if") {
    rest.erase(rest.begin());
    if (rest.empty()) Fail("'if' without a clause");
    mood = Mood::kConditional;
  }
  if (tokens[rest[0]].pos == PartOfSpeech::kVerb) {
    ClauseParse base;
    base.mood = mood;
    base.head_kind = HeadKind::kVerb;
    base.head = rest[0];
    return WithChains(base,
                      ParseChain(tokens, std::vector<int>(rest.begin() + 1, rest.end())));
  }
  return ParseStatement(tokens, rest,
                        mood == Mood::kConditional ? Mood::kConditional : Mood::kRealis);
}

}  // namespace

std::vector<Token> Tokenize(const Lexicon &lexicon, const std::string &text) {
  std::string clean;
  for (char c : text) {
    const unsigned char u = static_cast<unsigned char>(c);
    clean += (std::isalnum(u) || c == '-' || c == '\'') ? static_cast<char>(std::tolower(u))
                                                       : ' ';
  }
  std::vector<std::string> words;
  std::istringstream in(clean);
  for (std::string w; in >> w;) words.push_back(w);
  if (words.empty()) Fail("empty phrase");

  std::vector<Token> out;
  std::vector<std::string> unknown;
  for (std::size_t i = 0; i < words.size();) {
    std::string lemma;
    std::size_t used = 1;
    for (std::size_t len = std::min<std::size_t>(3, words.size() - i); len >= 2; --len) {
      std::string joined = words[i];
      for (std::size_t k = 1; k < len; ++k) joined += " " + words[i + k];
      if (joined == "forget everything") {
        lemma = kReset;
      } else if (auto it = lexicon.multiwords().find(joined);
                 it != lexicon.multiwords().end()) {
        lemma = it->second;
      }
      if (!lemma.empty()) {
        used = len;
        break;
      }
    }
    Token t;
    t.text = words[i];
    for (std::size_t k = 1; k < used; ++k) t.text += " " + words[i + k];
    if (lemma.empty()) lemma = words[i];
    if (kKeywords.count(lemma)) {
      t.lemma = lemma;
      t.keyword = true;
    } else if (const LexiconEntry *e = lexicon.Find(lemma)) {
      t.lemma = e->word;
      t.pos = e->pos;
    } else {
      unknown.push_back(t.text);
    }
    i += used;
    if (!kSkipped.count(t.lemma)) out.push_back(std::move(t));
  }
  if (!unknown.empty()) {
    std::string msg = "unknown word(s): ";
    for (std::size_t i = 0; i < unknown.size(); ++i) {
      msg += (i ? ", " : "") + unknown[i];
    }
    throw Error(ErrorCode::kUnknownWord, msg);
  }
  if (out.empty()) Fail("empty phrase");
  return out;
}

std::vector<ParseCandidate> Parse(const Lexicon &lexicon,
                                  const std::vector<Token> &tokens) {
  if (tokens.empty()) Fail("empty phrase");
  std::vector<int> idx(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) idx[i] = static_cast<int>(i);
  bool reset = false;
  if (tokens[0].keyword && tokens[0].lemma == kReset) {
    reset = true;
    idx.erase(idx.begin());
  }
  std::vector<std::vector<int>> clause_idx(1);
  for (int i : idx) {
    if (tokens[i].keyword && tokens[i].lemma == kReset) {
      Fail("'forget everything' must open the phrase");
    }
    if (tokens[i].keyword && tokens[i].lemma == "but") {
      if (clause_idx.size() == 2) Fail("at most one 'but' per phrase");
      clause_idx.emplace_back();
      continue;
    }
    clause_idx.back().push_back(i);
  }

  std::vector<std::vector<ClauseParse>> structures = {{}};
  for (const auto &ci : clause_idx) {
    const auto alts = ParseClause(tokens, ci);
    std::vector<std::vector<ClauseParse>> next;
    for (const auto &prefix : structures) {
      for (const auto &a : alts) {
        auto seq = prefix;
        seq.push_back(a);
        next.push_back(std::move(seq));
      }
    }
    structures = std::move(next);
  }

  // Sense cross product, first token varying slowest.
  std::vector<std::vector<int>> choices = {std::vector<int>(tokens.size(), -1)};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].keyword) continue;
    const std::size_t n = lexicon.Lookup(tokens[i].lemma).size();
    std::vector<std::vector<int>> next;
    for (const auto &c : choices) {
      for (std::size_t s = 0; s < n; ++s) {
        auto copy = c;
        copy[i] = static_cast<int>(s);
        next.push_back(std::move(copy));
      }
    }
    choices = std::move(next);
  }

  std::vector<ParseCandidate> out;
  for (const auto &s : structures) {
    for (const auto &c : choices) {
      ParseCandidate pc;
      pc.tokens = tokens;
      pc.reset = reset;
      pc.clauses = s;
      pc.sense_choices = c;
      out.push_back(std::move(pc));
    }
  }
  return out;
}

std::string ParseCandidate::Describe(const Lexicon &lexicon) const {
  auto word = [&](int i) {
    const auto senses = lexicon.Lookup(tokens[i].lemma);
    if (senses.size() > 1 && sense_choices[i] >= 0) {
      return senses[sense_choices[i]].id;
    }
    return tokens[i].lemma;
  };
  std::function<std::string(const Expr &)> render = [&](const Expr &e) {
    if (e.kind == Expr::Kind::kTerm) {
      std::string out;
      for (int m : e.mods) out += word(m) + "->";
      return out + word(e.head);
    }
    std::string out = e.kind == Expr::Kind::kAnd ? "and(" : "or(";
    for (std::size_t i = 0; i < e.children.size(); ++i) {
      if (i) out += ", ";
      out += render(e.children[i]);
    }
    return out + ")";
  };
  std::string out = reset ? "reset; " : "";
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto &cl = clauses[c];
    if (c) out += " but ";
    if (cl.mood == Mood::kConditional) out += "if ";
    std::string body;
    for (const auto &g : cl.chain) {
      if (!body.empty()) body += " ";
      body += render(g);
    }
    if (cl.head_kind == HeadKind::kNone) {
      out += "it <- " + body;
    } else {
      out += body.empty() ? word(cl.head) : body + "->" + word(cl.head);
    }
  }
  return out;
}

}  // namespace meaning
