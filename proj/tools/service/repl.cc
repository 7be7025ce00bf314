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

#include "service/repl.h"

#include <cstdio>
#include <iostream>
#include <sstream>

#include "meaning/abstraction.h"
#include "meaning/error.h"

namespace meaning::service {

namespace {

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Repl::Repl(const Engine &engine) : session_(engine.lexicon, engine.config) {}

std::string Repl::Help() {
  return "phrases are interpreted against the narrative; meta-commands:\n"
         "  :show <name>      ASCII heatmap of a context, lexicon region or axis\n"
         "  :contexts         list narrative contexts\n"
         "  :spare            list spare contexts\n"
         "  :replay N [L]     reinterpret the last N phrases with spare limit L\n"
         "  :describe <word>  describe a word with the other words\n"
         "  :config           show the comprehension config\n"
         "  :save <path>      write the session as JSON\n"
         "  :help, :quit\n";
}

std::string Repl::Handle(const std::string &raw) {
  const std::string line = Trim(raw);
  if (line.empty()) return {};
  try {
    if (line[0] == ':') return Meta(line);
    return RenderOutcome(session_.Interpret(line), session_.lexicon());
  } catch (const std::exception &e) {
    return std::string("error: ") + e.what() + "\n";
  }
}

std::string Repl::Meta(const std::string &line) {
  std::istringstream is(line.substr(1));
  std::string cmd;
  is >> cmd;
  std::string arg;
  std::getline(is, arg);
  arg = Trim(arg);
  std::ostringstream os;
  if (cmd == "quit" || cmd == "q" || cmd == "exit") {
    done_ = true;
    return {};
  }
  if (cmd == "help") return Help();
  if (cmd == "show") {
    if (arg.empty()) return "usage: :show <name>\n";
    auto region = ResolveDisplayRegion(session_, arg);
    if (!region) return "nothing named '" + arg + "'\n";
    const Heatmap map = MakeHeatmap(*region);
    os << arg << " over";
    for (const auto &a : map.axes) os << " " << a;
    os << "\n" << AsciiHeatmap(map);
    return os.str();
  }
  if (cmd == "contexts") {
    const auto &st = session_.state();
    if (st.hierarchy.nodes().empty()) return "no contexts yet\n";
    for (const auto &n : st.hierarchy.nodes()) {
      os << (n.context.id() == st.active_context ? "* " : "  ") << n.context.id()
         << " {";
      for (std::size_t i = 0; i < n.context.axes().size(); ++i) {
        os << (i ? ", " : "") << n.context.axes()[i];
      }
      os << "}";
      if (n.context.parent()) os << " <- " << *n.context.parent();
      os << "\n";
    }
    return os.str();
  }
  if (cmd == "spare") {
    const auto &sp = session_.state().spares;
    os << sp.size() << " spare context(s), limit " << sp.limit() << "\n";
    for (const auto &s : sp.items()) os << "  " << s.context_id << ": " << s.origin << "\n";
    return os.str();
  }
  if (cmd == "replay") {
    std::istringstream as(arg);
    int window = -1;
    int limit = session_.config().spare_limit;
    if (!(as >> window) || window < 0) return "usage: :replay N [spare-limit]\n";
    as >> limit;
    return RenderOutcome(session_.ReinterpretWindow(limit, window), session_.lexicon());
  }
  if (cmd == "describe") {
    if (arg.empty()) return "usage: :describe <word>\n";
    const auto result = DescribeOwnConcept(arg, session_.lexicon());
    os << arg << " ~";
    for (const auto &n : result.Names()) os << " " << n;
    os << "  (goal " << Fixed(result.goal.mean) << (result.goal.met ? ", met" : "")
       << ", " << result.visited << " nodes)\n";
    return os.str();
  }
  if (cmd == "config") return ConfigToJson(session_.config()).dump(1) + "\n";
  if (cmd == "save") {
    if (arg.empty()) return "usage: :save <path>\n";
    WriteJsonFile(arg, SessionToJson(session_));
    return "saved " + arg + "\n";
  }
  return "unknown command ':" + cmd + "' (try :help)\n";
}

void RunRepl(const Engine &engine, std::istream &in, std::ostream &out, bool prompt) {
  Repl repl(engine);
  if (prompt) out << "meaning (" << engine.lexicon_source << "), :help for commands\n";
  std::string line;
  while (!repl.done()) {
    if (prompt) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    out << repl.Handle(line) << std::flush;
  }
}

}  // namespace meaning::service
