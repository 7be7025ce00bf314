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

#include "service/scenario.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "meaning/error.h"

namespace meaning::service {

namespace {

std::vector<std::string> Words(const std::string &s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

bool ParseDouble(const std::string &s, double *out) {
  char *end = nullptr;
  *out = std::strtod(s.c_str(), &end);
  return end != s.c_str() && *end == '\0' && std::isfinite(*out);
}

bool ParseInt(const std::string &s, int *out) {
  char *end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') return false;
  *out = static_cast<int>(v);
  return true;
}

// Expectation name -> allowed argument counts (min, max; -1 = unbounded).
const std::map<std::string, std::pair<int, int>> &ExpectArity() {
  static const std::map<std::string, std::pair<int, int>> kArity = {
      {"action", {1, 1}},     {"flags", {0, -1}},     {"flag", {1, 1}},
      {"no-flag", {1, 1}},    {"failing-check", {1, 1}}, {"structure", {1, -1}},
      {"context", {1, 1}},    {"effector", {3, 3}},   {"no-effector", {0, 0}},
      {"peak", {4, 4}},       {"membership", {4, 4}},
  };
  return kArity;
}

std::string FlagSet(const std::set<Flag> &flags) {
  std::string s = "{";
  for (Flag f : flags) {
    if (s.size() > 1) s += ", ";
    s += FlagName(f);
  }
  return s + "}";
}

struct Checker {
  const Session &session;
  const std::optional<InterpretationOutcome> &outcome;

  // Returns an empty string when the expectation holds, else the mismatch.
  std::string Check(const std::vector<std::string> &a) const {
    const std::string &what = a[0];
    if (!outcome) return "no outcome yet";
    const auto &o = *outcome;
    if (what == "action") {
      const std::string got(ActionName(o.action));
      return got == a[1] ? "" : "expected " + a[1] + ", got " + got;
    }
    if (what == "flags" || what == "flag" || what == "no-flag" ||
        what == "failing-check") {
      std::set<Flag> want;
      for (std::size_t i = 1; i < a.size(); ++i) {
        auto f = ParseFlag(a[i]);
        if (!f) return "unknown flag '" + a[i] + "'";
        want.insert(*f);
      }
      if (what == "flags") {
        return want == o.flags ? ""
                               : "expected " + FlagSet(want) + ", got " + FlagSet(o.flags);
      }
      const Flag f = *want.begin();
      if (what == "flag") {
        return o.flags.count(f) ? "" : "missing " + a[1] + " in " + FlagSet(o.flags);
      }
      if (what == "no-flag") {
        return o.flags.count(f) ? "unexpected " + a[1] : "";
      }
      if (!o.failing_check) return "no failing check";
      return *o.failing_check == f
                 ? ""
                 : "expected " + a[1] + ", got " + std::string(FlagName(*o.failing_check));
    }
    if (what == "structure") {
      std::string want;
      for (std::size_t i = 1; i < a.size(); ++i) want += (i > 1 ? " " : "") + a[i];
      if (!o.chosen) return "no chosen reading";
      const std::string got = o.chosen->candidate.Describe(session.lexicon());
      return got == want ? "" : "expected '" + want + "', got '" + got + "'";
    }
    if (what == "context") {
      if (!o.chosen) return "no chosen reading";
      return o.chosen->context_id == a[1]
                 ? ""
                 : "expected " + a[1] + ", got " + o.chosen->context_id;
    }
    if (what == "effector" || what == "no-effector") {
      const std::optional<EffectorCommand> cmd =
          o.chosen ? o.chosen->report.effector_command : std::nullopt;
      if (what == "no-effector") {
        return cmd ? "unexpected command " + cmd->axis + "=" + Fixed(cmd->value) : "";
      }
      double v = 0.0, tol = 0.0;
      if (!cmd) return "no effector command";
      ParseDouble(a[2], &v);
      ParseDouble(a[3], &tol);
      if (cmd->axis != a[1]) return "expected axis " + a[1] + ", got " + cmd->axis;
      return std::abs(cmd->value - v) <= tol
                 ? ""
                 : "expected " + a[1] + "=" + a[2] + " +- " + a[3] + ", got " +
                       Fixed(cmd->value);
    }
    const auto *node = session.state().hierarchy.Find(a[1]);
    if (!node) return "no context '" + a[1] + "'";
    const Region &region = node->region;
    if (what == "peak") {
      double v = 0.0, tol = 0.0;
      ParseDouble(a[3], &v);
      ParseDouble(a[4], &tol);
      const int idx = region.FactorIndexFor(a[2]);
      if (idx < 0) return "axis " + a[2] + " is unconstrained";
      const auto &grid = region.factors()[idx].grid;
      const int res = grid.resolution();
      const bool first = grid.axes().front() == a[2];
      std::vector<double> marginal(res, 0.0);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const int node_k = grid.dims() == 1 ? static_cast<int>(k)
                           : first          ? static_cast<int>(k) / res
                                            : static_cast<int>(k) % res;
        marginal[node_k] = std::max(marginal[node_k], grid.values()[k]);
      }
      int best = 0;
      for (int k = 1; k < res; ++k) {
        if (marginal[k] > marginal[best]) best = k;
      }
      const double peak = MembershipGrid::NodeCoord(best, res);
      return std::abs(peak - v) <= tol ? ""
                                       : "expected peak " + a[3] + " +- " + a[4] +
                                             ", got " + Fixed(peak);
    }
    // membership
    std::map<AxisId, double> coords;
    std::istringstream is(a[2]);
    for (std::string item; std::getline(is, item, ',');) {
      const auto eq = item.find('=');
      double c = 0.0;
      if (eq == std::string::npos || !ParseDouble(item.substr(eq + 1), &c)) {
        return "bad coordinate '" + item + "'";
      }
      coords[item.substr(0, eq)] = c;
    }
    double v = 0.0, tol = 0.0;
    ParseDouble(a[3], &v);
    ParseDouble(a[4], &tol);
    const double got = MembershipAt(region, coords);
    return std::abs(got - v) <= tol ? ""
                                    : "expected " + a[3] + " +- " + a[4] + ", got " +
                                          Fixed(got);
  }
};

}  // namespace

Scenario ParseScenario(const std::string &text, const std::string &name) {
  Scenario sc;
  sc.name = name;
  std::istringstream is(text);
  int line_no = 0;
  bool have_outcome = false;
  auto fail = [&](const std::string &msg) {
    throw Error(ErrorCode::kParseError,
                name + ":" + std::to_string(line_no) + ": " + msg);
  };
  for (std::string raw; std::getline(is, raw);) {
    ++line_no;
    const std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    ScenarioStep step;
    step.line = line_no;
    if (line[0] == '>') {
      step.kind = ScenarioStep::Kind::kPhrase;
      const std::string phrase = Trim(line.substr(1));
      if (phrase.empty()) fail("empty phrase");
      step.args = {phrase};
      have_outcome = true;
      sc.steps.push_back(std::move(step));
      continue;
    }
    auto w = Words(line);
    const std::string head = w.front();
    w.erase(w.begin());
    if (head == "set") {
      if (w.size() != 2) fail("usage: set <config-key> <value>");
      step.kind = ScenarioStep::Kind::kSet;
    } else if (head == "replay") {
      int a = 0, b = 0;
      if (w.size() != 2 || !ParseInt(w[0], &a) || !ParseInt(w[1], &b) || a < 0 ||
          b < 0) {
        fail("usage: replay <spare-limit> <window>");
      }
      step.kind = ScenarioStep::Kind::kReplay;
      have_outcome = true;
    } else if (head == "expect") {
      if (w.empty()) fail("expect needs a kind");
      auto it = ExpectArity().find(w[0]);
      if (it == ExpectArity().end()) fail("unknown expectation '" + w[0] + "'");
      const int n = static_cast<int>(w.size()) - 1;
      const auto [lo, hi] = it->second;
      if (n < lo || (hi >= 0 && n > hi)) fail("wrong argument count for '" + w[0] + "'");
      if (!have_outcome) fail("expectation before any phrase");
      for (std::size_t i = 1; i < w.size(); ++i) {
        const bool flag_arg = w[0] == "flags" || w[0] == "flag" || w[0] == "no-flag" ||
                              w[0] == "failing-check";
        if (flag_arg && !ParseFlag(w[i])) fail("unknown flag '" + w[i] + "'");
      }
      auto numeric = [&](std::initializer_list<std::size_t> idx) {
        double d = 0.0;
        for (auto i : idx) {
          if (!ParseDouble(w[i], &d)) fail("expected a number, got '" + w[i] + "'");
        }
      };
      if (w[0] == "effector") numeric({2, 3});
      if (w[0] == "peak") numeric({3, 4});
      if (w[0] == "membership") numeric({3, 4});
      step.kind = ScenarioStep::Kind::kExpect;
    } else {
      fail("unknown directive '" + head + "'");
    }
    step.args = std::move(w);
    sc.steps.push_back(std::move(step));
  }
  return sc;
}

Scenario LoadScenario(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseScenario(ss.str(), path.filename().string());
}

ScenarioReport RunScenario(const Scenario &scenario, const Engine &engine) {
  ScenarioReport report;
  std::ostringstream os;
  os << "scenario " << scenario.name << "\n";
  Session session(engine.lexicon, engine.config);
  std::optional<InterpretationOutcome> last;
  for (const auto &step : scenario.steps) {
    switch (step.kind) {
      case ScenarioStep::Kind::kSet: {
        Json patch = Json::object();
        double v = 0.0;
        int iv = 0;
        if (step.args[0] == "spare_limit" && ParseInt(step.args[1], &iv)) {
          patch[step.args[0]] = iv;
        } else if (ParseDouble(step.args[1], &v)) {
          patch[step.args[0]] = v;
        } else {
          patch[step.args[0]] = step.args[1];
        }
        os << "  " << step.line << " set " << step.args[0] << " " << step.args[1];
        try {
          session.SetConfig(ConfigFromJson(patch, "$", session.config()));
          os << "\n";
        } catch (const Error &e) {
          os << "\n      FAIL " << e.what() << "\n";
          ++report.checks;
          ++report.failures;
        }
        break;
      }
      case ScenarioStep::Kind::kPhrase: {
        os << "  " << step.line << " > " << step.args[0] << "\n";
        last = session.Interpret(step.args[0]);
        std::istringstream rendered(RenderOutcome(*last, session.lexicon()));
        for (std::string l; std::getline(rendered, l);) os << "      " << l << "\n";
        break;
      }
      case ScenarioStep::Kind::kReplay: {
        int limit = 0, window = 0;
        ParseInt(step.args[0], &limit);
        ParseInt(step.args[1], &window);
        os << "  " << step.line << " replay " << limit << " " << window << "\n";
        try {
          last = session.ReinterpretWindow(limit, window);
          std::istringstream rendered(RenderOutcome(*last, session.lexicon()));
          for (std::string l; std::getline(rendered, l);) os << "      " << l << "\n";
        } catch (const Error &e) {
          os << "      FAIL " << e.what() << "\n";
          ++report.checks;
          ++report.failures;
          last.reset();
        }
        break;
      }
      case ScenarioStep::Kind::kExpect: {
        ++report.checks;
        std::string text = "expect";
        for (const auto &a : step.args) text += " " + a;
        const std::string miss = Checker{session, last}.Check(step.args);
        if (miss.empty()) {
          os << "      ok   " << text << "\n";
        } else {
          ++report.failures;
          os << "      FAIL " << text << ": " << miss << "\n";
        }
        break;
      }
    }
  }
  report.passed = report.failures == 0;
  os << "result: " << (report.passed ? "PASS" : "FAIL") << " (" << report.checks
     << " checks, " << report.failures << " failed)\n";
  report.text = os.str();
  return report;
}

}  // namespace meaning::service
