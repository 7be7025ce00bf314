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

#include "service/api.h"

#include <chrono>
#include <ctime>
#include <sstream>
#include <vector>

#include <httplib.h>

#include "meaning/abstraction.h"
#include "meaning/error.h"

namespace meaning::service {

namespace {

ApiResponse Fail(int status, const std::string &code, const std::string &message,
                 const std::string &path = {}) {
  Json err = {{"code", code}, {"message", message}};
  if (!path.empty()) err["path"] = path;
  return {status, {{"error", std::move(err)}}};
}

ApiResponse NotFound(const std::string &what) { return Fail(404, "not_found", what); }

std::vector<std::string> Segments(const std::string &path) {
  std::vector<std::string> out;
  std::istringstream is(path);
  for (std::string s; std::getline(is, s, '/');) {
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

Json ParseBody(const std::string &body) {
  if (body.empty()) return Json::object();
  return Json::parse(body);  // parse_error handled by the caller
}

std::string NowIso() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<AxisId> SplitAxes(const std::string &s) {
  std::vector<AxisId> out;
  std::istringstream is(s);
  for (std::string a; std::getline(is, a, ',');) {
    if (!a.empty()) out.push_back(a);
  }
  return out;
}

}  // namespace

ApiService::ApiService(Engine engine) : engine_(std::move(engine)) {}

std::size_t ApiService::session_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

std::shared_ptr<ApiService::Slot> ApiService::Find(const std::string &id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ApiResponse ApiService::Handle(const ApiRequest &request) {
  try {
    const auto seg = Segments(request.path);
    if (seg.size() == 1 && seg[0] == "health" && request.method == "GET") {
      return {200, {{"ok", true}, {"lexicon", engine_.lexicon_source}}};
    }
    if (seg.empty() || seg[0] != "sessions") return NotFound("no route " + request.path);
    if (seg.size() == 1) {
      if (request.method == "POST") return CreateSession(ParseBody(request.body));
      if (request.method == "GET") return ListSessions();
      return Fail(405, "method_not_allowed", request.method + " " + request.path);
    }
    auto slot = Find(seg[1]);
    if (!slot) return NotFound("unknown session '" + seg[1] + "'");
    if (seg.size() > 3) return NotFound("no route " + request.path);
    std::lock_guard<std::mutex> lock(slot->mu);
    return OnSession(*slot, request.method, seg.size() == 3 ? seg[2] : "", request);
  } catch (const Json::parse_error &e) {
    return Fail(400, "malformed_body", e.what(), "$");
  } catch (const SchemaError &e) {
    return Fail(400, "schema", e.what(), e.path());
  } catch (const Error &e) {
    return Fail(400, ErrorCodeName(e.code()), e.what());
  }
}

ApiResponse ApiService::CreateSession(const Json &body) {
  if (!body.is_object()) throw SchemaError("$", "expected an object");
  ComprehensionConfig config = engine_.config;
  if (auto it = body.find("config"); it != body.end()) {
    config = ConfigFromJson(*it, "$.config", config);
  }
  auto slot = std::make_shared<Slot>();
  slot->created_at = NowIso();
  slot->session = std::make_unique<Session>(engine_.lexicon, config);
  {
    std::lock_guard<std::mutex> lock(mu_);
    slot->id = "s" + std::to_string(next_id_++);
    sessions_[slot->id] = slot;
  }
  return {201,
          {{"id", slot->id},
           {"created_at", slot->created_at},
           {"version", slot->session->version()},
           {"config", ConfigToJson(config)}}};
}

ApiResponse ApiService::ListSessions() const {
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto &[id, slot] : sessions_) slots.push_back(slot);
  }
  Json arr = Json::array();
  for (const auto &slot : slots) {
    std::lock_guard<std::mutex> lock(slot->mu);
    arr.push_back({{"id", slot->id},
                   {"created_at", slot->created_at},
                   {"version", slot->session->version()}});
  }
  return {200, {{"sessions", std::move(arr)}}};
}

ApiResponse ApiService::OnSession(Slot &slot, const std::string &method,
                                  const std::string &action, const ApiRequest &request) {
  Session &session = *slot.session;
  auto with_version = [&](Json body) {
    body["session"] = slot.id;
    body["version"] = session.version();
    return body;
  };
  if (action.empty() && method == "GET") {
    Json history = Json::array();
    for (const auto &h : session.history()) {
      history.push_back({{"phrase", h.phrase}, {"digest", h.digest}});
    }
    return {200, with_version({{"id", slot.id},
                               {"created_at", slot.created_at},
                               {"active_context", session.state().active_context},
                               {"history", std::move(history)},
                               {"config", ConfigToJson(session.config())}})};
  }
  if (action == "phrases" && method == "POST") {
    const Json body = ParseBody(request.body);
    if (!body.is_object()) throw SchemaError("$", "expected an object");
    auto it = body.find("phrase");
    if (it == body.end()) throw SchemaError("$.phrase", "missing field");
    if (!it->is_string()) throw SchemaError("$.phrase", "expected a string");
    if (auto v = body.find("expected_version"); v != body.end()) {
      if (!v->is_number_integer()) {
        throw SchemaError("$.expected_version", "expected an integer");
      }
      if (v->get<long>() != session.version()) {
        return Fail(409, "stale_version",
                    "session is at version " + std::to_string(session.version()));
      }
    }
    const auto outcome = session.Interpret(it->get<std::string>());
    return {200, with_version(OutcomeBody(outcome, session.lexicon()))};
  }
  if (action == "reinterpret" && method == "POST") {
    const Json body = ParseBody(request.body);
    if (!body.is_object()) throw SchemaError("$", "expected an object");
    auto w = body.find("window");
    if (w == body.end()) throw SchemaError("$.window", "missing field");
    if (!w->is_number_integer() || w->get<long>() < 0) {
      throw SchemaError("$.window", "expected a non-negative integer");
    }
    int limit = session.config().spare_limit;
    if (auto l = body.find("spare_limit"); l != body.end()) {
      if (!l->is_number_integer() || l->get<long>() < 0) {
        throw SchemaError("$.spare_limit", "expected a non-negative integer");
      }
      limit = l->get<int>();
    }
    const auto outcome = session.ReinterpretWindow(limit, w->get<int>());
    return {200, with_version(OutcomeBody(outcome, session.lexicon()))};
  }
  if (action == "heatmap" && method == "GET") {
    auto q = request.query.find("name");
    if (q == request.query.end()) throw SchemaError("$.query.name", "missing parameter");
    auto region = ResolveDisplayRegion(session, q->second);
    if (!region) return NotFound("nothing named '" + q->second + "'");
    int res = MembershipGrid::kDefaultResolution;
    if (auto r = request.query.find("resolution"); r != request.query.end()) {
      try {
        res = std::stoi(r->second);
      } catch (const std::exception &) {
        throw SchemaError("$.query.resolution", "expected an integer");
      }
      if (res < 2 || res > 512) throw SchemaError("$.query.resolution", "out of range");
    }
    std::vector<AxisId> axes;
    if (auto a = request.query.find("axes"); a != request.query.end()) {
      axes = SplitAxes(a->second);
    }
    Json body = HeatmapToJson(MakeHeatmap(*region, axes, res));
    body["name"] = q->second;
    body["context"] = ContextToJson(region->context());
    return {200, with_version(std::move(body))};
  }
  if (action == "trace" && method == "GET") {
    Json entries = Json::array();
    for (const auto &h : session.history()) {
      entries.push_back({{"phrase", h.phrase},
                         {"action", std::string(ActionName(h.action))},
                         {"digest", h.digest},
                         {"trace", h.outcome.trace}});
    }
    return {200, with_version({{"entries", std::move(entries)}})};
  }
  if (action == "config") {
    if (method == "GET") return {200, with_version({{"config", ConfigToJson(session.config())}})};
    if (method == "PUT") {
      const Json body = ParseBody(request.body);
      session.SetConfig(ConfigFromJson(body, "$", session.config()));
      return {200, with_version({{"config", ConfigToJson(session.config())}})};
    }
  }
  if (action == "document" && method == "GET") {
    return {200, with_version({{"document", SessionToJson(session)}})};
  }
  if (action == "describe" && method == "GET") {
    auto q = request.query.find("word");
    if (q == request.query.end()) throw SchemaError("$.query.word", "missing parameter");
    try {
      return {200, with_version({{"word", q->second},
                                 {"result", DescribeResultToJson(DescribeOwnConcept(
                                                q->second, session.lexicon()))}})};
    } catch (const NoDescriptionError &e) {
      return Fail(422, "no_description", e.what());
    }
  }
  return NotFound("no route " + method + " " + request.path);
}

void Mount(httplib::Server &server, ApiService &service) {
  auto handler = [&service](const httplib::Request &req, httplib::Response &res) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto &[k, v] : req.params) r.query[k] = v;
    r.body = req.body;
    const ApiResponse out = service.Handle(r);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Put(".*", handler);
  server.Delete(".*", handler);
}

}  // namespace meaning::service
