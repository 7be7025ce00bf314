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

// Session API. All bodies are JSON.
//
//   GET  /health
//   POST /sessions                      {"config"?: {...}}            -> 201
//   GET  /sessions
//   GET  /sessions/{id}
//   POST /sessions/{id}/phrases         {"phrase", "expected_version"?}
//   POST /sessions/{id}/reinterpret     {"window", "spare_limit"?}
//   GET  /sessions/{id}/heatmap?name=<context|region|axis>[&axes=a,b][&resolution=n]
//   GET  /sessions/{id}/trace
//   GET  /sessions/{id}/config
//   PUT  /sessions/{id}/config          partial config
//   GET  /sessions/{id}/document        full session document
//   GET  /sessions/{id}/describe?word=<word>
//
// Session responses carry "version", which grows with every state change.
// Errors: {"error": {"code", "message", "path"?}} with 404 for unknown
// sessions or routes, 400 for malformed bodies (path names the bad field),
// 409 when expected_version is stale.

#ifndef MEANING_TOOLS_API_H_
#define MEANING_TOOLS_API_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "service/service.h"

namespace httplib {
class Server;
}

namespace meaning::service {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  Json body;
};

class ApiService {
 public:
  explicit ApiService(Engine engine);

  // Thread-safe. Requests for one session are serialized.
  ApiResponse Handle(const ApiRequest &request);

  std::size_t session_count() const;

 private:
  struct Slot {
    std::mutex mu;
    std::string id;
    std::string created_at;
    std::unique_ptr<Session> session;
  };

  ApiResponse CreateSession(const Json &body);
  ApiResponse ListSessions() const;
  ApiResponse OnSession(Slot &slot, const std::string &method,
                        const std::string &action, const ApiRequest &request);
  std::shared_ptr<Slot> Find(const std::string &id) const;

  Engine engine_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  long next_id_ = 1;
};

// Routes every request of `server` to `service`.
void Mount(httplib::Server &server, ApiService &service);

}  // namespace meaning::service

#endif  // MEANING_TOOLS_API_H_
