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

#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "common/fixtures.h"
#include "service/repl.h"

namespace meaning::service {
namespace {

class ApiTest : public ::testing::Test {
 protected:
  ApiResponse Call(const std::string &method, const std::string &path,
                   const std::string &body = {},
                   std::map<std::string, std::string> query = {}) {
    return api_.Handle(ApiRequest{method, path, std::move(query), body});
  }

  std::string NewSession() {
    const auto r = Call("POST", "/sessions");
    EXPECT_EQ(r.status, 201);
    return r.body.at("id");
  }

  ApiResponse Say(const std::string &id, const std::string &phrase) {
    return Call("POST", "/sessions/" + id + "/phrases", Json{{"phrase", phrase}}.dump());
  }

  Engine engine_{testing::Seed(), {}, "seed"};
  ApiService api_{engine_};
};

TEST_F(ApiTest, HealthAndCreate) {
  const auto h = Call("GET", "/health");
  EXPECT_EQ(h.status, 200);
  EXPECT_EQ(h.body.at("lexicon"), "seed");
  EXPECT_EQ(NewSession(), "s1");
  EXPECT_EQ(NewSession(), "s2");
  EXPECT_EQ(api_.session_count(), 2u);
  EXPECT_EQ(Call("GET", "/sessions").body.at("sessions").size(), 2u);
}

TEST_F(ApiTest, CreateWithConfig) {
  const auto r = Call("POST", "/sessions", R"({"config": {"threshold": 0.8}})");
  ASSERT_EQ(r.status, 201);
  EXPECT_EQ(r.body.at("config").at("threshold"), 0.8);
  const auto bad = Call("POST", "/sessions", R"({"config": {"threshold": 2}})");
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.body.at("error").at("path"), "$.config.threshold");
}

TEST_F(ApiTest, PhrasesBumpVersion) {
  const auto id = NewSession();
  const auto r = Say(id, "drive fast");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body.at("action"), "accepted");
  EXPECT_EQ(r.body.at("version"), 1);
  EXPECT_EQ(r.body.at("chosen").at("structure"), "fast->drive");
  const auto g = Call("GET", "/sessions/" + id);
  EXPECT_EQ(g.body.at("history").size(), 1u);
  EXPECT_EQ(g.body.at("active_context"), "act:drive");
}

TEST_F(ApiTest, StaleVersionIsConflict) {
  const auto id = NewSession();
  Say(id, "walk");
  const auto r = Call("POST", "/sessions/" + id + "/phrases",
                      R"({"phrase": "walk fast", "expected_version": 0})");
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.body.at("error").at("code"), "stale_version");
  const auto ok = Call("POST", "/sessions/" + id + "/phrases",
                       R"({"phrase": "walk fast", "expected_version": 1})");
  EXPECT_EQ(ok.status, 200);
  EXPECT_EQ(ok.body.at("version"), 2);
}

TEST_F(ApiTest, SchemaErrorsNamePath) {
  const auto id = NewSession();
  const std::string p = "/sessions/" + id + "/phrases";
  EXPECT_EQ(Call("POST", p, "{}").body.at("error").at("path"), "$.phrase");
  EXPECT_EQ(Call("POST", p, R"({"phrase": 3})").body.at("error").at("path"), "$.phrase");
  EXPECT_EQ(Call("POST", p, R"({"phrase": "walk", "expected_version": "x"})")
                .body.at("error")
                .at("path"),
            "$.expected_version");
  const auto malformed = Call("POST", p, "{not json");
  EXPECT_EQ(malformed.status, 400);
  EXPECT_EQ(malformed.body.at("error").at("code"), "malformed_body");
  EXPECT_EQ(Call("POST", "/sessions/" + id + "/reinterpret", R"({"window": -1})")
                .body.at("error")
                .at("path"),
            "$.window");
  // A rejected request leaves the session untouched.
  EXPECT_EQ(Call("GET", "/sessions/" + id).body.at("version"), 0);
}

TEST_F(ApiTest, RoutingErrors) {
  EXPECT_EQ(Call("GET", "/nowhere").status, 404);
  EXPECT_EQ(Call("GET", "/sessions/s99").status, 404);
  EXPECT_EQ(Call("DELETE", "/sessions").status, 405);
  const auto id = NewSession();
  EXPECT_EQ(Call("GET", "/sessions/" + id + "/teleport").status, 404);
  EXPECT_EQ(Call("GET", "/sessions/" + id + "/phrases/x").status, 404);
}

TEST_F(ApiTest, ReinterpretRetriesSpare) {
  const auto id = NewSession();
  Say(id, "bank is high");
  Say(id, "it is deeper");
  const auto r = Call("POST", "/sessions/" + id + "/reinterpret", R"({"window": 2})");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body.at("version"), 3);
  EXPECT_EQ(r.body.at("chosen").at("context_id"), "obj:bank#river");
  const auto t = Call("GET", "/sessions/" + id + "/trace");
  EXPECT_EQ(t.body.at("entries").size(), 2u);
}

TEST_F(ApiTest, HeatmapDescribeConfigDocument) {
  const auto id = NewSession();
  const std::string base = "/sessions/" + id;
  const auto h = Call("GET", base + "/heatmap", {}, {{"name", "fast"}, {"resolution", "8"}});
  ASSERT_EQ(h.status, 200);
  EXPECT_EQ(h.body.at("width"), 8);
  EXPECT_EQ(Call("GET", base + "/heatmap", {}, {{"name", "fast"}, {"resolution", "1"}})
                .body.at("error")
                .at("path"),
            "$.query.resolution");
  EXPECT_EQ(Call("GET", base + "/heatmap", {}, {{"name", "nope"}}).status, 404);

  const auto d = Call("GET", base + "/describe", {}, {{"word", "slow"}});
  ASSERT_EQ(d.status, 200);
  EXPECT_EQ(Call("GET", base + "/describe", {}, {{"word", "heavy"}}).status, 422);
  EXPECT_EQ(Call("GET", base + "/describe", {}, {{"word", "zzz"}}).status, 400);

  const auto c = Call("PUT", base + "/config", R"({"spare_limit": 0})");
  ASSERT_EQ(c.status, 200);
  EXPECT_EQ(c.body.at("config").at("spare_limit"), 0);
  EXPECT_EQ(Call("PUT", base + "/config", R"({"bogus": 1})").status, 400);

  Say(id, "robot is ne");
  const auto doc = Call("GET", base + "/document");
  ASSERT_EQ(doc.status, 200);
  const Session back = SessionFromJson(doc.body.at("document"), testing::Seed());
  EXPECT_EQ(back.version(), doc.body.at("version").get<long>());
}

// The REPL and the API expose the same flags for the same phrases.
TEST_F(ApiTest, FlagParityWithRepl) {
  const auto id = NewSession();
  Repl repl(engine_);
  for (const char *p : {"walk", "walk fast or slowly", "stand still faster", "walk faster",
                        "car is fast and slow", "robot is ne", "it is not sw"}) {
    const auto r = Say(id, p);
    repl.Handle(p);
    const auto &last = repl.session().history().back().outcome;
    EXPECT_EQ(r.body.at("flags"), OutcomeBody(last, repl.session().lexicon()).at("flags")) << p;
    EXPECT_EQ(r.body.at("digest"), Digest(last)) << p;
  }
}

TEST(ApiServerTest, LoopbackOverHttp) {
  ApiService api(Engine{testing::Seed(), {}, "seed"});
  httplib::Server server;
  Mount(server, api);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/sessions", "{}", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  const std::string id = Json::parse(created->body).at("id");
  auto said = client.Post(("/sessions/" + id + "/phrases").c_str(),
                          R"({"phrase": "drive fast"})", "application/json");
  ASSERT_TRUE(said);
  EXPECT_EQ(said->status, 200);
  EXPECT_EQ(Json::parse(said->body).at("action"), "accepted");
  auto heat = client.Get(("/sessions/" + id + "/heatmap?name=ne&resolution=4").c_str());
  ASSERT_TRUE(heat);
  EXPECT_EQ(Json::parse(heat->body).at("height"), 4);
  EXPECT_EQ(client.Get("/missing")->status, 404);

  server.stop();
  t.join();
}

}  // namespace
}  // namespace meaning::service
