#include <gtest/gtest.h>

#include <thread>

#include "jawi/service.hpp"
#include "support.hpp"

namespace jawi {
namespace {

using nlohmann::json;
using service::Service;

const Service& svc() {
  static const Service s(testing::table(), default_corpus());
  return s;
}

json post_transliterate(const json& body, int expect_status = 200) {
  const auto r = svc().transliterate(body.dump());
  EXPECT_EQ(r.status, expect_status) << r.body.dump();
  return r.body;
}

json step(const json& state, const json& event, int expect_status = 200) {
  const auto r = svc().composer_step(json{{"state", state}, {"event", event}}.dump());
  EXPECT_EQ(r.status, expect_status) << r.body.dump();
  return r.body;
}

TEST(Service, Health) { EXPECT_EQ(svc().health().body, (json{{"ok", true}})); }

TEST(Service, Letters) {
  const auto r = svc().letters();
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body.size(), 33u);
  EXPECT_EQ(r.body, svc().letters().body);
  for (const auto& l : r.body) {
    if (l["id"] == "ra") {
      EXPECT_EQ(l["joins_left"], false);
      EXPECT_EQ(l["forms"]["medial"], false);
    }
    if (l["id"] == "ba") {
      EXPECT_EQ(l["joins_left"], true);
    }
  }
}

TEST(Service, ToJawi) {
  const auto body = post_transliterate({{"direction", "to-jawi"}, {"word", "satu"}});
  EXPECT_EQ(body["jawi"], "ساتو");
  EXPECT_EQ(body["forms"], (json{"initial", "final", "initial", "final"}));
  const auto trad = post_transliterate({{"direction", "to-jawi"}, {"word", "makan"}, {"mode", "traditional"}});
  EXPECT_EQ(trad["jawi"], "مکن");
}

TEST(Service, ToJawiSplitsWords) {
  const auto body = post_transliterate({{"direction", "to-jawi"}, {"word", "batu  satu"}});
  EXPECT_EQ(body["jawi"], "باتو ساتو");
  EXPECT_EQ(body["words"].size(), 2u);
}

TEST(Service, ToLatin) {
  const auto body = post_transliterate({{"direction", "to-latin"}, {"word", "ساتو"}, {"limit", 3}});
  ASSERT_EQ(body["candidates"].size(), 3u);
  EXPECT_EQ(body["candidates"][0]["latin"], "satu");
  EXPECT_EQ(body["candidates"][0]["score"], 1.0);
  EXPECT_EQ(body["candidates"][0]["trace"][0], "reading:sin/0");
}

TEST(Service, TransliterateErrors) {
  auto e = post_transliterate({{"direction", "to-jawi"}, {"word", ""}}, 400);
  EXPECT_EQ(e["error"]["code"], "EmptyInput");
  e = post_transliterate({{"direction", "to-jawi"}, {"word", "b4"}}, 400);
  EXPECT_EQ(e["error"]["code"], "UnencodableInput");
  EXPECT_EQ(e["error"]["detail"]["position"], 1);
  e = post_transliterate({{"direction", "to-latin"}, {"word", "abc"}}, 400);
  EXPECT_EQ(e["error"]["code"], "UnknownCodepoint");
  e = post_transliterate({{"direction", "sideways"}, {"word", "a"}}, 400);
  EXPECT_EQ(e["error"]["code"], "InvalidRequest");
  e = post_transliterate({{"direction", "to-latin"}, {"word", "با"}, {"limit", 0}}, 400);
  EXPECT_EQ(e["error"]["code"], "InvalidRequest");
  EXPECT_EQ(svc().transliterate("not json").status, 400);
  EXPECT_EQ(svc().transliterate("[1]").status, 400);
}

TEST(Service, ComposerFreshNewWord) {
  const auto body = step(json::object(), {{"type", "NewWord"}});
  EXPECT_EQ(composer_state_from_json(body["state"], testing::table()), ComposerState{});
  EXPECT_EQ(body["render"]["jawi"], "");
  EXPECT_EQ(body["consistency"], json::array());
}

TEST(Service, ComposerBatuScript) {
  json state = json::object();
  json last;
  for (const char* id : {"ba", "alif", "ta", "waw"}) {
    for (const json& ev : {json{{"type", "PickLetter"}, {"letter", id}}, json{{"type", "PickReading"}, {"index", 0}},
                           json{{"type", "Process"}}}) {
      last = step(state, ev);
      state = last["state"];
    }
  }
  EXPECT_EQ(last["render"]["jawi"], "باتو");
  EXPECT_EQ(last["render"]["latin"], "batu");
  EXPECT_EQ(last["render"]["forms"], (json{"initial", "final", "initial", "final"}));
  EXPECT_EQ(last["consistency"].size(), 4u);  // default isolated filter everywhere

  // Undo through the echoed state.
  const auto undone = step(state, {{"type", "Undo"}});
  EXPECT_EQ(undone["render"]["latin"], "bat");
}

TEST(Service, ComposerErrors) {
  auto e = step(json::object(), {{"type", "Process"}}, 400);
  EXPECT_EQ(e["error"]["code"], "NoPendingSelection");
  e = step({{"committed", "nope"}}, {{"type", "Process"}}, 400);
  EXPECT_EQ(e["error"]["code"], "InvalidState");
  EXPECT_EQ(svc().composer_step(R"({"state":{}})").status, 400);
}

TEST(Service, Stateless) {
  const std::string req = R"({"state":{},"event":{"type":"PickLetter","letter":"ba"}})";
  const auto a = svc().composer_step(req);
  const auto b = svc().composer_step(req);
  EXPECT_EQ(a.body, b.body);
  EXPECT_EQ(svc().transliterate(R"({"direction":"to-latin","word":"باتو"})").body,
            svc().transliterate(R"({"direction":"to-latin","word":"باتو"})").body);
}

class LiveServer : public ::testing::Test {
 protected:
  void SetUp() override {
    service_ = std::make_unique<Service>(testing::table(), default_corpus(),
                                         service::Options{{"http://allowed.test"}, std::nullopt});
    service_->mount(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  std::unique_ptr<Service> service_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(LiveServer, Endpoints) {
  auto cli = client();
  auto health = cli.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(json::parse(health->body), (json{{"ok", true}}));

  auto letters = cli.Get("/api/letters");
  ASSERT_TRUE(letters);
  EXPECT_EQ(json::parse(letters->body).size(), 33u);

  auto tr = cli.Post("/api/transliterate", R"({"direction":"to-jawi","word":"batu"})", "application/json");
  ASSERT_TRUE(tr);
  EXPECT_EQ(json::parse(tr->body)["jawi"], "باتو");

  auto bad = cli.Post("/api/composer/step", R"({"state":{},"event":{"type":"Process"}})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(json::parse(bad->body)["error"]["code"], "NoPendingSelection");

  auto missing = cli.Get("/api/nothing");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"]["code"], "NotFound");
}

TEST_F(LiveServer, CorsAllowlist) {
  auto cli = client();
  auto allowed = cli.Get("/api/health", {{"Origin", "http://allowed.test"}});
  ASSERT_TRUE(allowed);
  EXPECT_EQ(allowed->get_header_value("Access-Control-Allow-Origin"), "http://allowed.test");
  auto other = cli.Get("/api/health", {{"Origin", "http://other.test"}});
  ASSERT_TRUE(other);
  EXPECT_FALSE(other->has_header("Access-Control-Allow-Origin"));
  auto preflight = cli.Options("/api/transliterate", {{"Origin", "http://allowed.test"}});
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
}

}  // namespace
}  // namespace jawi
