// Copyright 2026 The convbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>
#include <httplib.h>
#include <stdlib.h>

#include <atomic>
#include <random>
#include <thread>

#include "convbench/client/cache.hpp"
#include "convbench/client/extract.hpp"
#include "convbench/client/http_client.hpp"
#include "convbench/client/scripted_stub.hpp"
#include "convbench/errors.hpp"
#include "convbench/io/codec.hpp"
#include "fixtures.hpp"

using namespace convbench;
using namespace convbench::client;

namespace {

ChatRequest request(std::string text, std::string model = "m", int turn = 0) {
  return {{{"user", std::move(text)}}, ChatParams::for_code(std::move(model)), {"t", turn, Purpose::kCode}};
}

std::string ok_body(const std::string& content) {
  return Json{{"choices", Json::array({Json{{"message", Json{{"role", "assistant"}, {"content", content}}}}})}}
      .dump();
}

// Local chat-completions endpoint driven by a handler.
class FakeEndpoint {
 public:
  explicit FakeEndpoint(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

HttpClientOptions options_for(const FakeEndpoint& ep, std::vector<double>* sleeps = nullptr) {
  HttpClientOptions o;
  o.base_url = ep.url();
  o.api_key_env = "CONVBENCH_TEST_KEY";
  o.max_attempts = 3;
  o.timeout_s = 10;
  o.sleep = [sleeps](double s) {
    if (sleeps) sleeps->push_back(s);
  };
  return o;
}

}  // namespace

TEST_CASE("extract_code prefers python blocks") {
  CHECK(extract_code("Sure:\n```python\nx = 1\n```\nDone") == "x = 1");
  CHECK(extract_code("```\nplain\n```\n```py\nwanted\n```") == "wanted");
  CHECK(extract_code("```bash\nls\n```\n```Python3\nprint(1)\n```") == "print(1)");
  CHECK(extract_code("```js\nfoo()\n```") == "foo()");
  CHECK(extract_code("  ```python\n  indented\n  ```") == "  indented");
  CHECK(extract_code("```python\ndef f():\n    return 1\n\n\nf()\n```") == "def f():\n    return 1\n\n\nf()");
  CHECK(extract_code("```python\ncut off by the limit\nreturn") == "cut off by the limit\nreturn");
  CHECK(extract_code("```python\n```") == "");
  CHECK_THROWS_AS(extract_code("just prose, no code"), NoCodeFound);
  CHECK_THROWS_AS(extract_code(""), NoCodeFound);
}

TEST_CASE("extract_code inverts wrap_in_fence") {
  std::mt19937 rng(7);
  const std::vector<std::string> pieces = {"x", " ", "\n", "def f():", "    return 1", "`", "``", "é", "\t", "#"};
  for (int i = 0; i < 500; ++i) {
    std::string src;
    const int n = static_cast<int>(rng() % 30);
    for (int k = 0; k < n; ++k) src += pieces[rng() % pieces.size()];
    // Sources containing their own fence lines are out of the identity's domain.
    bool has_fence_line = false;
    std::size_t start = 0;
    while (start <= src.size()) {
      auto end = src.find('\n', start);
      if (end == std::string::npos) end = src.size();
      auto line = src.substr(start, end - start);
      const auto b = line.find_first_not_of(" \t");
      if (b != std::string::npos && line.compare(b, 3, "```") == 0) has_fence_line = true;
      start = end + 1;
    }
    if (has_fence_line) continue;
    CHECK(extract_code(wrap_in_fence(src)) == src);
    CHECK(extract_code("prose\n" + wrap_in_fence(src) + "\nmore prose") == src);
  }
}

TEST_CASE("fold_system_into_user merges system text into the first user turn") {
  const auto folded = fold_system_into_user({{"system", "S1"}, {"system", "S2"}, {"user", "U"}, {"assistant", "A"}});
  REQUIRE(folded.size() == 2);
  CHECK(folded[0] == Message{"user", "S1\n\nS2\n\nU"});
  CHECK(folded[1] == Message{"assistant", "A"});
  CHECK(fold_system_into_user({{"system", "S"}}) == std::vector<Message>{{"user", "S"}});
  CHECK(fold_system_into_user({{"user", "U"}}) == std::vector<Message>{{"user", "U"}});
}

TEST_CASE("scripted stub: first matching rule wins, unknown requests fail") {
  ScriptedStub stub(testing::sort_stub_rules("a"));
  auto r0 = request("initial", "a", 0);
  CHECK(extract_code(stub.complete(r0)) == testing::kBubbleDescending);
  auto r1 = request("TEST_CASE_1\nfails... test_case_1", "a", 1);
  CHECK(extract_code(stub.complete(r1)) == testing::kSortGroundTruth);
  auto r2 = request("Compilation Feedback:\nNo syntax errors", "a", 2);
  CHECK(extract_code(stub.complete(r2)) == testing::kBubbleDescending);
  auto fb = request("anything", "judge", 3);
  fb.tags.purpose = Purpose::kFeedback;
  CHECK(stub.complete(fb).find("User Feedback:") != std::string::npos);
  CHECK_THROWS_AS(stub.complete(request("x", "other-model")), ClientError);
  CHECK(stub.calls() == 5);

  const auto rules = ScriptedStub::rules_from_json(Json::parse(
      R"({"rules":[{"model":"m","purpose":"code","min_turn":2,"completion":"late"},{"completion":"early"}]})"));
  ScriptedStub s2(rules);
  CHECK(s2.complete(request("x", "m", 1)) == "early");
  CHECK(s2.complete(request("x", "m", 2)) == "late");
  CHECK_THROWS_AS(ScriptedStub::rules_from_json(Json::parse(R"({"rules":[{"purpose":"x","completion":""}]})")),
                  FormatError);
}

TEST_CASE("cache: record then replay without the inner client") {
  testing::TempDir dir;
  ScriptedStub stub(testing::sort_stub_rules("a"));
  testing::RecordingClient rec(stub);
  {
    CachingClient cache(&rec, dir.path(), CacheMode::kRecord);
    const auto first = cache.complete(request("initial", "a", 0));
    CHECK(cache.complete(request("initial", "a", 0)) == first);
    CHECK(rec.requests().size() == 1);
  }
  CachingClient replay(nullptr, dir.path(), CacheMode::kReplay);
  auto again = request("initial", "a", 0);
  again.tags = {"a-different-task", 9, Purpose::kFeedback};  // tags are not part of the key
  CHECK(extract_code(replay.complete(again)) == testing::kBubbleDescending);
  try {
    replay.complete(request("never seen", "a", 4));
    FAIL("expected a miss");
  } catch (const CacheMiss& e) {
    CHECK(std::string(e.what()).find("turn 4") != std::string::npos);
  }
  CHECK_THROWS_AS(CachingClient(nullptr, dir.path(), CacheMode::kRecord), std::invalid_argument);
}

TEST_CASE("cache keys cover messages and params only") {
  const auto base = request("hello", "m");
  auto tagged = base;
  tagged.tags.turn = 5;
  CHECK(CachingClient::request_key(base) == CachingClient::request_key(tagged));
  auto other_model = request("hello", "n");
  CHECK(CachingClient::request_key(base) != CachingClient::request_key(other_model));
  auto warmer = base;
  warmer.params.temperature = 0.5;
  CHECK(CachingClient::request_key(base) != CachingClient::request_key(warmer));
  auto role = base;
  role.messages[0].role = "system";
  CHECK(CachingClient::request_key(base) != CachingClient::request_key(role));
  CHECK(CachingClient::request_key(base).size() == 64);
}

TEST_CASE("cache treats torn or mismatched files as misses") {
  testing::TempDir dir;
  ScriptedStub stub({StubRule{{}, {}, {}, {}, {}, {}, "fresh"}});
  CachingClient cache(&stub, dir.path(), CacheMode::kRecord);
  const auto r = request("q");
  const auto file = dir.path() / (CachingClient::request_key(r) + ".json");
  testing::write_file(file, "{\"request\": ");
  CHECK_FALSE(cache.lookup(r).has_value());
  CHECK(cache.complete(r) == "fresh");
  CHECK(cache.lookup(r) == "fresh");
  testing::write_file(file, R"({"request":"something else","completion":"stale"})");
  CHECK_FALSE(cache.lookup(r).has_value());
}

TEST_CASE("http client: request body, auth header and response parsing") {
  std::string seen_body;
  std::string seen_auth;
  FakeEndpoint ep([&](const httplib::Request& req, httplib::Response& res) {
    seen_body = req.body;
    seen_auth = req.get_header_value("Authorization");
    res.set_content(ok_body("```python\nx = 1\n```"), "application/json");
  });
  ::setenv("CONVBENCH_TEST_KEY", "sk-test", 1);
  auto opts = options_for(ep);
  opts.shapers["folded"] = fold_system_into_user;
  HttpChatClient client(opts);
  ::unsetenv("CONVBENCH_TEST_KEY");

  ChatRequest r{{{"system", "S"}, {"user", "U"}}, ChatParams::for_feedback("gpt-4o"), {}};
  CHECK(client.complete(r) == "```python\nx = 1\n```");
  CHECK(seen_auth == "Bearer sk-test");
  const Json body = Json::parse(seen_body);
  CHECK(body.at("model") == "gpt-4o");
  CHECK(body.at("temperature") == 0.0);
  CHECK(body.at("max_tokens") == kFeedbackMaxTokens);
  CHECK(body.at("messages").size() == 2);

  r.params.model_id = "folded";
  client.complete(r);
  const Json shaped = Json::parse(seen_body);
  REQUIRE(shaped.at("messages").size() == 1);
  CHECK(shaped.at("messages")[0].at("content") == "S\n\nU");

  CHECK(HttpChatClient::parse_response(R"({"choices":[{"message":{"content":null}}]})").empty());
  CHECK_THROWS_AS(HttpChatClient::parse_response("{}"), ClientError);
}

TEST_CASE("http client: retries 5xx with doubling backoff") {
  std::atomic<int> hits{0};
  FakeEndpoint ep([&](const httplib::Request&, httplib::Response& res) {
    if (++hits < 3) {
      res.status = 503;
      res.set_content("busy", "text/plain");
      return;
    }
    res.set_content(ok_body("done"), "application/json");
  });
  std::vector<double> sleeps;
  HttpChatClient client(options_for(ep, &sleeps));
  CHECK(client.complete(request("q")) == "done");
  CHECK(hits == 3);
  CHECK(sleeps == std::vector<double>{1.0, 2.0});
}

TEST_CASE("http client: persistent 429 surfaces as RateLimited") {
  FakeEndpoint ep([](const httplib::Request&, httplib::Response& res) {
    res.status = 429;
    res.set_content("slow down", "text/plain");
  });
  std::vector<double> sleeps;
  HttpChatClient client(options_for(ep, &sleeps));
  try {
    client.complete(request("q"));
    FAIL("expected RateLimited");
  } catch (const RateLimited& e) {
    CHECK(e.attempts() == 3);
    CHECK(e.next_backoff_s() == 4.0);
  }
  CHECK(sleeps.size() == 2);
}

TEST_CASE("http client: other 4xx fail at once, dead endpoints are transport errors") {
  std::atomic<int> hits{0};
  FakeEndpoint ep([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 400;
    res.set_content("bad request", "text/plain");
  });
  HttpChatClient client(options_for(ep));
  CHECK_THROWS_AS(client.complete(request("q")), ClientError);
  CHECK(hits == 1);

  HttpClientOptions dead;
  dead.base_url = "http://127.0.0.1:1";
  dead.max_attempts = 2;
  dead.timeout_s = 2;
  dead.sleep = [](double) {};
  HttpChatClient unreachable(dead);
  CHECK_THROWS_AS(unreachable.complete(request("q")), TransportError);
}

TEST_CASE("http client: caps requests in flight") {
  std::atomic<int> current{0};
  std::atomic<int> peak{0};
  FakeEndpoint ep([&](const httplib::Request&, httplib::Response& res) {
    const int now = ++current;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(80));
    --current;
    res.set_content(ok_body("ok"), "application/json");
  });
  auto opts = options_for(ep);
  opts.max_in_flight = 2;
  HttpChatClient client(opts);
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) threads.emplace_back([&] { client.complete(request("q")); });
  for (auto& t : threads) t.join();
  CHECK(peak <= 2);
  CHECK(peak >= 1);
  CHECK_THROWS_AS(HttpChatClient(HttpClientOptions{.max_in_flight = 0}), std::invalid_argument);
}
