#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "bolaa/errors.hpp"
#include "bolaa/remote_backend.hpp"

using namespace bolaa;
using nlohmann::json;

namespace {

std::string completion_body(const std::string& text) {
  return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}},
              {"usage", {{"prompt_tokens", 11}, {"completion_tokens", 3}}}}
      .dump();
}

// Local chat-completion server whose handler is supplied by the test.
class FakeServer {
 public:
  explicit FakeServer(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }

  RemoteConfig config() const {
    RemoteConfig c;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port_);
    c.model = "fake-model";
    c.initial_backoff = std::chrono::milliseconds(1);
    c.timeout_seconds = 5;
    return c;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("request body follows the chat-completion wire shape") {
  RemoteConfig c;
  c.model = "m";
  c.system_preamble = "be brief";
  GenerationParams p;
  p.max_new_tokens = 64;
  p.stop_sequences = {"\nObservation:"};
  const json body = json::parse(build_chat_request(c, "hello", p));
  CHECK(body["model"] == "m");
  CHECK(body["messages"].size() == 2);
  CHECK(body["messages"][0]["role"] == "system");
  CHECK(body["messages"][1] == json{{"role", "user"}, {"content", "hello"}});
  CHECK(body["temperature"] == 0.0);
  CHECK(body["max_tokens"] == 64);
  CHECK(body["stop"] == json::array({"\nObservation:"}));
  CHECK_FALSE(json::parse(build_chat_request(c, "x", GenerationParams{})).contains("stop"));
}

TEST_CASE("overloaded twice then success: two retries logged") {
  std::atomic<int> calls{0};
  FakeServer server([&](const httplib::Request& req, httplib::Response& res) {
    const int n = ++calls;
    CHECK(json::parse(req.body)["messages"].back()["content"] == "Instruction: x\nAction:");
    if (n <= 2) {
      res.status = 503;
      res.set_content(R"({"error": {"message": "The server is overloaded"}})", "application/json");
      return;
    }
    res.set_content(completion_body("search[tripod] "), "application/json");
  });
  RemoteBackend backend(server.config());
  const Completion c = backend.generate("Instruction: x\nAction:", {});
  CHECK(c.text == "search[tripod] ");  // verbatim, untrimmed
  CHECK(c.retries.size() == 2);
  CHECK(c.retries[0].attempt == 1);
  CHECK(c.retries[0].cause.find("overloaded") != std::string::npos);
  CHECK(c.prompt_tokens == 11);
  CHECK(c.completion_tokens == 3);
  CHECK(c.backend_id == "remote:fake-model");
  CHECK(calls == 3);
}

TEST_CASE("retries stop at the configured count") {
  std::atomic<int> calls{0};
  FakeServer server([&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 429;
    res.set_content("{}", "application/json");
  });
  RemoteConfig config = server.config();
  config.max_retries = 2;
  RemoteBackend backend(config);
  CHECK_THROWS_AS(backend.generate("p", {}), BackendError);
  CHECK(calls == 3);
}

TEST_CASE("context overflow is reported distinctly and never retried") {
  std::atomic<int> calls{0};
  FakeServer server([&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 400;
    res.set_content(R"({"error": {"code": "context_length_exceeded", "message": "too long"}})", "application/json");
  });
  RemoteBackend backend(server.config());
  CHECK_THROWS_AS(backend.generate("p", {}), ContextOverflowError);
  CHECK(calls == 1);
}

TEST_CASE("client errors are not retried") {
  std::atomic<int> calls{0};
  FakeServer server([&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 401;
    res.set_content(R"({"error": "bad key"})", "application/json");
  });
  RemoteBackend backend(server.config());
  try {
    backend.generate("p", {});
    FAIL("expected BackendError");
  } catch (const ContextOverflowError&) {
    FAIL("401 is not an overflow");
  } catch (const BackendError&) {
  }
  CHECK(calls == 1);
}

TEST_CASE("auth token comes from the environment") {
  std::string seen;
  FakeServer server([&](const httplib::Request& req, httplib::Response& res) {
    seen = req.get_header_value("Authorization");
    res.set_content(completion_body("ok"), "application/json");
  });
  RemoteConfig config = server.config();
  config.token_env_var = "BOLAA_TEST_TOKEN";
  ::setenv("BOLAA_TEST_TOKEN", "sekrit", 1);
  RemoteBackend backend(config);
  backend.generate("p", {});
  CHECK(seen == "Bearer sekrit");
  ::unsetenv("BOLAA_TEST_TOKEN");
  backend.generate("p", {});
  CHECK(seen.empty());
}

TEST_CASE("in-flight requests never exceed the concurrency cap") {
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
  FakeServer server([&](const httplib::Request&, httplib::Response& res) {
    const int now = ++in_flight;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --in_flight;
    res.set_content(completion_body("ok"), "application/json");
  });
  RemoteConfig config = server.config();
  config.concurrency_cap = 2;
  RemoteBackend backend(config);
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) threads.emplace_back([&] { backend.generate("p", {}); });
  for (auto& t : threads) t.join();
  CHECK(peak <= 2);
  CHECK(peak >= 1);
}

TEST_CASE("environment overrides") {
  ::setenv("BOLAA_LLM_MODEL", "override-model", 1);
  ::setenv("BOLAA_LLM_RETRIES", "7", 1);
  RemoteConfig c;
  c.model = "file-model";
  c.apply_env_overrides();
  CHECK(c.model == "override-model");
  CHECK(c.max_retries == 7);
  ::unsetenv("BOLAA_LLM_MODEL");
  ::unsetenv("BOLAA_LLM_RETRIES");

  RemoteConfig no_model;
  CHECK_THROWS_AS(RemoteBackend{no_model}, ConfigError);
}
