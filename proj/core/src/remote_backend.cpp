#include "bolaa/remote_backend.hpp"

#include <cstdlib>
#include <optional>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "bolaa/errors.hpp"
#include "text_util.hpp"

namespace bolaa {

namespace {

using nlohmann::json;

std::optional<std::string> env(const char* name) {
  if (const char* v = std::getenv(name); v != nullptr && *v != '\0') return std::string(v);
  return std::nullopt;
}

enum class Verdict { ok, transient, overflow, fatal };

struct Classified {
  Verdict verdict;
  std::string cause;
};

bool mentions_context_overflow(const std::string& text) {
  const std::string lowered = detail::to_lower(text);
  return lowered.find("context_length_exceeded") != std::string::npos ||
         lowered.find("context length") != std::string::npos ||
         lowered.find("maximum context") != std::string::npos;
}

Classified classify(int status, const std::string& body) {
  std::string error_text;
  bool overloaded = false;
  const json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_object() && doc.contains("error")) {
    const json& err = doc["error"];
    error_text = err.is_object() ? err.dump() : err.is_string() ? err.get<std::string>() : err.dump();
    overloaded = detail::to_lower(error_text).find("overloaded") != std::string::npos;
  }
  if (doc.is_object() && doc.value("status", std::string{}) == "overloaded") overloaded = true;

  if (mentions_context_overflow(error_text) || (status == 400 && mentions_context_overflow(body))) {
    return {Verdict::overflow, "context overflow: " + (error_text.empty() ? body : error_text)};
  }
  if (overloaded) return {Verdict::transient, "overloaded (HTTP " + std::to_string(status) + ")"};
  if (status == 408 || status == 429 || status >= 500) {
    return {Verdict::transient, "HTTP " + std::to_string(status)};
  }
  if (status != 200) {
    return {Verdict::fatal, "HTTP " + std::to_string(status) + ": " + body.substr(0, 300)};
  }
  if (!doc.is_object()) return {Verdict::fatal, "response is not a JSON object"};
  if (!error_text.empty()) return {Verdict::fatal, "backend error: " + error_text};
  return {Verdict::ok, {}};
}

}  // namespace

void RemoteConfig::apply_env_overrides() {
  if (auto v = env("BOLAA_LLM_ENDPOINT")) endpoint = *v;
  if (auto v = env("BOLAA_LLM_MODEL")) model = *v;
  if (auto v = env("BOLAA_LLM_TIMEOUT")) timeout_seconds = std::stod(*v);
  if (auto v = env("BOLAA_LLM_RETRIES")) max_retries = std::stoi(*v);
  if (auto v = env("BOLAA_LLM_CONCURRENCY")) concurrency_cap = std::stoul(*v);
}

std::string build_chat_request(const RemoteConfig& config, const std::string& prompt,
                               const GenerationParams& params) {
  json messages = json::array();
  if (!config.system_preamble.empty()) {
    messages.push_back({{"role", "system"}, {"content", config.system_preamble}});
  }
  messages.push_back({{"role", "user"}, {"content", prompt}});
  json body = {
      {"model", config.model},
      {"messages", std::move(messages)},
      {"temperature", params.temperature},
      {"max_tokens", params.max_new_tokens},
  };
  if (!params.stop_sequences.empty()) body["stop"] = params.stop_sequences;
  return body.dump();
}

// Holds one of the concurrency_cap request slots for its lifetime.
class RemoteBackend::Slot {
 public:
  explicit Slot(RemoteBackend& owner) : owner_(owner) {
    std::unique_lock lock(owner_.mutex_);
    owner_.cv_.wait(lock, [&] { return owner_.in_flight_ < owner_.config_.concurrency_cap; });
    ++owner_.in_flight_;
  }
  ~Slot() {
    {
      std::lock_guard lock(owner_.mutex_);
      --owner_.in_flight_;
    }
    owner_.cv_.notify_one();
  }
  Slot(const Slot&) = delete;
  Slot& operator=(const Slot&) = delete;

 private:
  RemoteBackend& owner_;
};

RemoteBackend::RemoteBackend(RemoteConfig config) : config_(std::move(config)) {
  if (config_.concurrency_cap == 0) throw ConfigError("remote backend: concurrency_cap must be >= 1");
  if (config_.max_retries < 0) throw ConfigError("remote backend: max_retries must be >= 0");
  if (config_.model.empty()) throw ConfigError("remote backend: model is not set");
}

Completion RemoteBackend::do_generate(const std::string& prompt, const GenerationParams& params) {
  Slot slot(*this);

  const std::string body = build_chat_request(config_, prompt, params);
  httplib::Headers headers;
  if (auto token = env(config_.token_env_var.c_str())) {
    headers.emplace("Authorization", "Bearer " + *token);
  }

  httplib::Client client(config_.endpoint);
  const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::vector<RetryEvent> retries;
  auto backoff = config_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    Classified outcome{Verdict::transient, {}};
    std::string response_body;
    auto res = client.Post(config_.path, headers, body, "application/json");
    if (!res) {
      outcome.cause = "transport: " + httplib::to_string(res.error());
    } else {
      response_body = res->body;
      outcome = classify(res->status, response_body);
    }

    if (outcome.verdict == Verdict::ok) {
      const json doc = json::parse(response_body);
      Completion c;
      try {
        const json& content = doc.at("choices").at(0).at("message").at("content");
        c.text = content.is_null() ? std::string{} : content.get<std::string>();
      } catch (const json::exception& e) {
        throw BackendError(std::string("malformed completion response: ") + e.what());
      }
      const json usage = doc.value("usage", json::object());
      c.prompt_tokens = usage.value("prompt_tokens", estimate_tokens(prompt));
      c.completion_tokens = usage.value("completion_tokens", estimate_tokens(c.text));
      c.backend_id = id();
      c.retries = std::move(retries);
      return c;
    }
    if (outcome.verdict == Verdict::overflow) throw ContextOverflowError(outcome.cause);
    if (outcome.verdict == Verdict::fatal) throw BackendError(outcome.cause);

    retries.push_back({attempt, outcome.cause});
    if (attempt > config_.max_retries) {
      throw BackendError("giving up after " + std::to_string(attempt) + " attempts: " + outcome.cause);
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

}  // namespace bolaa
