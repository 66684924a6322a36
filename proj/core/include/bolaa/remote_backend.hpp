#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <string>

#include "bolaa/llm.hpp"

namespace bolaa {

// Connection settings for an OpenAI-compatible chat-completion endpoint.
// The auth token is never read from config files, only from token_env_var.
struct RemoteConfig {
  std::string endpoint = "http://127.0.0.1:8000";  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string system_preamble;
  std::string token_env_var = "BOLAA_API_KEY";
  double timeout_seconds = 60.0;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::size_t concurrency_cap = 4;
  std::size_t context_limit = 4096;

  // BOLAA_LLM_ENDPOINT, BOLAA_LLM_MODEL, BOLAA_LLM_TIMEOUT, BOLAA_LLM_RETRIES and
  // BOLAA_LLM_CONCURRENCY override the matching fields when set.
  void apply_env_overrides();
};

// Request body for one prompt: {model, messages[{role, content}], temperature, max_tokens, stop}.
std::string build_chat_request(const RemoteConfig& config, const std::string& prompt,
                               const GenerationParams& params);

class RemoteBackend final : public Backend {
 public:
  explicit RemoteBackend(RemoteConfig config);

  std::string id() const override { return "remote:" + config_.model; }
  std::size_t context_limit() const override { return config_.context_limit; }
  const RemoteConfig& config() const { return config_; }

 protected:
  // Retries transport failures, 408, 429 and 5xx with exponential backoff.
  // A 400 whose error mentions the context length maps to ContextOverflowError.
  Completion do_generate(const std::string& prompt, const GenerationParams& params) override;

 private:
  class Slot;

  RemoteConfig config_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::size_t in_flight_ = 0;
};

}  // namespace bolaa
