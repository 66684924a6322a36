#pragma once

#include <cstddef>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace bolaa {

struct GenerationParams {
  double temperature = 0.0;
  std::size_t max_new_tokens = 128;
  std::vector<std::string> stop_sequences;
};

struct RetryEvent {
  int attempt = 0;  // 1-based attempt that failed
  std::string cause;

  friend bool operator==(const RetryEvent&, const RetryEvent&) = default;
};

struct Completion {
  std::string text;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  std::string backend_id;
  std::vector<RetryEvent> retries;

  friend bool operator==(const Completion&, const Completion&) = default;
};

// ---------------------------------------------------------------------------
// Token accounting

class TokenEstimator {
 public:
  virtual ~TokenEstimator() = default;
  virtual std::size_t count(std::string_view text) const = 0;
};

// ceil(chars / 4). Subadditive up to one token: count(a + b) <= count(a) + count(b) + 1.
class CharQuarterEstimator final : public TokenEstimator {
 public:
  std::size_t count(std::string_view text) const override { return (text.size() + 3) / 4; }
};

const TokenEstimator& default_estimator();

inline std::size_t estimate_tokens(std::string_view text) { return (text.size() + 3) / 4; }

// ---------------------------------------------------------------------------
// Backends

// Generation backends. generate() enforces the context limit before
// delegating; implementations must be safe to call from several episodes at once.
class Backend {
 public:
  virtual ~Backend() = default;

  // Throws ContextOverflowError if the estimated prompt exceeds context_limit(),
  // BackendError on transport failure after retries.
  Completion generate(const std::string& prompt, const GenerationParams& params);

  virtual std::string id() const = 0;
  virtual std::size_t context_limit() const = 0;

 protected:
  virtual Completion do_generate(const std::string& prompt, const GenerationParams& params) = 0;
};

// Text of the most recent "Observation:" entry in the episode section of a
// rendered prompt, or empty if the episode has no observation yet.
std::string last_observation_excerpt(std::string_view prompt);

enum class MatchScope { prompt, last_observation };
enum class MatchKind { substring, suffix, regex };

struct ScriptedRule {
  MatchScope scope = MatchScope::prompt;
  MatchKind kind = MatchKind::substring;
  std::string pattern;
  // "{last_observation}" expands to last_observation_excerpt(prompt).
  std::string response;
};

struct ScriptedPolicy {
  std::vector<ScriptedRule> rules;
  std::string default_response;
};

ScriptedPolicy parse_scripted_policy(std::string_view json_text);

// Deterministic rule-table lookup: first matching rule wins, default otherwise.
Completion scripted_generate(const ScriptedPolicy& policy, const std::string& prompt);

class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(ScriptedPolicy policy, std::string id = "scripted",
                           std::size_t context_limit = 1u << 20);

  std::string id() const override { return id_; }
  std::size_t context_limit() const override { return context_limit_; }
  const ScriptedPolicy& policy() const { return policy_; }

 protected:
  Completion do_generate(const std::string& prompt, const GenerationParams& params) override;

 private:
  ScriptedPolicy policy_;
  std::vector<std::unique_ptr<std::regex>> compiled_;
  std::string id_;
  std::size_t context_limit_;
};

}  // namespace bolaa
