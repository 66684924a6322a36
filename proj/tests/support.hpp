#pragma once

// Shared helpers for the unit and acceptance tests.

#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "bolaa/agent.hpp"
#include "bolaa/catalog.hpp"
#include "bolaa/errors.hpp"
#include "bolaa/fixtures.hpp"
#include "bolaa/llm.hpp"
#include "bolaa/shopping_env.hpp"
#include "bolaa/wiki_env.hpp"

namespace bolaa::test {

// Replies from a queue (repeating the last reply once drained) and keeps every prompt.
class QueueBackend final : public Backend {
 public:
  explicit QueueBackend(std::vector<std::string> replies) : replies_(replies.begin(), replies.end()) {}

  std::string id() const override { return "queue"; }
  std::size_t context_limit() const override { return 1u << 20; }

  std::vector<std::string> prompts;

 protected:
  Completion do_generate(const std::string& prompt, const GenerationParams&) override {
    prompts.push_back(prompt);
    Completion c;
    c.backend_id = "queue";
    if (replies_.size() > 1) {
      c.text = replies_.front();
      replies_.pop_front();
    } else if (!replies_.empty()) {
      c.text = replies_.front();
    }
    return c;
  }

 private:
  std::deque<std::string> replies_;
};

// Delegates to a function; throws whatever the function throws.
class FnBackend final : public Backend {
 public:
  explicit FnBackend(std::function<std::string(const std::string&)> fn, std::size_t limit = 1u << 20)
      : fn_(std::move(fn)), limit_(limit) {}

  std::string id() const override { return "fn"; }
  std::size_t context_limit() const override { return limit_; }

 protected:
  Completion do_generate(const std::string& prompt, const GenerationParams&) override {
    Completion c;
    c.text = fn_(prompt);
    c.backend_id = "fn";
    return c;
  }

 private:
  std::function<std::string(const std::string&)> fn_;
  std::size_t limit_;
};

inline const Task& shopping_task(std::size_t i = 0) { return builtin_tasks(EnvKind::shopping).at(i); }
inline const Task& wiki_task(std::size_t i = 0) { return builtin_tasks(EnvKind::wikiqa).at(i); }

inline std::vector<Task> tasks_at_level(EnvKind env, int level) {
  std::vector<Task> out;
  for (const auto& t : builtin_tasks(env)) {
    if (t.complexity == level) out.push_back(t);
  }
  return out;
}

inline ShoppingEnv shopping_env(ShoppingOptions options = {}) { return ShoppingEnv(builtin_catalog(), options); }
inline WikiEnv wiki_env() { return WikiEnv(builtin_corpus()); }

inline Product product(std::string id, std::string title, std::set<std::string> attrs, double price = 10.0,
                       std::string description = {}) {
  Product p;
  p.id = std::move(id);
  p.title = std::move(title);
  p.attributes = std::move(attrs);
  p.price = price;
  p.description = std::move(description);
  return p;
}

inline std::size_t count_kind(const std::vector<Record>& records, RecordKind kind) {
  std::size_t n = 0;
  for (const auto& r : records) n += r.kind == kind;
  return n;
}

}  // namespace bolaa::test
