#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bolaa/env.hpp"

namespace bolaa {

using Paragraph = std::vector<std::string>;  // sentences

// title -> ordered paragraphs.
class Corpus {
 public:
  explicit Corpus(std::map<std::string, std::vector<Paragraph>> pages);

  const std::map<std::string, std::vector<Paragraph>>& pages() const { return pages_; }

  // Exact title match after lowercasing and stripping punctuation.
  std::optional<std::string> resolve(std::string_view entity) const;

  // Up to `limit` titles ranked by token Jaccard similarity (ties by title).
  std::vector<std::string> similar_titles(std::string_view entity, std::size_t limit) const;

 private:
  std::map<std::string, std::vector<Paragraph>> pages_;
  std::map<std::string, std::string> normalized_;
};

struct WikiState {
  std::optional<std::string> page;
  std::vector<std::string> sentences;  // the current passage, flattened
  std::string lookup_keyword;
  std::size_t lookup_cursor = 0;
  std::optional<std::string> answer;
};

// Search / lookup / finish over a fixture corpus, answered with token F1.
class WikiEnv final : public Environment {
 public:
  explicit WikiEnv(std::shared_ptr<const Corpus> corpus);

  EnvKind kind() const override { return EnvKind::wikiqa; }
  Observation reset(const Task& task) override;
  StepOutcome step(const Action& action) override;
  bool done() const override { return state_.answer.has_value(); }
  EpisodeScore score() const override;

  const WikiState& state() const { return state_; }

 private:
  std::shared_ptr<const Corpus> corpus_;
  std::optional<Task> task_;
  WikiState state_;
};

}  // namespace bolaa
