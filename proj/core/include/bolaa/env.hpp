#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bolaa/types.hpp"

namespace bolaa {

enum class PageKind {
  search_page,
  results_page,
  item_page,
  done_page,
  wiki_passage,
  wiki_lookup_result,
  wiki_message,
};

std::string_view to_string(PageKind kind);

struct Observation {
  PageKind page_kind = PageKind::search_page;
  std::string content;
  std::vector<std::string> clickables;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct EpisodeScore {
  double reward = 0.0;
  int recall = 0;
};

struct StepOutcome {
  Observation observation;
  bool done = false;
  std::optional<EpisodeScore> score;  // set once done
};

// One episode's worth of environment state. Instances are exclusively owned by
// an episode; shared fixtures (catalog, corpus) are immutable.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual EnvKind kind() const = 0;
  ActionSet grammar() const { return action_grammar(kind()); }

  // Clears all episode state. Throws ContractError on env_kind mismatch.
  virtual Observation reset(const Task& task) = 0;

  // Throws ContractError if the episode is done or the action is outside the grammar.
  virtual StepOutcome step(const Action& action) = 0;

  virtual bool done() const = 0;

  // Score of the episode so far: reward counts only a completed purchase / answer.
  virtual EpisodeScore score() const = 0;
};

// ---------------------------------------------------------------------------
// Metrics

// Lowercase, strip ASCII punctuation, drop the articles a/an/the, split on whitespace.
std::vector<std::string> normalize_answer_tokens(std::string_view text);

// Token-level F1 over normalized multisets. 0 when either side has no tokens.
double token_f1(std::string_view prediction, std::string_view gold);

}  // namespace bolaa
