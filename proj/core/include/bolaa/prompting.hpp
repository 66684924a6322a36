#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bolaa/llm.hpp"
#include "bolaa/trajectory.hpp"
#include "bolaa/types.hpp"

namespace bolaa {

// The assembled pieces of one prompt. render() places the preamble once and
// ends with the cue.
struct PromptTemplate {
  std::string preamble;
  std::vector<std::string> action_docs;
  std::string directive;      // optional extra line, e.g. a labor agent's specialty
  std::string fewshot_block;  // empty when the architecture is zero-shot
  std::string instruction;
  std::string memory_block;
  std::string cue;

  std::string render() const;
};

// Wording for one environment, loaded from a sectioned text file:
//   # template-version: N
//   [preamble]
//   ...
//   [action.search]
//   ...
struct TemplateSet {
  int version = 0;
  std::string preamble;
  std::map<ActionKind, std::string> action_docs;
  std::string think_doc;
  std::string plan_instruction;
  std::map<ActionKind, std::string> labor_directives;
  std::string selector_instruction;

  static TemplateSet parse(std::string_view text);
  static const TemplateSet& builtin(EnvKind env);
};

struct FewshotStep {
  std::optional<std::string> thought;
  Action action;
  std::string observation;
};

struct FewshotExample {
  std::string instruction;
  EnvKind env_kind = EnvKind::shopping;
  std::optional<std::string> plan;
  std::vector<FewshotStep> steps;
};

// {"schema_version": 1, "env_kind": ..., "examples": [...]}. Throws SchemaError,
// or ValidationError when an example uses an action outside the env grammar.
std::vector<FewshotExample> parse_fewshot(std::string_view json_text);
const std::vector<FewshotExample>& builtin_fewshot(EnvKind env);

// One record as it appears in a memory block (with trailing newline).
std::string render_record(const Record& record);

// Renders the newest records that fit in `budget` tokens. The Plan record is
// pinned ahead of everything else; an Action or ParseFailure and its
// Observation are kept or dropped together. The retained records always form
// a suffix of the non-plan records.
std::string truncate_memory(const Trajectory& trajectory, std::size_t budget,
                            const TokenEstimator& estimator = default_estimator());

// Renders prompts for one environment. Stateless after construction.
class PromptBuilder {
 public:
  PromptBuilder(EnvKind env, TemplateSet templates, std::vector<FewshotExample> examples,
                const TokenEstimator& estimator = default_estimator());

  static const PromptBuilder& builtin(EnvKind env);

  EnvKind env_kind() const { return env_; }
  const TemplateSet& templates() const { return templates_; }
  const std::vector<FewshotExample>& examples() const { return examples_; }

  std::string action_prompt(const Task& task, const Trajectory& trajectory, const LAAConfig& config,
                            std::size_t budget) const;

  // Contract: config.think must be set.
  std::string think_prompt(const Task& task, const Trajectory& trajectory, const LAAConfig& config,
                           std::size_t budget) const;

  // Fewshot plan prompt over the stored examples that carry a plan.
  std::string plan_prompt(const Task& task, std::size_t budget) const;

  // Action prompt for a labor agent restricted to `specialty`.
  std::string labor_prompt(const Task& task, const Trajectory& trajectory, const LAAConfig& config,
                           ActionKind specialty, std::size_t budget) const;

  // Asks the backend which labor agent should act next.
  std::string selector_prompt(const Task& task, const std::vector<std::pair<std::string, ActionKind>>& pool,
                              std::string_view last_observation, std::size_t budget) const;

 private:
  std::string render_fewshot(const LAAConfig& config, std::optional<ActionKind> only) const;
  std::string assemble(PromptTemplate tmpl, const Trajectory& trajectory, std::size_t budget) const;

  EnvKind env_;
  TemplateSet templates_;
  std::vector<FewshotExample> examples_;
  const TokenEstimator* estimator_;
};

// Free-function forms over the builtin templates for task.env_kind.
std::string build_action_prompt(const Task& task, const Trajectory& trajectory, const LAAConfig& config,
                                std::size_t budget);
std::string build_think_prompt(const Task& task, const Trajectory& trajectory, const LAAConfig& config,
                               std::size_t budget);
std::string build_plan_prompt(const Task& task, const std::vector<FewshotExample>& examples,
                              std::size_t budget);

}  // namespace bolaa
