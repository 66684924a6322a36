#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bolaa/agent.hpp"

namespace bolaa {

// A pool member that may only emit its specialty.
struct LaborAgentSpec {
  std::string agent_id;
  LAAConfig config;  // allowed_action_kinds == {specialty}
  ActionKind specialty = ActionKind::search;
  std::string template_ref;

  friend bool operator==(const LaborAgentSpec&, const LaborAgentSpec&) = default;
};

LaborAgentSpec make_labor_agent(std::string agent_id, ActionKind specialty, ArchitectureFlags flags,
                                std::string template_ref = {}, std::size_t max_steps = 15,
                                std::size_t context_limit = 2048);

struct LaborPool {
  EnvKind env_kind = EnvKind::shopping;
  std::vector<LaborAgentSpec> agents;

  // Throws ContractError for an id outside the pool.
  const LaborAgentSpec& at(std::string_view agent_id) const;
  std::vector<std::pair<std::string, ActionKind>> roster() const;

  // Same pool with every labor config using the given limits.
  LaborPool with_limits(std::size_t max_steps, std::size_t context_limit) const;

  friend bool operator==(const LaborPool&, const LaborPool&) = default;
};

// Throws ConfigError: empty pool, duplicate ids, a labor allowed more or other
// than its specialty, or a specialty outside the env grammar.
void validate_pool(const LaborPool& pool);

// {"schema_version": 1, "env_kind": ..., "agents": [{agent_id, specialty, flags, template}]}
LaborPool parse_pool(std::string_view json_text);
LaborPool load_pool(const std::filesystem::path& path);
std::string serialize_pool(const LaborPool& pool);

// search_agent + click_agent, both fewshot without think or plan.
const LaborPool& default_shopping_pool();

enum class SelectionPolicy { rule_based, backend_assisted };

std::string_view to_string(SelectionPolicy policy);
SelectionPolicy parse_selection_policy(std::string_view text);

// The controller's episode state. `episode` holds the single shared trajectory.
struct ControllerState {
  LaborPool pool;
  SelectionPolicy policy = SelectionPolicy::rule_based;
  AgentState episode;
};

// Pure page-kind rule: search page -> first search specialist, results or item
// page -> first click specialist, anything else (or no such specialist) -> the
// first pool agent.
const std::string& rule_based_selection(const LaborPool& pool, PageKind page);

// Picks the labor agent for the next step. backend_assisted asks the backend and
// falls back to the rule when the reply names no pool agent.
std::string select_agent(ControllerState& state, Backend& backend, const PromptBuilder& prompts,
                         const EpisodeOptions& options);

// Labor action prompt over the shared trajectory, truncated to the target's budget.
std::string build_message(const ControllerState& state, const LaborAgentSpec& target,
                          const PromptBuilder& prompts, const GenerationParams& generation);

struct StepReport {
  std::string agent_id;
  std::vector<Record> records;  // appended during this step
  bool done = false;
};

// One controller step: select, optional labor thought, message, generate,
// parse against the specialty, then step the environment.
StepReport orchestrate_step(ControllerState& state, Backend& backend, Environment& env,
                            const PromptBuilder& prompts, const EpisodeOptions& options);

struct BolaaOptions {
  std::size_t max_steps = 15;
  std::size_t context_limit = 2048;
  SelectionPolicy policy = SelectionPolicy::rule_based;
  EpisodeOptions episode;
};

// Same termination and result contract as run_episode. At most one plan is
// generated, by the first plan-enabled labor agent.
EpisodeOutcome run_bolaa_episode(const LaborPool& pool, const Task& task, Environment& env, Backend& backend,
                                 const BolaaOptions& options = {});

}  // namespace bolaa
