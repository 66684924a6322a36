#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "bolaa/env.hpp"
#include "bolaa/llm.hpp"
#include "bolaa/prompting.hpp"
#include "bolaa/trajectory.hpp"
#include "bolaa/types.hpp"

namespace bolaa {

struct ParseFailure {
  std::string reason;

  friend bool operator==(const ParseFailure&, const ParseFailure&) = default;
};

using ParseResult = std::variant<Action, ParseFailure>;

// Finds the first `search[...]`, `click[...]`, `lookup[...]` or `finish[...]`
// (case-insensitive, not preceded by a letter or digit, with a closing bracket)
// and returns it with a trimmed payload. Fails when there is no such form, the
// payload is blank, or the first form's kind is not in `allowed`.
ParseResult parse_action(std::string_view raw, ActionSet allowed);

struct PromptLogEntry {
  std::string task_id;
  std::size_t step_index = 0;
  std::string purpose;  // "plan", "think", "action", "select"
  std::optional<std::string> agent_id;
  std::string prompt;
};

using PromptSink = std::function<void(const PromptLogEntry&)>;

struct EpisodeOptions {
  GenerationParams generation;
  int parse_failure_cap = 3;
  // Defaults to PromptBuilder::builtin(task.env_kind).
  const PromptBuilder* prompts = nullptr;
  PromptSink prompt_sink;
};

struct EpisodeOutcome {
  Trajectory trajectory;
  EpisodeResult result;
  std::string abort_detail;
};

// Per-episode loop state. One instance per episode, never shared.
struct AgentState {
  Task task;
  LAAConfig config;
  Trajectory trajectory;
  std::size_t step_index = 0;
  int parse_failures_in_a_row = 0;
  Observation last_observation;
  bool env_done = false;
  bool aborted = false;
  std::string abort_cause;
  std::string abort_detail;

  bool over() const { return env_done || aborted || step_index >= config.max_steps; }
};

// Resets `env` to the task and returns the initial loop state.
AgentState start_episode(const Task& task, const LAAConfig& config, Environment& env);

// Token budget for rendered prompts: context_limit minus generation headroom.
std::size_t prompt_budget(const LAAConfig& config, const GenerationParams& generation);

// Single generation call: logs the prompt, checks the budget, returns the completion text.
std::string query_backend(AgentState& state, Backend& backend, const EpisodeOptions& options,
                          const std::string& prompt, std::string_view purpose,
                          const std::optional<std::string>& agent_id = std::nullopt);

// Generates and records the one Plan of the episode.
void plan_step(AgentState& state, Backend& backend, const PromptBuilder& prompts,
               const EpisodeOptions& options, const std::optional<std::string>& agent_id = std::nullopt);

// Generates a thought from the think prompt and appends it to memory.
Record self_think(AgentState& state, Backend& backend, const PromptBuilder& prompts,
                  const EpisodeOptions& options, const std::optional<std::string>& agent_id = std::nullopt);

// Records the bad output plus corrective feedback and consumes a step. Aborts the
// episode after `options.parse_failure_cap` consecutive failures.
void handle_parse_failure(AgentState& state, const std::string& raw, const ParseFailure& failure,
                          ActionSet allowed, const EpisodeOptions& options,
                          const std::optional<std::string>& agent_id = std::nullopt);

// Records the action, steps the environment and records the observation.
void execute_action(AgentState& state, Environment& env, const Action& action, const std::string& raw,
                    const std::optional<std::string>& agent_id = std::nullopt);

// Marks the episode aborted by an exception of the given cause.
void abort_episode(AgentState& state, std::string cause, std::string detail);

// Seals the trajectory and builds the result from the environment's score.
EpisodeOutcome finish_episode(AgentState state, const Environment& env);

// Runs one solo-agent episode for any of the five architectures:
// optional plan, then per step an optional thought followed by one action.
EpisodeOutcome run_episode(const Task& task, const LAAConfig& config, Environment& env, Backend& backend,
                           const EpisodeOptions& options = {});

}  // namespace bolaa
