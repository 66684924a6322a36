#include "bolaa/agent.hpp"

#include "bolaa/errors.hpp"
#include "text_util.hpp"

namespace bolaa {

ParseResult parse_action(std::string_view raw, ActionSet allowed) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i > 0 && detail::is_alnum(raw[i - 1])) continue;
    for (auto kind : kAllActionKinds) {
      const std::string_view keyword = to_string(kind);
      if (!detail::starts_with_icase(raw, i, keyword)) continue;
      const std::size_t open = i + keyword.size();
      if (open >= raw.size() || raw[open] != '[') continue;
      const std::size_t close = raw.find(']', open + 1);
      if (close == std::string_view::npos) continue;

      const std::string_view payload = detail::trim(raw.substr(open + 1, close - open - 1));
      if (payload.empty()) return ParseFailure{std::string(keyword) + "[] has an empty argument"};
      if (!allowed.contains(kind)) {
        return ParseFailure{"action '" + std::string(keyword) + "' is not allowed here"};
      }
      return Action{kind, std::string(payload)};
    }
  }
  return ParseFailure{"no action found"};
}

AgentState start_episode(const Task& task, const LAAConfig& config, Environment& env) {
  if (config.allowed_action_kinds.intersect(env.grammar()).empty()) {
    throw ConfigError("config " + config.name + " allows no action of the " +
                      std::string(to_string(env.kind())) + " grammar");
  }
  AgentState state;
  state.task = task;
  state.config = config;
  state.trajectory = Trajectory(task.id);
  state.last_observation = env.reset(task);
  return state;
}

std::size_t prompt_budget(const LAAConfig& config, const GenerationParams& generation) {
  if (config.context_limit <= generation.max_new_tokens) {
    throw ConfigError("context_limit " + std::to_string(config.context_limit) +
                      " leaves no room after reserving " + std::to_string(generation.max_new_tokens) +
                      " generation tokens");
  }
  return config.context_limit - generation.max_new_tokens;
}

std::string query_backend(AgentState& state, Backend& backend, const EpisodeOptions& options,
                          const std::string& prompt, std::string_view purpose,
                          const std::optional<std::string>& agent_id) {
  const std::size_t budget = prompt_budget(state.config, options.generation);
  if (estimate_tokens(prompt) > budget) {
    throw BudgetError("rendered " + std::string(purpose) + " prompt exceeds its budget of " +
                      std::to_string(budget) + " tokens");
  }
  if (options.prompt_sink) {
    options.prompt_sink({state.task.id, state.step_index, std::string(purpose), agent_id, prompt});
  }
  return backend.generate(prompt, options.generation).text;
}

void plan_step(AgentState& state, Backend& backend, const PromptBuilder& prompts,
               const EpisodeOptions& options, const std::optional<std::string>& agent_id) {
  if (state.trajectory.has_plan()) throw ContractError("the episode already has a plan");
  const std::string prompt = prompts.plan_prompt(state.task, prompt_budget(state.config, options.generation));
  std::string text = query_backend(state, backend, options, prompt, "plan", agent_id);
  state.trajectory.append(Record{RecordKind::plan, std::move(text), std::nullopt, state.step_index, agent_id});
}

Record self_think(AgentState& state, Backend& backend, const PromptBuilder& prompts,
                  const EpisodeOptions& options, const std::optional<std::string>& agent_id) {
  const std::string prompt = prompts.think_prompt(state.task, state.trajectory, state.config,
                                                  prompt_budget(state.config, options.generation));
  std::string text = query_backend(state, backend, options, prompt, "think", agent_id);
  Record thought{RecordKind::thought, std::move(text), std::nullopt, state.step_index, agent_id};
  state.trajectory.append(thought);
  return thought;
}

void handle_parse_failure(AgentState& state, const std::string& raw, const ParseFailure& failure,
                          ActionSet allowed, const EpisodeOptions& options,
                          const std::optional<std::string>& agent_id) {
  state.trajectory.append(Record{RecordKind::parse_failure, raw, std::nullopt, state.step_index, agent_id});
  std::vector<std::string> forms;
  for (auto k : allowed.kinds()) forms.push_back(std::string(to_string(k)) + "[...]");
  state.trajectory.append(Record{RecordKind::observation,
                                 "Invalid action. Allowed: " + detail::join(forms, ", ") + " (" + failure.reason + ")",
                                 std::nullopt, state.step_index, std::nullopt});
  ++state.step_index;
  ++state.parse_failures_in_a_row;
  if (state.parse_failures_in_a_row >= options.parse_failure_cap) {
    abort_episode(state, "parse_failures",
                  std::to_string(state.parse_failures_in_a_row) + " consecutive unparseable outputs");
  }
}

void execute_action(AgentState& state, Environment& env, const Action& action, const std::string& raw,
                    const std::optional<std::string>& agent_id) {
  state.trajectory.append(Record{RecordKind::action, raw, action, state.step_index, agent_id});
  StepOutcome outcome = env.step(action);
  state.trajectory.append(
      Record{RecordKind::observation, outcome.observation.content, std::nullopt, state.step_index, std::nullopt});
  state.last_observation = std::move(outcome.observation);
  state.env_done = outcome.done;
  state.parse_failures_in_a_row = 0;
  ++state.step_index;
}

void abort_episode(AgentState& state, std::string cause, std::string detail) {
  state.aborted = true;
  state.abort_cause = std::move(cause);
  state.abort_detail = std::move(detail);
}

EpisodeOutcome finish_episode(AgentState state, const Environment& env) {
  Termination t = Termination::max_steps;
  if (state.env_done) {
    t = Termination::completed;
  } else if (state.aborted) {
    t = Termination::aborted;
  }
  state.trajectory.set_terminated(t);

  const EpisodeScore score = env.score();
  EpisodeOutcome out;
  out.result.task_id = state.task.id;
  out.result.reward = score.reward;
  out.result.recall = score.recall;
  out.result.steps_used = state.step_index;
  out.result.terminated = t;
  if (t == Termination::aborted) out.result.abort_cause = state.abort_cause;
  out.abort_detail = std::move(state.abort_detail);
  out.trajectory = std::move(state.trajectory);
  return out;
}

EpisodeOutcome run_episode(const Task& task, const LAAConfig& config, Environment& env, Backend& backend,
                           const EpisodeOptions& options) {
  const PromptBuilder& prompts = options.prompts ? *options.prompts : PromptBuilder::builtin(task.env_kind);
  const ActionSet allowed = config.allowed_action_kinds.intersect(env.grammar());
  AgentState state = start_episode(task, config, env);

  try {
    if (config.plan) plan_step(state, backend, prompts, options);
    while (!state.over()) {
      if (config.think) self_think(state, backend, prompts, options);
      const std::string prompt = prompts.action_prompt(state.task, state.trajectory, state.config,
                                                       prompt_budget(state.config, options.generation));
      const std::string raw = query_backend(state, backend, options, prompt, "action");
      ParseResult parsed = parse_action(raw, allowed);
      if (auto* failure = std::get_if<ParseFailure>(&parsed)) {
        handle_parse_failure(state, raw, *failure, allowed, options);
      } else {
        execute_action(state, env, std::get<Action>(parsed), raw);
      }
    }
  } catch (const BackendError& e) {
    abort_episode(state, "backend", e.what());
  } catch (const BudgetError& e) {
    abort_episode(state, "budget", e.what());
  }
  return finish_episode(std::move(state), env);
}

}  // namespace bolaa
