#include "bolaa/orchestrator.hpp"

#include <json.hpp>
#include <set>

#include "bolaa/errors.hpp"
#include "bolaa/fixtures.hpp"
#include "resources.hpp"
#include "text_util.hpp"

namespace bolaa {

namespace {

using nlohmann::json;

ActionKind parse_specialty(const std::string& text) {
  const auto kind = parse_action_kind(text);
  if (!kind) throw ConfigError("unknown labor specialty '" + text + "'");
  return *kind;
}

LAAConfig controller_config(const LaborPool& pool, std::size_t max_steps, std::size_t context_limit) {
  LAAConfig c;
  c.name = std::string(kBolaaName);
  c.max_steps = max_steps;
  c.context_limit = context_limit;
  for (const auto& a : pool.agents) {
    c.allowed_action_kinds.insert(a.specialty);
    c.plan = c.plan || a.config.plan;
  }
  return c;
}

}  // namespace

LaborAgentSpec make_labor_agent(std::string agent_id, ActionKind specialty, ArchitectureFlags flags,
                                std::string template_ref, std::size_t max_steps, std::size_t context_limit) {
  LaborAgentSpec spec;
  spec.agent_id = std::move(agent_id);
  spec.specialty = specialty;
  spec.template_ref = std::move(template_ref);
  spec.config.name = spec.agent_id;
  spec.config.fewshot = flags.fewshot;
  spec.config.think = flags.think;
  spec.config.plan = flags.plan;
  spec.config.max_steps = max_steps;
  spec.config.context_limit = context_limit;
  spec.config.allowed_action_kinds = ActionSet{specialty};
  return spec;
}

const LaborAgentSpec& LaborPool::at(std::string_view agent_id) const {
  for (const auto& a : agents) {
    if (a.agent_id == agent_id) return a;
  }
  throw ContractError("no labor agent '" + std::string(agent_id) + "' in the pool");
}

std::vector<std::pair<std::string, ActionKind>> LaborPool::roster() const {
  std::vector<std::pair<std::string, ActionKind>> out;
  for (const auto& a : agents) out.emplace_back(a.agent_id, a.specialty);
  return out;
}

LaborPool LaborPool::with_limits(std::size_t max_steps, std::size_t context_limit) const {
  LaborPool out = *this;
  for (auto& a : out.agents) {
    a.config.max_steps = max_steps;
    a.config.context_limit = context_limit;
  }
  return out;
}

void validate_pool(const LaborPool& pool) {
  if (pool.agents.empty()) throw ConfigError("labor pool is empty");
  std::set<std::string> seen;
  const ActionSet grammar = action_grammar(pool.env_kind);
  for (const auto& a : pool.agents) {
    if (a.agent_id.empty()) throw ConfigError("labor agent with an empty id");
    if (!seen.insert(a.agent_id).second) throw ConfigError("duplicate labor agent id '" + a.agent_id + "'");
    if (a.config.allowed_action_kinds != ActionSet{a.specialty}) {
      throw ConfigError("labor agent '" + a.agent_id + "' must allow exactly its specialty");
    }
    if (!grammar.contains(a.specialty)) {
      throw ConfigError("labor agent '" + a.agent_id + "' specialty " + std::string(to_string(a.specialty)) +
                        " is outside the " + std::string(to_string(pool.env_kind)) + " grammar");
    }
  }
}

LaborPool parse_pool(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("pool file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema_version", 0) != 1) {
    throw SchemaError("pool file has a missing or unsupported schema_version");
  }
  LaborPool pool;
  try {
    pool.env_kind = parse_env_kind(doc.at("env_kind").get<std::string>());
    for (const auto& a : doc.at("agents")) {
      const json flags = a.value("flags", json::object());
      ArchitectureFlags f{flags.value("fewshot", true), flags.value("think", false), flags.value("plan", false)};
      pool.agents.push_back(make_labor_agent(a.at("agent_id").get<std::string>(),
                                             parse_specialty(a.at("specialty").get<std::string>()), f,
                                             a.value("template", std::string(to_string(pool.env_kind)))));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("pool file: ") + e.what());
  }
  validate_pool(pool);
  return pool;
}

LaborPool load_pool(const std::filesystem::path& path) { return parse_pool(read_file(path)); }

std::string serialize_pool(const LaborPool& pool) {
  json agents = json::array();
  for (const auto& a : pool.agents) {
    agents.push_back({{"agent_id", a.agent_id},
                      {"specialty", std::string(to_string(a.specialty))},
                      {"flags", {{"fewshot", a.config.fewshot}, {"think", a.config.think}, {"plan", a.config.plan}}},
                      {"template", a.template_ref}});
  }
  return json{{"schema_version", 1}, {"env_kind", std::string(to_string(pool.env_kind))}, {"agents", agents}}
      .dump(1);
}

const LaborPool& default_shopping_pool() {
  static const LaborPool pool = parse_pool(detail::resource("pools/shopping_default.json"));
  return pool;
}

std::string_view to_string(SelectionPolicy policy) {
  return policy == SelectionPolicy::rule_based ? "rule_based" : "backend_assisted";
}

SelectionPolicy parse_selection_policy(std::string_view text) {
  if (text == "rule_based") return SelectionPolicy::rule_based;
  if (text == "backend_assisted") return SelectionPolicy::backend_assisted;
  throw ConfigError("unknown selection policy '" + std::string(text) + "'");
}

const std::string& rule_based_selection(const LaborPool& pool, PageKind page) {
  if (pool.agents.empty()) throw ConfigError("labor pool is empty");
  std::optional<ActionKind> wanted;
  switch (page) {
    case PageKind::search_page:
      wanted = ActionKind::search;
      break;
    case PageKind::results_page:
    case PageKind::item_page:
      wanted = ActionKind::click;
      break;
    default:
      break;
  }
  if (wanted) {
    for (const auto& a : pool.agents) {
      if (a.specialty == *wanted) return a.agent_id;
    }
  }
  return pool.agents.front().agent_id;
}

std::string select_agent(ControllerState& state, Backend& backend, const PromptBuilder& prompts,
                         const EpisodeOptions& options) {
  const std::string& fallback = rule_based_selection(state.pool, state.episode.last_observation.page_kind);
  if (state.policy == SelectionPolicy::rule_based) return fallback;

  const std::string prompt =
      prompts.selector_prompt(state.episode.task, state.pool.roster(), state.episode.last_observation.content,
                              prompt_budget(state.episode.config, options.generation));
  const std::string reply = query_backend(state.episode, backend, options, prompt, "select");
  const std::string_view trimmed = detail::trim(reply);
  for (const auto& a : state.pool.agents) {
    if (detail::iequals(trimmed, a.agent_id)) return a.agent_id;
  }
  // Otherwise take the earliest pool id mentioned anywhere in the reply.
  const std::string lowered = detail::to_lower(reply);
  std::size_t best_pos = std::string::npos;
  const std::string* best = &fallback;
  for (const auto& a : state.pool.agents) {
    const auto pos = lowered.find(detail::to_lower(a.agent_id));
    if (pos < best_pos) {
      best_pos = pos;
      best = &a.agent_id;
    }
  }
  return *best;
}

std::string build_message(const ControllerState& state, const LaborAgentSpec& target,
                          const PromptBuilder& prompts, const GenerationParams& generation) {
  return prompts.labor_prompt(state.episode.task, state.episode.trajectory, target.config, target.specialty,
                              prompt_budget(target.config, generation));
}

StepReport orchestrate_step(ControllerState& state, Backend& backend, Environment& env,
                            const PromptBuilder& prompts, const EpisodeOptions& options) {
  if (state.episode.over()) throw ContractError("orchestrate_step called on a finished episode");
  AgentState& ep = state.episode;
  const std::size_t before = ep.trajectory.records().size();

  StepReport report;
  report.agent_id = select_agent(state, backend, prompts, options);
  const LaborAgentSpec& target = state.pool.at(report.agent_id);
  const std::optional<std::string> attribution = target.agent_id;

  if (target.config.think) {
    const std::string prompt = prompts.think_prompt(ep.task, ep.trajectory, target.config,
                                                    prompt_budget(target.config, options.generation));
    std::string text = query_backend(ep, backend, options, prompt, "think", attribution);
    ep.trajectory.append(Record{RecordKind::thought, std::move(text), std::nullopt, ep.step_index, attribution});
  }

  const std::string message = build_message(state, target, prompts, options.generation);
  const std::string raw = query_backend(ep, backend, options, message, "action", attribution);
  const ActionSet allowed = target.config.allowed_action_kinds.intersect(env.grammar());
  ParseResult parsed = parse_action(raw, allowed);
  if (auto* failure = std::get_if<ParseFailure>(&parsed)) {
    handle_parse_failure(ep, raw, *failure, allowed, options, attribution);
  } else {
    execute_action(ep, env, std::get<Action>(parsed), raw, attribution);
  }

  const auto& records = ep.trajectory.records();
  report.records.assign(records.begin() + static_cast<std::ptrdiff_t>(before), records.end());
  report.done = ep.over();
  return report;
}

EpisodeOutcome run_bolaa_episode(const LaborPool& pool, const Task& task, Environment& env, Backend& backend,
                                 const BolaaOptions& options) {
  validate_pool(pool);
  if (pool.env_kind != task.env_kind) {
    throw ConfigError("pool is for " + std::string(to_string(pool.env_kind)) + " but the task is " +
                      std::string(to_string(task.env_kind)));
  }
  const PromptBuilder& prompts =
      options.episode.prompts ? *options.episode.prompts : PromptBuilder::builtin(task.env_kind);

  ControllerState state;
  state.pool = pool.with_limits(options.max_steps, options.context_limit);
  state.policy = options.policy;
  state.episode = start_episode(task, controller_config(state.pool, options.max_steps, options.context_limit), env);

  try {
    for (const auto& a : state.pool.agents) {
      if (!a.config.plan) continue;
      plan_step(state.episode, backend, prompts, options.episode, a.agent_id);
      break;
    }
    while (!state.episode.over()) orchestrate_step(state, backend, env, prompts, options.episode);
  } catch (const BackendError& e) {
    abort_episode(state.episode, "backend", e.what());
  } catch (const BudgetError& e) {
    abort_episode(state.episode, "budget", e.what());
  }
  return finish_episode(std::move(state.episode), env);
}

}  // namespace bolaa
