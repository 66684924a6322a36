#include <doctest.h>

#include "bolaa/errors.hpp"
#include "bolaa/oracles.hpp"
#include "bolaa/orchestrator.hpp"
#include "support.hpp"

using namespace bolaa;
using namespace bolaa::test;

namespace {

ControllerState controller(const Task& task, Environment& env, SelectionPolicy policy = SelectionPolicy::rule_based) {
  ControllerState s;
  s.pool = default_shopping_pool();
  s.policy = policy;
  s.episode = start_episode(task, make_config("ZS", EnvKind::shopping), env);
  return s;
}

std::vector<std::string> action_attribution(const std::vector<Record>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) {
    if (r.kind == RecordKind::action || r.kind == RecordKind::parse_failure) out.push_back(r.agent_id.value_or("?"));
  }
  return out;
}

}  // namespace

TEST_CASE("default pool: search and click specialists, fewshot only") {
  const LaborPool& pool = default_shopping_pool();
  REQUIRE(pool.agents.size() == 2);
  CHECK(pool.agents[0].agent_id == "search_agent");
  CHECK(pool.agents[0].specialty == ActionKind::search);
  CHECK(pool.agents[1].agent_id == "click_agent");
  CHECK(pool.agents[1].specialty == ActionKind::click);
  for (const auto& a : pool.agents) {
    CHECK(a.config.flags() == ArchitectureFlags{true, false, false});
    CHECK(a.config.allowed_action_kinds.size() == 1);
    CHECK(a.config.allowed_action_kinds.contains(a.specialty));
  }
  CHECK(parse_pool(serialize_pool(pool)) == pool);
}

TEST_CASE("pool validation") {
  LaborPool empty;
  CHECK_THROWS_AS(validate_pool(empty), ConfigError);

  LaborPool dup;
  dup.agents = {make_labor_agent("a", ActionKind::search, {}), make_labor_agent("a", ActionKind::click, {})};
  CHECK_THROWS_AS(validate_pool(dup), ConfigError);

  LaborPool wide;
  wide.agents = {make_labor_agent("a", ActionKind::search, {})};
  wide.agents[0].config.allowed_action_kinds.insert(ActionKind::click);
  CHECK_THROWS_AS(validate_pool(wide), ConfigError);

  LaborPool off_grammar;
  off_grammar.agents = {make_labor_agent("a", ActionKind::finish, {})};
  CHECK_THROWS_AS(validate_pool(off_grammar), ConfigError);

  CHECK_THROWS_AS(default_shopping_pool().at("nobody"), ContractError);
  CHECK_THROWS_AS(parse_pool(R"({"schema_version": 1, "env_kind": "shopping", "agents": []})"), ConfigError);
}

TEST_CASE("rule-based selection is a function of the page kind") {
  const LaborPool& pool = default_shopping_pool();
  CHECK(rule_based_selection(pool, PageKind::search_page) == "search_agent");
  CHECK(rule_based_selection(pool, PageKind::results_page) == "click_agent");
  CHECK(rule_based_selection(pool, PageKind::item_page) == "click_agent");
  CHECK(rule_based_selection(pool, PageKind::done_page) == "search_agent");

  LaborPool clicks_only;
  clicks_only.agents = {make_labor_agent("c1", ActionKind::click, {}), make_labor_agent("c2", ActionKind::click, {})};
  CHECK(rule_based_selection(clicks_only, PageKind::search_page) == "c1");
  CHECK(rule_based_selection(clicks_only, PageKind::item_page) == "c1");
}

TEST_CASE("selection against live env pages") {
  const Task& task = shopping_task(0);
  ShoppingEnv env = shopping_env();
  QueueBackend backend({"unused"});
  ControllerState s = controller(task, env);
  const auto& prompts = PromptBuilder::builtin(EnvKind::shopping);
  CHECK(select_agent(s, backend, prompts, {}) == "search_agent");
  execute_action(s.episode, env, Action{ActionKind::search, "camera tripod"}, "search[camera tripod]");
  REQUIRE(s.episode.last_observation.page_kind == PageKind::results_page);
  CHECK(select_agent(s, backend, prompts, {}) == "click_agent");
  CHECK(backend.prompts.empty());
}

TEST_CASE("backend-assisted selection parses the reply and falls back to the rule") {
  const Task& task = shopping_task(0);
  ShoppingEnv env = shopping_env();
  const auto& prompts = PromptBuilder::builtin(EnvKind::shopping);
  {
    QueueBackend backend({"click_agent"});
    ControllerState s = controller(task, env, SelectionPolicy::backend_assisted);
    CHECK(select_agent(s, backend, prompts, {}) == "click_agent");
    REQUIRE(backend.prompts.size() == 1);
    CHECK(backend.prompts[0].find("search_agent") != std::string::npos);
  }
  {
    QueueBackend backend({"I would pick Click_Agent, then search_agent."});
    ControllerState s = controller(task, env, SelectionPolicy::backend_assisted);
    CHECK(select_agent(s, backend, prompts, {}) == "click_agent");
  }
  {
    QueueBackend backend({"no idea"});
    ControllerState s = controller(task, env, SelectionPolicy::backend_assisted);
    CHECK(select_agent(s, backend, prompts, {}) == "search_agent");
  }
}

TEST_CASE("build_message renders the shared trajectory for the target") {
  const Task& task = shopping_task(0);
  ShoppingEnv env = shopping_env();
  ControllerState s = controller(task, env);
  const auto& prompts = PromptBuilder::builtin(EnvKind::shopping);
  const auto& search = s.pool.at("search_agent");
  const auto& click = s.pool.at("click_agent");

  const std::string first = build_message(s, search, prompts, {});
  CHECK(first.find(task.instruction) != std::string::npos);
  CHECK(first.find(prompts.templates().labor_directives.at(ActionKind::search)) != std::string::npos);
  CHECK(first.substr(first.find("[Current episode]")) ==
        "[Current episode]\nInstruction: " + task.instruction + "\nAction:");

  execute_action(s.episode, env, Action{ActionKind::search, "camera tripod"}, "search[camera tripod]", "search_agent");
  execute_action(s.episode, env, Action{ActionKind::click, "Back to Search"}, "click[Back to Search]", "click_agent");
  const std::string second = build_message(s, click, prompts, {});
  CHECK(second.find("Action: search[camera tripod]\nObservation: ") != std::string::npos);
  CHECK(second.find("Action: click[Back to Search]\nObservation: ") != std::string::npos);

  // Oversized history: suffix-truncated to the target's budget.
  for (int i = 0; i < 60; ++i) {
    execute_action(s.episode, env, Action{ActionKind::search, "tripod " + std::to_string(i)}, "search[x]");
    execute_action(s.episode, env, Action{ActionKind::click, "Back to Search"}, "click[Back to Search]");
  }
  const std::string big = build_message(s, click, prompts, {});
  CHECK(estimate_tokens(big) <= prompt_budget(click.config, {}));
  CHECK(big.find("search[tripod 59]") != std::string::npos);
  CHECK(big.find("search[camera tripod]") == std::string::npos);
}

TEST_CASE("orchestrate_step attributes actions and restricts to the specialty") {
  const Task& task = shopping_task(0);
  const auto& prompts = PromptBuilder::builtin(EnvKind::shopping);
  {
    ShoppingEnv env = shopping_env();
    ControllerState s = controller(task, env);
    QueueBackend backend({"search[camera tripod]"});
    const StepReport report = orchestrate_step(s, backend, env, prompts, {});
    CHECK(report.agent_id == "search_agent");
    REQUIRE(report.records.size() == 2);
    CHECK(report.records[0].kind == RecordKind::action);
    CHECK(report.records[0].agent_id == "search_agent");
    CHECK(report.records[0].action == Action{ActionKind::search, "camera tripod"});
    CHECK_FALSE(report.done);
  }
  {
    ShoppingEnv env = shopping_env();
    ControllerState s = controller(task, env);
    execute_action(s.episode, env, Action{ActionKind::search, "camera tripod"}, "search[camera tripod]");
    QueueBackend backend({"search[q]"});
    const StepReport report = orchestrate_step(s, backend, env, prompts, {});
    CHECK(report.agent_id == "click_agent");
    REQUIRE(report.records.size() == 2);
    CHECK(report.records[0].kind == RecordKind::parse_failure);
    CHECK(report.records[0].agent_id == "click_agent");
    CHECK(report.records[1].content.rfind("Invalid action. Allowed: click[...]", 0) == 0);
  }
}

TEST_CASE("default pool with the purchase oracle: search once, click thereafter") {
  const Task& task = shopping_task(0);
  auto backend = make_oracle_backend(OracleKind::purchase, {task}, builtin_catalog().get());
  ShoppingEnv env = shopping_env();
  const EpisodeOutcome out = run_bolaa_episode(default_shopping_pool(), task, env, *backend);
  CHECK(action_attribution(out.trajectory.records()) ==
        std::vector<std::string>{"search_agent", "click_agent", "click_agent"});
  CHECK(out.result.reward == 1.0);
  CHECK(out.result.recall == 1);
  CHECK(out.result.terminated == Termination::completed);
  CHECK(count_kind(out.trajectory.records(), RecordKind::plan) == 0);
  CHECK(count_kind(out.trajectory.records(), RecordKind::thought) == 0);
}

TEST_CASE("every default-pool action carries its agent's specialty") {
  for (std::size_t i = 0; i < 20; ++i) {
    const Task& task = shopping_task(i);
    auto backend = make_oracle_backend(OracleKind::distractor, {task}, builtin_catalog().get());
    ShoppingEnv env = shopping_env();
    const EpisodeOutcome out = run_bolaa_episode(default_shopping_pool(), task, env, *backend);
    for (const auto& r : out.trajectory.records()) {
      if (r.kind != RecordKind::action) continue;
      REQUIRE(r.agent_id.has_value());
      CHECK(default_shopping_pool().at(*r.agent_id).specialty == r.action->kind);
    }
  }
}

TEST_CASE("a one-agent pool behaves as a specialty-restricted solo agent") {
  const Task& task = shopping_task(0);
  LaborPool pool;
  pool.agents = {make_labor_agent("searcher", ActionKind::search, {true, false, false})};
  QueueBackend backend({"search[tripod]", "click[Buy Now]", "search[stand]"});
  ShoppingEnv env = shopping_env();
  BolaaOptions options;
  options.max_steps = 3;
  const EpisodeOutcome out = run_bolaa_episode(pool, task, env, backend, options);
  const auto& r = out.trajectory.records();
  REQUIRE(r.size() == 6);
  CHECK(r[0].kind == RecordKind::action);
  CHECK(r[2].kind == RecordKind::parse_failure);
  CHECK(r[4].kind == RecordKind::action);
  CHECK(action_attribution(r) == std::vector<std::string>{"searcher", "searcher", "searcher"});
  CHECK(out.result.terminated == Termination::max_steps);
}

TEST_CASE("max_steps mid-browse ends without a purchase") {
  const Task& task = shopping_task(0);
  auto backend = make_oracle_backend(OracleKind::purchase, {task}, builtin_catalog().get());
  ShoppingEnv env = shopping_env();
  BolaaOptions options;
  options.max_steps = 2;
  const EpisodeOutcome out = run_bolaa_episode(default_shopping_pool(), task, env, *backend, options);
  CHECK(out.result.terminated == Termination::max_steps);
  CHECK(out.result.reward == 0.0);
  CHECK(out.result.steps_used == 2);
}

TEST_CASE("thinking and planning labor agents") {
  const Task& task = shopping_task(0);
  LaborPool pool;
  pool.agents = {make_labor_agent("search_agent", ActionKind::search, {true, true, true}),
                 make_labor_agent("click_agent", ActionKind::click, {true, true, true})};
  auto backend = make_oracle_backend(OracleKind::purchase, {task}, builtin_catalog().get());
  ShoppingEnv env = shopping_env();
  std::vector<PromptLogEntry> log;
  BolaaOptions options;
  options.episode.prompt_sink = [&](const PromptLogEntry& e) { log.push_back(e); };
  const EpisodeOutcome out = run_bolaa_episode(pool, task, env, *backend, options);
  const auto& r = out.trajectory.records();
  CHECK(count_kind(r, RecordKind::plan) == 1);
  CHECK(r.front().agent_id == "search_agent");
  CHECK(count_kind(r, RecordKind::thought) == 3);
  CHECK(out.result.reward == 1.0);
  for (const auto& e : log) CHECK(e.agent_id.has_value());
}

TEST_CASE("pool and task environments must agree") {
  LaborPool pool;
  pool.env_kind = EnvKind::wikiqa;
  pool.agents = {make_labor_agent("finisher", ActionKind::finish, {})};
  WikiEnv env = wiki_env();
  QueueBackend backend({"finish[x]"});
  CHECK_THROWS_AS(run_bolaa_episode(pool, shopping_task(0), env, backend), ConfigError);
  const EpisodeOutcome out = run_bolaa_episode(pool, wiki_task(0), env, backend);
  CHECK(out.result.terminated == Termination::completed);
  CHECK(parse_selection_policy(to_string(SelectionPolicy::backend_assisted)) == SelectionPolicy::backend_assisted);
}
