#include <benchmark/benchmark.h>

#include <random>

#include "bolaa/agent.hpp"
#include "bolaa/oracles.hpp"
#include "bolaa/prompting.hpp"
#include "support.hpp"

using namespace bolaa;

namespace {

void BM_SearchProducts(benchmark::State& state) {
  const auto catalog = builtin_catalog();
  const auto& tasks = builtin_tasks(EnvKind::shopping);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_products(tasks[i++ % tasks.size()].instruction, *catalog, 10));
  }
}
BENCHMARK(BM_SearchProducts);

void BM_TokenF1(benchmark::State& state) {
  const std::string pred = "The 44th President of the United States, Barack Obama";
  const std::string gold = "Barack Hussein Obama II";
  for (auto _ : state) benchmark::DoNotOptimize(token_f1(pred, gold));
}
BENCHMARK(BM_TokenF1);

void BM_ParseAction(benchmark::State& state) {
  const std::string raw =
      "Thought: the second result matches color and size, so I should open it.\nAction: click[B07XJ8C8F5]";
  const ActionSet allowed{ActionKind::search, ActionKind::click};
  for (auto _ : state) benchmark::DoNotOptimize(parse_action(raw, allowed));
}
BENCHMARK(BM_ParseAction);

void BM_TruncateMemory(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  Trajectory t("bench");
  t.append(Record{RecordKind::plan, "1. search 2. click 3. buy", std::nullopt, 0, std::nullopt});
  for (std::size_t s = 0; s < steps; ++s) {
    Record a{RecordKind::action, {}, Action{ActionKind::search, "query " + std::to_string(s)}, s, std::nullopt};
    a.content = a.action->to_text();
    t.append(a);
    t.append(Record{RecordKind::observation, std::string(100 + rng() % 900, 'x'), std::nullopt, s, std::nullopt});
  }
  for (auto _ : state) benchmark::DoNotOptimize(truncate_memory(t, 1500));
}
BENCHMARK(BM_TruncateMemory)->Arg(15)->Arg(100);

void BM_OracleEpisode(benchmark::State& state) {
  const auto& tasks = builtin_tasks(EnvKind::shopping);
  auto backend = make_oracle_backend(OracleKind::purchase, tasks, builtin_catalog().get());
  const LAAConfig config = make_config("PlanReAct", EnvKind::shopping);
  std::size_t i = 0;
  for (auto _ : state) {
    ShoppingEnv env = test::shopping_env();
    benchmark::DoNotOptimize(run_episode(tasks[i++ % tasks.size()], config, env, *backend));
  }
}
BENCHMARK(BM_OracleEpisode);

}  // namespace
BENCHMARK_MAIN();
