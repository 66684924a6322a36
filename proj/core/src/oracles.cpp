#include "bolaa/oracles.hpp"

#include "bolaa/errors.hpp"
#include "bolaa/prompt_markers.hpp"
#include "bolaa/shopping_env.hpp"

namespace bolaa {

namespace {

constexpr std::string_view kPlanText =
    "1. Search for the item described in the instruction. 2. Open the result that matches it. 3. Buy it.";
constexpr std::string_view kAnswerPlanText =
    "1. Look up the entities in the question. 2. Follow the links between them. 3. Give the answer.";

ScriptedRule suffix(std::string pattern, std::string response) {
  return ScriptedRule{MatchScope::prompt, MatchKind::suffix, std::move(pattern), std::move(response)};
}

ScriptedRule on_observation(std::string pattern, std::string response) {
  return ScriptedRule{MatchScope::last_observation, MatchKind::substring, std::move(pattern), std::move(response)};
}

ScriptedPolicy buy_policy(const Product& product) {
  ScriptedPolicy p;
  p.rules.push_back(suffix(std::string(markers::kPlanCue), std::string(kPlanText)));
  p.rules.push_back(
      suffix(std::string(markers::kThinkCue), "The item I need is " + product.title + ", so I will go for it."));
  p.rules.push_back(on_observation("[" + std::string(kBuyNow) + "]", "click[" + std::string(kBuyNow) + "]"));
  p.rules.push_back(on_observation("[" + product.title + "]", "click[" + product.title + "]"));
  p.default_response = "search[" + product.title + "]";
  return p;
}

}  // namespace

ScriptedPolicy purchase_policy(const Task& task, const Catalog& catalog) {
  return buy_policy(catalog.at(task.shopping().target_product_id));
}

const Product& pick_distractor(const Task& task, const Catalog& catalog) {
  const auto& required = task.shopping().required_attributes;
  const Product* best = nullptr;
  std::size_t best_overlap = 0;
  for (const auto& p : catalog.products()) {
    std::size_t overlap = 0;
    for (const auto& a : required) overlap += p.attributes.count(a);
    if (overlap >= required.size()) continue;
    if (!best || overlap > best_overlap || (overlap == best_overlap && p.id < best->id)) {
      best = &p;
      best_overlap = overlap;
    }
  }
  if (!best) throw ContractError("task " + task.id + " has no distractor: every product matches");
  return *best;
}

ScriptedPolicy distractor_policy(const Task& task, const Catalog& catalog) {
  return buy_policy(pick_distractor(task, catalog));
}

ScriptedPolicy answer_policy(const Task& task) {
  ScriptedPolicy p;
  p.rules.push_back(suffix(std::string(markers::kPlanCue), std::string(kAnswerPlanText)));
  p.rules.push_back(suffix(std::string(markers::kThinkCue), "I already know the answer."));
  p.default_response = "finish[" + task.wiki().gold_answer + "]";
  return p;
}

std::string episode_instruction(std::string_view prompt) {
  const auto episode = prompt.rfind(markers::kEpisode);
  if (episode == std::string_view::npos) return {};
  const std::string key = "\n" + std::string(markers::kInstruction) + " ";
  const auto start = prompt.find(key, episode);
  if (start == std::string_view::npos) return {};
  const auto begin = start + key.size();
  const auto end = prompt.find('\n', begin);
  return std::string(prompt.substr(begin, end == std::string_view::npos ? end : end - begin));
}

TaskRoutedBackend::TaskRoutedBackend(std::map<std::string, ScriptedPolicy> by_instruction, std::string id,
                                     std::size_t context_limit)
    : policies_(std::move(by_instruction)), id_(std::move(id)), context_limit_(context_limit) {}

Completion TaskRoutedBackend::do_generate(const std::string& prompt, const GenerationParams&) {
  const auto it = policies_.find(episode_instruction(prompt));
  if (it == policies_.end()) throw BackendError(id_ + ": no policy for the prompt's instruction");
  Completion c = scripted_generate(it->second, prompt);
  c.backend_id = id_;
  return c;
}

std::string_view to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::purchase:
      return "purchase_oracle";
    case OracleKind::distractor:
      return "distractor_oracle";
    case OracleKind::answer:
      return "answer_oracle";
  }
  return "?";
}

OracleKind parse_oracle_kind(std::string_view text) {
  for (auto k : {OracleKind::purchase, OracleKind::distractor, OracleKind::answer}) {
    if (to_string(k) == text) return k;
  }
  throw ConfigError("unknown oracle '" + std::string(text) + "'");
}

std::unique_ptr<Backend> make_oracle_backend(OracleKind kind, const std::vector<Task>& tasks,
                                             const Catalog* catalog, std::size_t context_limit) {
  std::map<std::string, ScriptedPolicy> policies;
  for (const auto& t : tasks) {
    if (kind == OracleKind::answer) {
      if (t.env_kind != EnvKind::wikiqa) throw ConfigError("answer_oracle needs wikiqa tasks");
      policies[t.instruction] = answer_policy(t);
      continue;
    }
    if (t.env_kind != EnvKind::shopping) throw ConfigError(std::string(to_string(kind)) + " needs shopping tasks");
    if (!catalog) throw ConfigError(std::string(to_string(kind)) + " needs a catalog");
    policies[t.instruction] = kind == OracleKind::purchase ? purchase_policy(t, *catalog) : distractor_policy(t, *catalog);
  }
  return std::make_unique<TaskRoutedBackend>(std::move(policies), std::string(to_string(kind)), context_limit);
}

}  // namespace bolaa
