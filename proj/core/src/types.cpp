#include "bolaa/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "bolaa/errors.hpp"
#include "text_util.hpp"

namespace bolaa {

namespace {

struct ArchitectureEntry {
  std::string_view name;
  ArchitectureFlags flags;
};

constexpr std::array<ArchitectureEntry, 5> kArchitectureTable{{
    {"ZS", {false, false, false}},
    {"ZST", {false, true, false}},
    {"ReAct", {true, true, false}},
    {"PlanAct", {true, false, true}},
    {"PlanReAct", {true, true, true}},
}};

}  // namespace

std::string_view to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::shopping:
      return "shopping";
    case EnvKind::wikiqa:
      return "wikiqa";
  }
  return "unknown";
}

EnvKind parse_env_kind(std::string_view text) {
  if (text == "shopping") return EnvKind::shopping;
  if (text == "wikiqa") return EnvKind::wikiqa;
  throw ValidationError("unknown env_kind '" + std::string(text) + "'");
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::search:
      return "search";
    case ActionKind::click:
      return "click";
    case ActionKind::lookup:
      return "lookup";
    case ActionKind::finish:
      return "finish";
  }
  return "unknown";
}

std::optional<ActionKind> parse_action_kind(std::string_view text) {
  const std::string lowered = detail::to_lower(text);
  for (auto k : kAllActionKinds) {
    if (lowered == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<ActionKind> ActionSet::kinds() const {
  std::vector<ActionKind> out;
  for (auto k : kAllActionKinds) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

ActionSet action_grammar(EnvKind kind) {
  switch (kind) {
    case EnvKind::shopping:
      return {ActionKind::search, ActionKind::click};
    case EnvKind::wikiqa:
      return {ActionKind::search, ActionKind::lookup, ActionKind::finish};
  }
  return {};
}

std::string Action::to_text() const {
  std::string out(to_string(kind));
  out += '[';
  out += payload;
  out += ']';
  return out;
}

Action make_action(ActionKind kind, std::string payload) {
  if (payload.empty()) throw ValidationError("action payload is empty");
  if (detail::trim(payload) != payload) {
    throw ValidationError("action payload has surrounding whitespace");
  }
  return Action{kind, std::move(payload)};
}

const ShoppingTruth& Task::shopping() const {
  if (const auto* gt = std::get_if<ShoppingTruth>(&ground_truth)) return *gt;
  throw ValidationError("task " + id + " has no shopping ground truth");
}

const WikiTruth& Task::wiki() const {
  if (const auto* gt = std::get_if<WikiTruth>(&ground_truth)) return *gt;
  throw ValidationError("task " + id + " has no wikiqa ground truth");
}

void validate_task(const Task& task) {
  if (task.id.empty()) throw ValidationError("task id is empty");
  if (detail::trim(task.instruction).empty()) {
    throw ValidationError("task " + task.id + ": instruction is empty");
  }
  switch (task.env_kind) {
    case EnvKind::shopping: {
      const auto* gt = std::get_if<ShoppingTruth>(&task.ground_truth);
      if (gt == nullptr) throw ValidationError("task " + task.id + ": expected shopping ground truth");
      if (gt->target_product_id.empty()) {
        throw ValidationError("task " + task.id + ": target_product_id is empty");
      }
      if (gt->required_attributes.empty()) {
        throw ValidationError("task " + task.id + ": required_attributes is empty");
      }
      if (gt->price_cap && *gt->price_cap <= 0.0) {
        throw ValidationError("task " + task.id + ": price_cap must be positive");
      }
      if (task.complexity != static_cast<int>(gt->required_attributes.size())) {
        throw ValidationError("task " + task.id + ": complexity " + std::to_string(task.complexity) +
                              " does not match " + std::to_string(gt->required_attributes.size()) +
                              " required attributes");
      }
      break;
    }
    case EnvKind::wikiqa: {
      const auto* gt = std::get_if<WikiTruth>(&task.ground_truth);
      if (gt == nullptr) throw ValidationError("task " + task.id + ": expected wikiqa ground truth");
      if (detail::trim(gt->gold_answer).empty()) {
        throw ValidationError("task " + task.id + ": gold_answer is empty");
      }
      if (task.complexity < 1 || task.complexity > 3) {
        throw ValidationError("task " + task.id + ": wikiqa complexity must be 1, 2 or 3");
      }
      break;
    }
  }
}

int task_complexity(const Task& task) {
  validate_task(task);
  if (task.env_kind == EnvKind::shopping) {
    return static_cast<int>(task.shopping().required_attributes.size());
  }
  return task.complexity;
}

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::plan:
      return "plan";
    case RecordKind::thought:
      return "thought";
    case RecordKind::action:
      return "action";
    case RecordKind::observation:
      return "observation";
    case RecordKind::parse_failure:
      return "parse_failure";
  }
  return "unknown";
}

RecordKind parse_record_kind(std::string_view text) {
  for (auto k : {RecordKind::plan, RecordKind::thought, RecordKind::action, RecordKind::observation,
                 RecordKind::parse_failure}) {
    if (text == to_string(k)) return k;
  }
  throw ValidationError("unknown record kind '" + std::string(text) + "'");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::completed:
      return "completed";
    case Termination::max_steps:
      return "max_steps";
    case Termination::aborted:
      return "aborted";
  }
  return "unknown";
}

Termination parse_termination(std::string_view text) {
  for (auto t : {Termination::completed, Termination::max_steps, Termination::aborted}) {
    if (text == to_string(t)) return t;
  }
  throw ValidationError("unknown termination '" + std::string(text) + "'");
}

std::optional<ArchitectureFlags> architecture_flags(std::string_view name) {
  for (const auto& entry : kArchitectureTable) {
    if (entry.name == name) return entry.flags;
  }
  return std::nullopt;
}

std::optional<std::string_view> architecture_name(ArchitectureFlags flags) {
  for (const auto& entry : kArchitectureTable) {
    if (entry.flags == flags) return entry.name;
  }
  return std::nullopt;
}

LAAConfig make_config(std::string_view name, EnvKind env, std::size_t max_steps,
                      std::size_t context_limit) {
  auto flags = architecture_flags(name);
  if (!flags) throw ConfigError("unknown architecture '" + std::string(name) + "'");
  LAAConfig config;
  config.name = std::string(name);
  config.fewshot = flags->fewshot;
  config.think = flags->think;
  config.plan = flags->plan;
  config.max_steps = max_steps;
  config.context_limit = context_limit;
  config.allowed_action_kinds = action_grammar(env);
  return config;
}

}  // namespace bolaa
