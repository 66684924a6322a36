#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bolaa {

enum class EnvKind { shopping, wikiqa };

std::string_view to_string(EnvKind kind);
EnvKind parse_env_kind(std::string_view text);

// ---------------------------------------------------------------------------
// Actions

enum class ActionKind : std::uint8_t { search = 0, click = 1, lookup = 2, finish = 3 };

inline constexpr ActionKind kAllActionKinds[] = {ActionKind::search, ActionKind::click,
                                                 ActionKind::lookup, ActionKind::finish};

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view text);

// Small value set over ActionKind.
class ActionSet {
 public:
  constexpr ActionSet() = default;
  constexpr ActionSet(std::initializer_list<ActionKind> kinds) {
    for (auto k : kinds) insert(k);
  }

  constexpr void insert(ActionKind k) { bits_ |= bit(k); }
  constexpr bool contains(ActionKind k) const { return (bits_ & bit(k)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    std::size_t n = 0;
    for (auto k : kAllActionKinds) n += contains(k) ? 1 : 0;
    return n;
  }
  constexpr ActionSet intersect(ActionSet other) const {
    ActionSet out;
    out.bits_ = bits_ & other.bits_;
    return out;
  }
  std::vector<ActionKind> kinds() const;

  friend constexpr bool operator==(ActionSet, ActionSet) = default;

 private:
  static constexpr std::uint8_t bit(ActionKind k) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

// The grammar each environment accepts.
ActionSet action_grammar(EnvKind kind);

struct Action {
  ActionKind kind = ActionKind::search;
  std::string payload;

  // Canonical surface form, e.g. "search[camera tripod]".
  std::string to_text() const;

  friend bool operator==(const Action&, const Action&) = default;
};

// Throws ValidationError if the payload is empty or carries surrounding whitespace.
Action make_action(ActionKind kind, std::string payload);

// ---------------------------------------------------------------------------
// Tasks

struct ShoppingTruth {
  std::string target_product_id;
  std::set<std::string> required_attributes;
  std::optional<double> price_cap;

  friend bool operator==(const ShoppingTruth&, const ShoppingTruth&) = default;
};

struct WikiTruth {
  std::string gold_answer;

  friend bool operator==(const WikiTruth&, const WikiTruth&) = default;
};

using GroundTruth = std::variant<ShoppingTruth, WikiTruth>;

struct Task {
  std::string id;
  std::string instruction;
  EnvKind env_kind = EnvKind::shopping;
  GroundTruth ground_truth;
  int complexity = 1;

  const ShoppingTruth& shopping() const;
  const WikiTruth& wiki() const;

  friend bool operator==(const Task&, const Task&) = default;
};

// Throws ValidationError describing the first violated invariant.
void validate_task(const Task& task);

// Number of required attributes for shopping tasks (price cap not counted),
// difficulty tier for wikiqa tasks.
int task_complexity(const Task& task);

// ---------------------------------------------------------------------------
// Trajectory records

enum class RecordKind { plan, thought, action, observation, parse_failure };

std::string_view to_string(RecordKind kind);
RecordKind parse_record_kind(std::string_view text);

struct Record {
  RecordKind kind = RecordKind::observation;
  std::string content;
  std::optional<Action> action;
  std::size_t step_index = 0;
  std::optional<std::string> agent_id;

  friend bool operator==(const Record&, const Record&) = default;
};

enum class Termination { completed, max_steps, aborted };

std::string_view to_string(Termination t);
Termination parse_termination(std::string_view text);

// ---------------------------------------------------------------------------
// Architectures

struct ArchitectureFlags {
  bool fewshot = false;
  bool think = false;
  bool plan = false;

  friend bool operator==(ArchitectureFlags, ArchitectureFlags) = default;
};

inline constexpr std::string_view kCanonicalArchitectures[] = {"ZS", "ZST", "ReAct", "PlanAct",
                                                               "PlanReAct"};
inline constexpr std::string_view kBolaaName = "BOLAA";

std::optional<ArchitectureFlags> architecture_flags(std::string_view name);
std::optional<std::string_view> architecture_name(ArchitectureFlags flags);

struct LAAConfig {
  std::string name;
  bool fewshot = false;
  bool think = false;
  bool plan = false;
  std::size_t max_steps = 15;
  std::size_t context_limit = 2048;
  ActionSet allowed_action_kinds;

  ArchitectureFlags flags() const { return {fewshot, think, plan}; }

  friend bool operator==(const LAAConfig&, const LAAConfig&) = default;
};

// One of the five canonical solo architectures for the given environment.
// Throws ConfigError on an unknown name.
LAAConfig make_config(std::string_view name, EnvKind env, std::size_t max_steps = 15,
                      std::size_t context_limit = 2048);

// ---------------------------------------------------------------------------
// Results

struct EpisodeResult {
  std::string task_id;
  double reward = 0.0;
  int recall = 0;
  std::size_t steps_used = 0;
  Termination terminated = Termination::max_steps;
  std::string trajectory_ref;
  // Empty unless terminated == aborted: "backend", "parse_failures", or "budget".
  std::string abort_cause;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

}  // namespace bolaa
