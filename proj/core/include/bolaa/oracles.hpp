#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bolaa/catalog.hpp"
#include "bolaa/llm.hpp"
#include "bolaa/types.hpp"

namespace bolaa {

// Scripted policies that solve (or deliberately half-solve) fixture tasks.
// They answer plan and think prompts with fixed text and drive the action
// prompts from the latest observation, so they work for every architecture.

// search[title] -> click[title] -> click[Buy Now] for the task's target product.
ScriptedPolicy purchase_policy(const Task& task, const Catalog& catalog);

// The product with the most required attributes short of all of them, ties by
// lowest id. Throws ContractError if every product carries all of them.
const Product& pick_distractor(const Task& task, const Catalog& catalog);

// Same flow as purchase_policy, buying pick_distractor() instead.
ScriptedPolicy distractor_policy(const Task& task, const Catalog& catalog);

// finish[gold answer].
ScriptedPolicy answer_policy(const Task& task);

// "Instruction:" line of the current-episode section, or empty.
std::string episode_instruction(std::string_view prompt);

// Scripted backend holding one policy per task, routed by the instruction in
// the prompt. Unknown instructions raise BackendError.
class TaskRoutedBackend final : public Backend {
 public:
  TaskRoutedBackend(std::map<std::string, ScriptedPolicy> by_instruction, std::string id,
                    std::size_t context_limit = 1u << 20);

  std::string id() const override { return id_; }
  std::size_t context_limit() const override { return context_limit_; }

 protected:
  Completion do_generate(const std::string& prompt, const GenerationParams& params) override;

 private:
  std::map<std::string, ScriptedPolicy> policies_;
  std::string id_;
  std::size_t context_limit_;
};

enum class OracleKind { purchase, distractor, answer };

std::string_view to_string(OracleKind kind);
OracleKind parse_oracle_kind(std::string_view text);

// `catalog` is required for the shopping oracles and ignored for answer.
std::unique_ptr<Backend> make_oracle_backend(OracleKind kind, const std::vector<Task>& tasks,
                                             const Catalog* catalog, std::size_t context_limit = 1u << 20);

}  // namespace bolaa
