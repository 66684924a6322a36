#include "bolaa/prompting.hpp"

#include <json.hpp>

#include "bolaa/errors.hpp"
#include "bolaa/prompt_markers.hpp"
#include "resources.hpp"
#include "text_util.hpp"

namespace bolaa {

namespace {

std::string line(std::string_view label, std::string_view content) {
  std::string out(label);
  out += ' ';
  out += content;
  out += '\n';
  return out;
}

// Memory unit: the pinned plan, a lone thought, or an action-like record plus its observation.
struct Unit {
  std::string text;
};

std::vector<std::string> section_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    out.emplace_back(text.substr(pos, end - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::string render_plan_prompt(const TemplateSet& templates, const TokenEstimator& estimator, const Task& task,
                               const std::vector<FewshotExample>& examples, std::size_t budget) {
  std::vector<const FewshotExample*> planned;
  for (const auto& ex : examples) {
    if (ex.plan) planned.push_back(&ex);
  }
  if (planned.empty()) throw ConfigError("plan prompting needs at least one example plan");

  // Drop the earliest examples until the prompt fits; at least one must remain.
  for (std::size_t first = 0; first < planned.size(); ++first) {
    PromptTemplate tmpl;
    tmpl.preamble = templates.preamble;
    tmpl.directive = templates.plan_instruction;
    tmpl.fewshot_block = std::string(markers::kExamples) + "\n";
    for (std::size_t i = first; i < planned.size(); ++i) {
      if (i != first) tmpl.fewshot_block += '\n';
      tmpl.fewshot_block += line(markers::kInstruction, planned[i]->instruction);
      tmpl.fewshot_block += line(markers::kPlan, *planned[i]->plan);
    }
    tmpl.instruction = task.instruction;
    tmpl.cue = std::string(markers::kPlanCue);
    std::string prompt = tmpl.render();
    if (estimator.count(prompt) <= budget) return prompt;
  }
  throw BudgetError("plan prompt does not fit the budget of " + std::to_string(budget) +
                    " tokens even with a single example");
}

}  // namespace

std::string PromptTemplate::render() const {
  std::string out = preamble;
  out += "\n\n";
  if (!action_docs.empty()) {
    out += "Available actions:\n";
    for (const auto& doc : action_docs) {
      out += doc;
      out += '\n';
    }
  }
  if (!directive.empty()) {
    out += directive;
    out += '\n';
  }
  out += '\n';
  if (!fewshot_block.empty()) {
    out += fewshot_block;
    out += '\n';
  }
  out += markers::kEpisode;
  out += '\n';
  out += line(markers::kInstruction, instruction);
  out += memory_block;
  out += cue;
  return out;
}

TemplateSet TemplateSet::parse(std::string_view text) {
  TemplateSet set;
  std::string section;
  std::map<std::string, std::string> sections;
  for (const auto& raw : section_lines(text)) {
    const std::string_view l = detail::trim(raw);
    if (l.rfind("# template-version:", 0) == 0) {
      set.version = std::stoi(std::string(detail::trim(l.substr(19))));
      continue;
    }
    if (l.size() >= 2 && l.front() == '[' && l.back() == ']') {
      section = std::string(l.substr(1, l.size() - 2));
      continue;
    }
    if (l.empty() || section.empty()) continue;
    auto& body = sections[section];
    if (!body.empty()) body += '\n';
    body += l;
  }
  auto take = [&](const std::string& key) -> std::string {
    auto it = sections.find(key);
    if (it == sections.end()) throw SchemaError("template is missing section [" + key + "]");
    return it->second;
  };
  if (set.version <= 0) throw SchemaError("template is missing '# template-version:'");
  set.preamble = take("preamble");
  for (auto k : kAllActionKinds) {
    set.action_docs[k] = take("action." + std::string(to_string(k)));
    set.labor_directives[k] = take("labor." + std::string(to_string(k)));
  }
  set.think_doc = take("think");
  set.plan_instruction = take("plan");
  set.selector_instruction = take("selector");
  return set;
}

const TemplateSet& TemplateSet::builtin(EnvKind env) {
  static const TemplateSet shopping = parse(detail::resource("templates/shopping.txt"));
  static const TemplateSet wikiqa = parse(detail::resource("templates/wikiqa.txt"));
  return env == EnvKind::shopping ? shopping : wikiqa;
}

std::vector<FewshotExample> parse_fewshot(std::string_view json_text) {
  using nlohmann::json;
  std::vector<FewshotExample> out;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("fewshot file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != 1) throw SchemaError("unsupported fewshot schema_version");
    const EnvKind env = parse_env_kind(doc.at("env_kind").get<std::string>());
    const ActionSet grammar = action_grammar(env);
    for (const auto& ex : doc.at("examples")) {
      FewshotExample example;
      example.env_kind = env;
      example.instruction = ex.at("instruction").get<std::string>();
      if (ex.contains("plan")) example.plan = ex["plan"].get<std::string>();
      for (const auto& st : ex.at("steps")) {
        FewshotStep step;
        if (st.contains("thought")) step.thought = st["thought"].get<std::string>();
        const std::string text = st.at("action").get<std::string>();
        const auto open = text.find('[');
        const auto kind = parse_action_kind(text.substr(0, open));
        if (!kind || open == std::string::npos || text.back() != ']') {
          throw SchemaError("fewshot action '" + text + "' is malformed");
        }
        if (!grammar.contains(*kind)) {
          throw ValidationError("fewshot action '" + text + "' is outside the " +
                                std::string(to_string(env)) + " grammar");
        }
        step.action = make_action(*kind, text.substr(open + 1, text.size() - open - 2));
        step.observation = st.at("observation").get<std::string>();
        example.steps.push_back(std::move(step));
      }
      out.push_back(std::move(example));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("fewshot file: ") + e.what());
  }
  return out;
}

const std::vector<FewshotExample>& builtin_fewshot(EnvKind env) {
  static const auto shopping = parse_fewshot(detail::resource("fewshot/shopping.json"));
  static const auto wikiqa = parse_fewshot(detail::resource("fewshot/wikiqa.json"));
  return env == EnvKind::shopping ? shopping : wikiqa;
}

std::string render_record(const Record& record) {
  switch (record.kind) {
    case RecordKind::plan:
      return line(markers::kPlan, record.content);
    case RecordKind::thought:
      return line(markers::kThought, record.content);
    case RecordKind::action:
      return line(markers::kAction, record.action ? record.action->to_text() : record.content);
    case RecordKind::observation:
      return line(markers::kObservation, record.content);
    case RecordKind::parse_failure:
      return line(markers::kInvalid, record.content);
  }
  return {};
}

std::string truncate_memory(const Trajectory& trajectory, std::size_t budget,
                            const TokenEstimator& estimator) {
  std::string plan;
  std::vector<Unit> units;
  bool open = false;
  for (const auto& r : trajectory.records()) {
    if (r.kind == RecordKind::plan) {
      plan = render_record(r);
      continue;
    }
    if (r.kind == RecordKind::observation && open) {
      units.back().text += render_record(r);
      open = false;
      continue;
    }
    units.push_back({render_record(r)});
    open = r.kind == RecordKind::action || r.kind == RecordKind::parse_failure;
  }

  if (!plan.empty() && estimator.count(plan) > budget) return {};

  // Grow the retained suffix from the newest unit backwards until the next one no longer fits.
  std::string suffix;
  for (std::size_t i = units.size(); i-- > 0;) {
    std::string candidate = units[i].text + suffix;
    if (estimator.count(plan + candidate) > budget) break;
    suffix = std::move(candidate);
  }
  return plan + suffix;
}

PromptBuilder::PromptBuilder(EnvKind env, TemplateSet templates, std::vector<FewshotExample> examples,
                             const TokenEstimator& estimator)
    : env_(env), templates_(std::move(templates)), examples_(std::move(examples)), estimator_(&estimator) {
  for (const auto& ex : examples_) {
    if (ex.env_kind != env_) throw ConfigError("fewshot example for the wrong environment");
  }
}

const PromptBuilder& PromptBuilder::builtin(EnvKind env) {
  static const PromptBuilder shopping(EnvKind::shopping, TemplateSet::builtin(EnvKind::shopping),
                                      builtin_fewshot(EnvKind::shopping));
  static const PromptBuilder wikiqa(EnvKind::wikiqa, TemplateSet::builtin(EnvKind::wikiqa),
                                    builtin_fewshot(EnvKind::wikiqa));
  return env == EnvKind::shopping ? shopping : wikiqa;
}

std::string PromptBuilder::render_fewshot(const LAAConfig& config, std::optional<ActionKind>) const {
  if (!config.fewshot) return {};
  if (examples_.empty()) throw ConfigError("fewshot architecture but no fewshot examples are loaded");
  std::string out(markers::kExamples);
  out += '\n';
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    const auto& ex = examples_[i];
    if (i) out += '\n';
    out += line(markers::kInstruction, ex.instruction);
    if (config.plan && ex.plan) out += line(markers::kPlan, *ex.plan);
    for (const auto& step : ex.steps) {
      if (config.think && step.thought) out += line(markers::kThought, *step.thought);
      out += line(markers::kAction, step.action.to_text());
      out += line(markers::kObservation, step.observation);
    }
  }
  return out;
}

std::string PromptBuilder::assemble(PromptTemplate tmpl, const Trajectory& trajectory,
                                    std::size_t budget) const {
  tmpl.memory_block.clear();
  const std::string bare = tmpl.render();
  const std::size_t overhead = estimator_->count(bare);
  if (overhead > budget) {
    throw BudgetError("prompt overhead of " + std::to_string(overhead) +
                      " tokens does not fit the budget of " + std::to_string(budget));
  }
  std::size_t memory_budget = budget - overhead;
  while (true) {
    tmpl.memory_block = truncate_memory(trajectory, memory_budget, *estimator_);
    std::string prompt = tmpl.render();
    const std::size_t used = estimator_->count(prompt);
    if (used <= budget) return prompt;
    // Only reachable with an estimator that is not subadditive.
    const std::size_t over = used - budget;
    memory_budget = memory_budget > over ? memory_budget - over : 0;
  }
}

std::string PromptBuilder::action_prompt(const Task& task, const Trajectory& trajectory,
                                         const LAAConfig& config, std::size_t budget) const {
  PromptTemplate tmpl;
  tmpl.preamble = templates_.preamble;
  for (auto k : config.allowed_action_kinds.kinds()) tmpl.action_docs.push_back(templates_.action_docs.at(k));
  tmpl.fewshot_block = render_fewshot(config, std::nullopt);
  tmpl.instruction = task.instruction;
  tmpl.cue = std::string(markers::kActionCue);
  return assemble(std::move(tmpl), trajectory, budget);
}

std::string PromptBuilder::think_prompt(const Task& task, const Trajectory& trajectory,
                                        const LAAConfig& config, std::size_t budget) const {
  if (!config.think) throw ContractError("think prompt requested for a config without the think flow");
  PromptTemplate tmpl;
  tmpl.preamble = templates_.preamble;
  for (auto k : config.allowed_action_kinds.kinds()) tmpl.action_docs.push_back(templates_.action_docs.at(k));
  tmpl.action_docs.push_back(templates_.think_doc);
  tmpl.fewshot_block = render_fewshot(config, std::nullopt);
  tmpl.instruction = task.instruction;
  tmpl.cue = std::string(markers::kThinkCue);
  return assemble(std::move(tmpl), trajectory, budget);
}

std::string PromptBuilder::labor_prompt(const Task& task, const Trajectory& trajectory,
                                        const LAAConfig& config, ActionKind specialty,
                                        std::size_t budget) const {
  PromptTemplate tmpl;
  tmpl.preamble = templates_.preamble;
  tmpl.action_docs.push_back(templates_.action_docs.at(specialty));
  tmpl.directive = templates_.labor_directives.at(specialty);
  tmpl.fewshot_block = render_fewshot(config, specialty);
  tmpl.instruction = task.instruction;
  tmpl.cue = std::string(markers::kActionCue);
  return assemble(std::move(tmpl), trajectory, budget);
}

std::string PromptBuilder::plan_prompt(const Task& task, std::size_t budget) const {
  return render_plan_prompt(templates_, *estimator_, task, examples_, budget);
}

std::string PromptBuilder::selector_prompt(const Task& task,
                                           const std::vector<std::pair<std::string, ActionKind>>& pool,
                                           std::string_view last_observation, std::size_t budget) const {
  PromptTemplate tmpl;
  tmpl.preamble = templates_.selector_instruction;
  for (const auto& [agent_id, specialty] : pool) {
    tmpl.action_docs.push_back(agent_id + ": " + templates_.action_docs.at(specialty));
  }
  tmpl.instruction = task.instruction;
  tmpl.cue = std::string(markers::kSelectCue);
  const std::size_t overhead = estimator_->count(tmpl.render());
  if (overhead > budget) throw BudgetError("selector prompt does not fit the budget");

  // The observation is the only variable part; cut it from the front to fit.
  std::string obs(last_observation);
  while (true) {
    tmpl.memory_block = obs.empty() ? std::string{} : line(markers::kObservation, obs);
    std::string prompt = tmpl.render();
    if (estimator_->count(prompt) <= budget) return prompt;
    obs.erase(0, std::max<std::size_t>(1, obs.size() / 4));
  }
}

std::string build_action_prompt(const Task& task, const Trajectory& trajectory, const LAAConfig& config,
                                std::size_t budget) {
  return PromptBuilder::builtin(task.env_kind).action_prompt(task, trajectory, config, budget);
}

std::string build_think_prompt(const Task& task, const Trajectory& trajectory, const LAAConfig& config,
                               std::size_t budget) {
  return PromptBuilder::builtin(task.env_kind).think_prompt(task, trajectory, config, budget);
}

std::string build_plan_prompt(const Task& task, const std::vector<FewshotExample>& examples,
                              std::size_t budget) {
  return render_plan_prompt(TemplateSet::builtin(task.env_kind), default_estimator(), task, examples, budget);
}

}  // namespace bolaa
