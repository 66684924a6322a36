#include "bolaa/trace.hpp"

#include <json.hpp>
#include <map>

#include "bolaa/errors.hpp"
#include "bolaa/fixtures.hpp"
#include "bolaa/prompt_markers.hpp"
#include "json_codec.hpp"

namespace bolaa {

namespace {

using nlohmann::json;

std::string sanitize(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

json header_json(const TraceHeader& h) {
  return {{"schema_version", h.schema_version},
          {"task_id", h.task_id},
          {"config_name", h.config_name},
          {"backend", h.backend},
          {"env_kind", std::string(to_string(h.env_kind))},
          {"complexity", h.complexity},
          {"seed", h.seed},
          {"config_fingerprint", h.config_fingerprint},
          {"config", json::parse(h.config_json)}};
}

TraceHeader header_from_json(const json& j) {
  TraceHeader h;
  h.schema_version = j.at("schema_version").get<int>();
  h.task_id = j.at("task_id").get<std::string>();
  h.config_name = j.at("config_name").get<std::string>();
  h.backend = j.at("backend").get<std::string>();
  h.env_kind = parse_env_kind(j.at("env_kind").get<std::string>());
  h.complexity = j.at("complexity").get<int>();
  h.seed = j.at("seed").get<std::uint64_t>();
  h.config_fingerprint = j.at("config_fingerprint").get<std::string>();
  h.config_json = j.at("config").dump();
  return h;
}

bool has_fewshot_block(std::string_view prompt) { return prompt.find(markers::kExamples) != std::string_view::npos; }

// Records consumed as steps: actions and parse failures.
bool is_step(const Record& r) { return r.kind == RecordKind::action || r.kind == RecordKind::parse_failure; }

void check_common(std::size_t max_steps, const std::vector<Record>& records, const EpisodeResult& result,
                  bool expect_plan, std::vector<std::string>& out) {
  std::size_t plans = 0;
  std::size_t steps = 0;
  for (const auto& r : records) {
    plans += r.kind == RecordKind::plan;
    steps += is_step(r);
  }
  // An episode aborted while planning legitimately has no plan.
  const bool plan_aborted = result.terminated == Termination::aborted && steps == 0 && plans == 0;
  if (expect_plan && plans != 1 && !plan_aborted) {
    out.push_back("expected exactly one plan record, found " + std::to_string(plans));
  }
  if (!expect_plan && plans != 0) out.push_back("plan records present in a config without planning");
  if (steps > max_steps) {
    out.push_back(std::to_string(steps) + " steps exceed max_steps " + std::to_string(max_steps));
  }
  if (steps != result.steps_used) {
    out.push_back("steps_used " + std::to_string(result.steps_used) + " disagrees with " + std::to_string(steps) +
                  " recorded steps");
  }
  if (const auto problem = find_trajectory_violation(records)) out.push_back(*problem);
}

}  // namespace

std::string trace_file_name(std::string_view architecture, std::string_view fingerprint, std::string_view task_id) {
  return sanitize(architecture) + "-" + sanitize(fingerprint) + "-" + sanitize(task_id) + ".trace.jsonl";
}

std::filesystem::path prompt_log_path(const std::filesystem::path& trace_path) {
  std::string name = trace_path.filename().string();
  const std::string suffix = ".trace.jsonl";
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
    name.erase(name.size() - suffix.size());
  }
  return trace_path.parent_path() / (name + ".prompts.jsonl");
}

std::string render_trace(const TraceFile& trace) {
  std::string out = header_json(trace.header).dump();
  out += '\n';
  for (const auto& r : trace.trajectory.records()) {
    out += codec::to_json(r).dump();
    out += '\n';
  }
  out += json{{"result", codec::to_json(trace.result)}}.dump();
  out += '\n';
  return out;
}

TraceFile parse_trace(std::string_view text, const std::string& label) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty()) throw TraceError(label, 1, "empty trace file");

  auto parse_line = [&](std::size_t i) {
    try {
      return json::parse(lines[i]);
    } catch (const json::exception& e) {
      throw TraceError(label, i + 1, std::string("malformed JSON: ") + e.what());
    }
  };

  TraceFile trace;
  try {
    trace.header = header_from_json(parse_line(0));
  } catch (const json::exception& e) {
    throw TraceError(label, 1, std::string("bad header: ") + e.what());
  }
  if (trace.header.schema_version != kTraceSchemaVersion) {
    throw TraceError(label, 1, "unsupported schema_version " + std::to_string(trace.header.schema_version));
  }
  trace.trajectory = Trajectory(trace.header.task_id);

  bool footer = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (footer) throw TraceError(label, i + 1, "content after the result footer");
    const json j = parse_line(i);
    try {
      if (j.contains("result")) {
        trace.result = codec::result_from_json(j["result"]);
        footer = true;
      } else {
        trace.trajectory.append(codec::record_from_json(j));
      }
    } catch (const json::exception& e) {
      throw TraceError(label, i + 1, e.what());
    } catch (const Error& e) {
      throw TraceError(label, i + 1, e.what());
    }
  }
  if (!footer) throw TraceError(label, lines.size() + 1, "missing result footer (truncated file?)");
  if (trace.result.task_id != trace.header.task_id) {
    throw TraceError(label, lines.size(), "result task_id does not match the header");
  }
  trace.trajectory.set_terminated(trace.result.terminated);
  return trace;
}

void persist_trace(const std::filesystem::path& path, const TraceFile& trace) {
  write_file_atomic(path, render_trace(trace));
}

TraceFile load_trace(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw TraceError(path.string(), 0, e.what());
  }
  return parse_trace(text, path.string());
}

std::string render_prompt_log(const std::vector<PromptLogEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    json j = {{"task_id", e.task_id}, {"step_index", e.step_index}, {"purpose", e.purpose}};
    if (e.agent_id) j["agent_id"] = *e.agent_id;
    j["prompt"] = e.prompt;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<PromptLogEntry> parse_prompt_log(std::string_view text, const std::string& label) {
  std::vector<PromptLogEntry> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      PromptLogEntry e;
      e.task_id = j.at("task_id").get<std::string>();
      e.step_index = j.at("step_index").get<std::size_t>();
      e.purpose = j.at("purpose").get<std::string>();
      if (j.contains("agent_id")) e.agent_id = j["agent_id"].get<std::string>();
      e.prompt = j.at("prompt").get<std::string>();
      out.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw TraceError(label, line_no, e.what());
    }
  }
  return out;
}

std::vector<std::string> check_solo_shape(const LAAConfig& config, const std::vector<Record>& records,
                                          const EpisodeResult& result, const std::vector<PromptLogEntry>* prompts) {
  std::vector<std::string> out;
  check_common(config.max_steps, records, result, config.plan, out);

  bool thought_pending = false;
  for (const auto& r : records) {
    if (r.kind == RecordKind::thought) {
      if (!config.think) {
        out.push_back("thought record at step " + std::to_string(r.step_index) + " in a config without think");
      }
      thought_pending = true;
    } else if (is_step(r)) {
      if (config.think && !thought_pending) {
        out.push_back("step " + std::to_string(r.step_index) + " is not preceded by a thought");
      }
      thought_pending = false;
      if (r.action && !config.allowed_action_kinds.contains(r.action->kind)) {
        out.push_back("action " + r.action->to_text() + " is outside the allowed set");
      }
    }
  }

  if (prompts) {
    for (const auto& p : *prompts) {
      if (p.purpose != "action" && p.purpose != "think") continue;
      if (has_fewshot_block(p.prompt) != config.fewshot) {
        out.push_back(p.purpose + " prompt at step " + std::to_string(p.step_index) +
                      (config.fewshot ? " lacks" : " carries") + " a fewshot block");
      }
    }
  }
  return out;
}

std::vector<std::string> check_pool_shape(const LaborPool& pool, std::size_t max_steps,
                                          const std::vector<Record>& records, const EpisodeResult& result,
                                          const std::vector<PromptLogEntry>* prompts) {
  std::vector<std::string> out;
  bool any_plan = false;
  for (const auto& a : pool.agents) any_plan = any_plan || a.config.plan;
  check_common(max_steps, records, result, any_plan, out);

  auto find_agent = [&](const std::optional<std::string>& id) -> const LaborAgentSpec* {
    if (!id) return nullptr;
    for (const auto& a : pool.agents) {
      if (a.agent_id == *id) return &a;
    }
    return nullptr;
  };

  std::optional<std::string> pending_thought_by;
  for (const auto& r : records) {
    const std::string where = " at step " + std::to_string(r.step_index);
    if (r.kind == RecordKind::observation) continue;
    const LaborAgentSpec* agent = find_agent(r.agent_id);
    if (!agent) {
      out.push_back(std::string(to_string(r.kind)) + where + " is not attributed to a pool agent");
      continue;
    }
    if (r.kind == RecordKind::thought) {
      if (!agent->config.think) out.push_back("thought" + where + " from " + agent->agent_id + " which does not think");
      pending_thought_by = agent->agent_id;
    } else if (is_step(r)) {
      if (agent->config.think && pending_thought_by != agent->agent_id) {
        out.push_back("step" + where + " by " + agent->agent_id + " is not preceded by its thought");
      }
      pending_thought_by.reset();
      if (r.action && r.action->kind != agent->specialty) {
        out.push_back("action " + r.action->to_text() + where + " is outside the specialty of " + agent->agent_id);
      }
    }
  }

  if (prompts) {
    for (const auto& p : *prompts) {
      if (p.purpose != "action" && p.purpose != "think") continue;
      const LaborAgentSpec* agent = find_agent(p.agent_id);
      if (!agent) {
        out.push_back(p.purpose + " prompt at step " + std::to_string(p.step_index) + " has no pool agent");
        continue;
      }
      if (has_fewshot_block(p.prompt) != agent->config.fewshot) {
        out.push_back(p.purpose + " prompt for " + agent->agent_id + " at step " + std::to_string(p.step_index) +
                      (agent->config.fewshot ? " lacks" : " carries") + " a fewshot block");
      }
    }
  }
  return out;
}

std::vector<std::string> check_trace_shape(const TraceFile& trace, const std::vector<PromptLogEntry>* prompts) {
  const json config = json::parse(trace.header.config_json);
  try {
    if (config.contains("pool")) {
      return check_pool_shape(parse_pool(config["pool"].dump()), config.at("max_steps").get<std::size_t>(),
                              trace.trajectory.records(), trace.result, prompts);
    }
    return check_solo_shape(codec::config_from_json(config), trace.trajectory.records(), trace.result, prompts);
  } catch (const json::exception& e) {
    return {std::string("header config is unreadable: ") + e.what()};
  }
}

}  // namespace bolaa
