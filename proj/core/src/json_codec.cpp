#include "json_codec.hpp"

#include "bolaa/errors.hpp"

namespace bolaa::codec {

json to_json(const Action& a) { return {{"kind", std::string(to_string(a.kind))}, {"payload", a.payload}}; }

Action action_from_json(const json& j) {
  const auto kind = parse_action_kind(j.at("kind").get<std::string>());
  if (!kind) throw ValidationError("unknown action kind " + j.at("kind").dump());
  return make_action(*kind, j.at("payload").get<std::string>());
}

json to_json(const Task& t) {
  json gt;
  if (const auto* s = std::get_if<ShoppingTruth>(&t.ground_truth)) {
    gt["target_product_id"] = s->target_product_id;
    gt["required_attributes"] = s->required_attributes;
    if (s->price_cap) gt["price_cap"] = *s->price_cap;
  } else {
    gt["gold_answer"] = std::get<WikiTruth>(t.ground_truth).gold_answer;
  }
  return {{"id", t.id},
          {"instruction", t.instruction},
          {"env_kind", std::string(to_string(t.env_kind))},
          {"complexity", t.complexity},
          {"ground_truth", std::move(gt)}};
}

Task task_from_json(const json& j) {
  Task t;
  t.id = j.at("id").get<std::string>();
  t.instruction = j.at("instruction").get<std::string>();
  t.env_kind = parse_env_kind(j.at("env_kind").get<std::string>());
  const json& gt = j.at("ground_truth");
  if (t.env_kind == EnvKind::shopping) {
    ShoppingTruth s;
    s.target_product_id = gt.at("target_product_id").get<std::string>();
    for (const auto& a : gt.at("required_attributes")) s.required_attributes.insert(a.get<std::string>());
    if (gt.contains("price_cap") && !gt["price_cap"].is_null()) s.price_cap = gt["price_cap"].get<double>();
    t.ground_truth = std::move(s);
    t.complexity = j.value("complexity", static_cast<int>(std::get<ShoppingTruth>(t.ground_truth)
                                                              .required_attributes.size()));
  } else {
    t.ground_truth = WikiTruth{gt.at("gold_answer").get<std::string>()};
    t.complexity = j.at("complexity").get<int>();
  }
  validate_task(t);
  return t;
}

json to_json(const Record& r) {
  json j = {{"kind", std::string(to_string(r.kind))}, {"content", r.content}};
  if (r.action) j["action"] = to_json(*r.action);
  j["step_index"] = r.step_index;
  if (r.agent_id) j["agent_id"] = *r.agent_id;
  return j;
}

Record record_from_json(const json& j) {
  Record r;
  r.kind = parse_record_kind(j.at("kind").get<std::string>());
  r.content = j.at("content").get<std::string>();
  if (j.contains("action")) r.action = action_from_json(j["action"]);
  r.step_index = j.at("step_index").get<std::size_t>();
  if (j.contains("agent_id")) r.agent_id = j["agent_id"].get<std::string>();
  return r;
}

json to_json(const EpisodeResult& r) {
  json j = {{"task_id", r.task_id},
            {"reward", r.reward},
            {"recall", r.recall},
            {"steps_used", r.steps_used},
            {"terminated", std::string(to_string(r.terminated))},
            {"trajectory_ref", r.trajectory_ref}};
  if (!r.abort_cause.empty()) j["abort_cause"] = r.abort_cause;
  return j;
}

EpisodeResult result_from_json(const json& j) {
  EpisodeResult r;
  r.task_id = j.at("task_id").get<std::string>();
  r.reward = j.at("reward").get<double>();
  r.recall = j.at("recall").get<int>();
  r.steps_used = j.at("steps_used").get<std::size_t>();
  r.terminated = parse_termination(j.at("terminated").get<std::string>());
  r.trajectory_ref = j.value("trajectory_ref", std::string{});
  r.abort_cause = j.value("abort_cause", std::string{});
  if (r.reward < 0.0 || r.reward > 1.0) throw ValidationError("reward outside [0, 1]");
  if (r.recall != 0 && r.recall != 1) throw ValidationError("recall must be 0 or 1");
  return r;
}

json to_json(ActionSet s) {
  json out = json::array();
  for (auto k : s.kinds()) out.push_back(std::string(to_string(k)));
  return out;
}

ActionSet action_set_from_json(const json& j) {
  ActionSet s;
  for (const auto& v : j) {
    const auto kind = parse_action_kind(v.get<std::string>());
    if (!kind) throw ValidationError("unknown action kind " + v.dump());
    s.insert(*kind);
  }
  return s;
}

json to_json(const LAAConfig& c) {
  return {{"name", c.name},
          {"fewshot", c.fewshot},
          {"think", c.think},
          {"plan", c.plan},
          {"max_steps", c.max_steps},
          {"context_limit", c.context_limit},
          {"allowed_action_kinds", to_json(c.allowed_action_kinds)}};
}

LAAConfig config_from_json(const json& j) {
  LAAConfig c;
  c.name = j.at("name").get<std::string>();
  c.fewshot = j.at("fewshot").get<bool>();
  c.think = j.at("think").get<bool>();
  c.plan = j.at("plan").get<bool>();
  c.max_steps = j.at("max_steps").get<std::size_t>();
  c.context_limit = j.at("context_limit").get<std::size_t>();
  c.allowed_action_kinds = action_set_from_json(j.at("allowed_action_kinds"));
  return c;
}

json to_json(const Product& p) {
  return {{"id", p.id},
          {"title", p.title},
          {"attributes", p.attributes},
          {"price", p.price},
          {"options", p.options},
          {"description", p.description}};
}

Product product_from_json(const json& j) {
  Product p;
  p.id = j.at("id").get<std::string>();
  p.title = j.at("title").get<std::string>();
  for (const auto& a : j.at("attributes")) p.attributes.insert(a.get<std::string>());
  p.price = j.at("price").get<double>();
  if (j.contains("options")) {
    p.options = j["options"].get<std::map<std::string, std::vector<std::string>>>();
  }
  p.description = j.value("description", std::string{});
  return p;
}

}  // namespace bolaa::codec
