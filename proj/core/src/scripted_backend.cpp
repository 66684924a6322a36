#include <json.hpp>

#include "bolaa/errors.hpp"
#include "bolaa/llm.hpp"
#include "text_util.hpp"

namespace bolaa {

namespace {

constexpr std::string_view kObservationSlot = "{last_observation}";

bool rule_matches(const ScriptedRule& rule, const std::regex* compiled, const std::string& prompt,
                  const std::string& excerpt) {
  const std::string& subject = rule.scope == MatchScope::prompt ? prompt : excerpt;
  switch (rule.kind) {
    case MatchKind::substring:
      return subject.find(rule.pattern) != std::string::npos;
    case MatchKind::suffix: {
      const std::string_view trimmed = detail::trim(subject);
      return trimmed.size() >= rule.pattern.size() &&
             trimmed.substr(trimmed.size() - rule.pattern.size()) == rule.pattern;
    }
    case MatchKind::regex:
      return std::regex_search(subject, *compiled);
  }
  return false;
}

std::string expand(const std::string& response, const std::string& excerpt) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = response.find(kObservationSlot, pos);
    if (hit == std::string::npos) break;
    out.append(response, pos, hit - pos);
    out += excerpt;
    pos = hit + kObservationSlot.size();
  }
  out.append(response, pos, std::string::npos);
  return out;
}

Completion respond(const ScriptedPolicy& policy, const std::vector<const std::regex*>& compiled,
                   const std::string& prompt, const std::string& backend_id) {
  const std::string excerpt = last_observation_excerpt(prompt);
  std::string text = policy.default_response;
  for (std::size_t i = 0; i < policy.rules.size(); ++i) {
    if (rule_matches(policy.rules[i], compiled[i], prompt, excerpt)) {
      text = expand(policy.rules[i].response, excerpt);
      break;
    }
  }
  Completion c;
  c.prompt_tokens = estimate_tokens(prompt);
  c.completion_tokens = estimate_tokens(text);
  c.text = std::move(text);
  c.backend_id = backend_id;
  return c;
}

std::unique_ptr<std::regex> compile(const ScriptedRule& rule) {
  if (rule.kind != MatchKind::regex) return nullptr;
  try {
    return std::make_unique<std::regex>(rule.pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw ConfigError("scripted rule has an invalid pattern '" + rule.pattern + "': " + e.what());
  }
}

}  // namespace

ScriptedPolicy parse_scripted_policy(std::string_view json_text) {
  using nlohmann::json;
  ScriptedPolicy policy;
  try {
    const json doc = json::parse(json_text);
    policy.default_response = doc.value("default", std::string{});
    for (const auto& r : doc.value("rules", json::array())) {
      ScriptedRule rule;
      const std::string scope = r.value("scope", std::string{"prompt"});
      if (scope == "prompt") {
        rule.scope = MatchScope::prompt;
      } else if (scope == "last_observation") {
        rule.scope = MatchScope::last_observation;
      } else {
        throw ConfigError("unknown rule scope '" + scope + "'");
      }
      const std::string match = r.value("match", std::string{"substring"});
      if (match == "substring") {
        rule.kind = MatchKind::substring;
      } else if (match == "suffix") {
        rule.kind = MatchKind::suffix;
      } else if (match == "regex") {
        rule.kind = MatchKind::regex;
      } else {
        throw ConfigError("unknown rule match kind '" + match + "'");
      }
      rule.pattern = r.at("pattern").get<std::string>();
      rule.response = r.at("response").get<std::string>();
      policy.rules.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid scripted policy: ") + e.what());
  }
  return policy;
}

Completion scripted_generate(const ScriptedPolicy& policy, const std::string& prompt) {
  std::vector<std::unique_ptr<std::regex>> owned;
  std::vector<const std::regex*> compiled;
  for (const auto& rule : policy.rules) {
    owned.push_back(compile(rule));
    compiled.push_back(owned.back().get());
  }
  return respond(policy, compiled, prompt, "scripted");
}

ScriptedBackend::ScriptedBackend(ScriptedPolicy policy, std::string id, std::size_t context_limit)
    : policy_(std::move(policy)), id_(std::move(id)), context_limit_(context_limit) {
  for (const auto& rule : policy_.rules) compiled_.push_back(compile(rule));
}

Completion ScriptedBackend::do_generate(const std::string& prompt, const GenerationParams&) {
  std::vector<const std::regex*> compiled;
  compiled.reserve(compiled_.size());
  for (const auto& r : compiled_) compiled.push_back(r.get());
  return respond(policy_, compiled, prompt, id_);
}

}  // namespace bolaa
