#include "bolaa/wiki_env.hpp"

#include <algorithm>
#include <set>

#include "bolaa/errors.hpp"
#include "text_util.hpp"

namespace bolaa {

namespace {

std::string normalize_title(std::string_view text) {
  return detail::join(detail::alnum_terms(text), " ");
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::set<std::string> sa(a.begin(), a.end());
  const std::set<std::string> sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& t : sa) inter += sb.count(t);
  return static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
}

bool contains_icase(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  return detail::to_lower(haystack).find(detail::to_lower(needle)) != std::string::npos;
}

Observation message(std::string text) { return Observation{PageKind::wiki_message, std::move(text), {}}; }

}  // namespace

Corpus::Corpus(std::map<std::string, std::vector<Paragraph>> pages) : pages_(std::move(pages)) {
  for (const auto& [title, paragraphs] : pages_) {
    if (paragraphs.empty() || paragraphs.front().empty()) {
      throw ValidationError("wiki page '" + title + "' has no text");
    }
    if (!normalized_.emplace(normalize_title(title), title).second) {
      throw ValidationError("wiki titles collide after normalization: '" + title + "'");
    }
  }
}

std::optional<std::string> Corpus::resolve(std::string_view entity) const {
  auto it = normalized_.find(normalize_title(entity));
  if (it == normalized_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Corpus::similar_titles(std::string_view entity, std::size_t limit) const {
  const auto query = detail::alnum_terms(entity);
  std::vector<std::pair<double, std::string>> scored;
  for (const auto& [title, _] : pages_) {
    const double s = jaccard(query, detail::alnum_terms(title));
    if (s > 0.0) scored.emplace_back(s, title);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < limit; ++i) out.push_back(scored[i].second);
  return out;
}

WikiEnv::WikiEnv(std::shared_ptr<const Corpus> corpus) : corpus_(std::move(corpus)) {
  if (!corpus_) throw ConfigError("wiki environment needs a corpus");
}

Observation WikiEnv::reset(const Task& task) {
  if (task.env_kind != EnvKind::wikiqa) throw ContractError("wiki environment given a shopping task");
  validate_task(task);
  task_ = task;
  state_ = WikiState{};
  return message("Question: " + task.instruction);
}

StepOutcome WikiEnv::step(const Action& action) {
  if (!task_) throw ContractError("step before reset");
  if (done()) throw ContractError("step after the episode finished");
  if (!grammar().contains(action.kind)) {
    throw ContractError("action " + action.to_text() + " is outside the wikiqa grammar");
  }

  StepOutcome out;
  switch (action.kind) {
    case ActionKind::search: {
      if (auto title = corpus_->resolve(action.payload)) {
        const auto& paragraphs = corpus_->pages().at(*title);
        state_.page = *title;
        state_.sentences.clear();
        for (const auto& p : paragraphs) state_.sentences.insert(state_.sentences.end(), p.begin(), p.end());
        state_.lookup_keyword.clear();
        state_.lookup_cursor = 0;
        out.observation = Observation{PageKind::wiki_passage, detail::join(paragraphs.front(), " "), {}};
      } else {
        const auto similar = corpus_->similar_titles(action.payload, 5);
        std::string text = "Could not find [" + action.payload + "].";
        if (!similar.empty()) {
          text += " Similar: [";
          text += detail::join(similar, ", ");
          text += "].";
        }
        out.observation = message(std::move(text));
      }
      break;
    }
    case ActionKind::lookup: {
      if (!state_.page) {
        out.observation = message("No passage is open. Search for an entity before using lookup.");
        break;
      }
      if (!detail::iequals(state_.lookup_keyword, action.payload)) {
        state_.lookup_keyword = action.payload;
        state_.lookup_cursor = 0;
      }
      std::vector<const std::string*> hits;
      for (const auto& s : state_.sentences) {
        if (contains_icase(s, action.payload)) hits.push_back(&s);
      }
      if (hits.empty()) {
        out.observation = Observation{PageKind::wiki_lookup_result, "No more results.", {}};
        break;
      }
      const std::size_t i = state_.lookup_cursor % hits.size();
      ++state_.lookup_cursor;
      out.observation = Observation{PageKind::wiki_lookup_result,
                                    "(Result " + std::to_string(i + 1) + " / " +
                                        std::to_string(hits.size()) + ") " + *hits[i],
                                    {}};
      break;
    }
    case ActionKind::finish: {
      state_.answer = action.payload;
      out.observation = message("Episode finished.");
      out.done = true;
      out.score = score();
      break;
    }
    case ActionKind::click:
      break;
  }
  return out;
}

EpisodeScore WikiEnv::score() const {
  EpisodeScore s;
  if (task_ && state_.answer) s.reward = token_f1(*state_.answer, task_->wiki().gold_answer);
  return s;
}

}  // namespace bolaa
