#include "bolaa/llm.hpp"

#include <algorithm>
#include <array>

#include "bolaa/errors.hpp"
#include "bolaa/prompt_markers.hpp"
#include "text_util.hpp"

namespace bolaa {

const TokenEstimator& default_estimator() {
  static const CharQuarterEstimator estimator;
  return estimator;
}

Completion Backend::generate(const std::string& prompt, const GenerationParams& params) {
  if (prompt.empty()) throw ContractError("generate: prompt is empty");
  const std::size_t tokens = estimate_tokens(prompt);
  if (tokens > context_limit()) {
    throw ContextOverflowError("prompt estimate " + std::to_string(tokens) +
                               " tokens exceeds context limit " + std::to_string(context_limit()) +
                               " of backend " + id());
  }
  return do_generate(prompt, params);
}

std::string last_observation_excerpt(std::string_view prompt) {
  std::size_t region = prompt.rfind(markers::kEpisode);
  if (region == std::string_view::npos) region = 0;

  std::string label = "\n" + std::string(markers::kObservation);
  const std::size_t at = prompt.rfind(label);
  if (at == std::string_view::npos || at < region) return {};

  std::size_t begin = at + label.size();
  const std::array<std::string_view, 7> terminators{markers::kThought,   markers::kAction,
                                                    markers::kPlan,      markers::kInvalid,
                                                    markers::kThinkCue,  markers::kSelectCue,
                                                    markers::kObservation};
  std::size_t end = prompt.size();
  for (auto t : terminators) {
    std::string needle = "\n" + std::string(t);
    const std::size_t pos = prompt.find(needle, begin);
    if (pos != std::string_view::npos) end = std::min(end, pos);
  }
  return std::string(detail::trim(prompt.substr(begin, end - begin)));
}

}  // namespace bolaa
