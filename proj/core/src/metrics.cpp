#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "bolaa/env.hpp"
#include "text_util.hpp"

namespace bolaa {

std::string_view to_string(PageKind kind) {
  switch (kind) {
    case PageKind::search_page:
      return "search_page";
    case PageKind::results_page:
      return "results_page";
    case PageKind::item_page:
      return "item_page";
    case PageKind::done_page:
      return "done_page";
    case PageKind::wiki_passage:
      return "wiki_passage";
    case PageKind::wiki_lookup_result:
      return "wiki_lookup_result";
    case PageKind::wiki_message:
      return "wiki_message";
  }
  return "unknown";
}

std::vector<std::string> normalize_answer_tokens(std::string_view text) {
  static constexpr char kPunctuation[] = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    if (std::strchr(kPunctuation, c) != nullptr && c != '\0') continue;
    cleaned.push_back(detail::lower(c));
  }
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && cur != "a" && cur != "an" && cur != "the") tokens.push_back(cur);
    cur.clear();
  };
  for (char c : cleaned) {
    if (detail::is_space(c)) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return tokens;
}

double token_f1(std::string_view prediction, std::string_view gold) {
  const auto pred = normalize_answer_tokens(prediction);
  const auto ref = normalize_answer_tokens(gold);
  if (pred.empty() || ref.empty()) return 0.0;

  std::unordered_map<std::string, int> counts;
  for (const auto& t : ref) ++counts[t];
  std::size_t overlap = 0;
  for (const auto& t : pred) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / static_cast<double>(pred.size());
  const double recall = static_cast<double>(overlap) / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace bolaa
