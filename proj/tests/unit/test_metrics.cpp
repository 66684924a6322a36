#include <doctest.h>

#include <map>
#include <random>

#include "bolaa/env.hpp"

using namespace bolaa;

namespace {

// Hand-written F1 for plain lowercase, punctuation-free inputs.
double plain_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  if (pred.empty() || gold.empty()) return 0.0;
  std::map<std::string, int> g;
  for (const auto& t : gold) ++g[t];
  int overlap = 0;
  for (const auto& t : pred) {
    if (g[t] > 0) {
      --g[t];
      ++overlap;
    }
  }
  if (!overlap) return 0.0;
  const double p = double(overlap) / double(pred.size());
  const double r = double(overlap) / double(gold.size());
  return 2 * p * r / (p + r);
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& t : v) s += (s.empty() ? "" : " ") + t;
  return s;
}

}  // namespace

TEST_CASE("token_f1 examples") {
  CHECK(token_f1("Barack Obama", "Barack Obama") == 1.0);
  CHECK(token_f1("Obama", "Barack Obama") == doctest::Approx(0.6667).epsilon(1e-4));
  CHECK(token_f1("Obama", "Barack Obama") == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(token_f1("", "Paris") == 0.0);
  CHECK(token_f1("The Paris!", "paris") == 1.0);
  CHECK(token_f1("the", "a") == 0.0);
}

TEST_CASE("normalization drops punctuation and articles") {
  CHECK(normalize_answer_tokens("The U.S.A., an Empire!") == std::vector<std::string>{"usa", "empire"});
  CHECK(normalize_answer_tokens("  A  ").empty());
  CHECK(normalize_answer_tokens("Theory") == std::vector<std::string>{"theory"});
}

TEST_CASE("token_f1 properties on random token bags") {
  const std::vector<std::string> vocab{"red", "blue", "paris", "france", "x", "y", "the", "an"};
  std::mt19937 rng(31);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::string> a, b;
    for (int j = 0, n = 1 + int(rng() % 6); j < n; ++j) a.push_back(vocab[rng() % vocab.size()]);
    for (int j = 0, n = 1 + int(rng() % 6); j < n; ++j) b.push_back(vocab[rng() % vocab.size()]);
    const std::string sa = join(a), sb = join(b);
    const double f = token_f1(sa, sb);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(f == doctest::Approx(token_f1(sb, sa)).epsilon(1e-12));
    CHECK(f == doctest::Approx(plain_f1(normalize_answer_tokens(sa), normalize_answer_tokens(sb))).epsilon(1e-12));
    if (!normalize_answer_tokens(sa).empty()) CHECK(token_f1(sa, sa) == 1.0);
  }
}
