#include <doctest.h>

#include <map>
#include <set>

#include "bolaa/errors.hpp"
#include "bolaa/sampling.hpp"
#include "support.hpp"

using namespace bolaa;

namespace {

std::vector<Task> synthetic_universe(const std::map<int, int>& per_level) {
  std::vector<Task> out;
  for (const auto& [level, n] : per_level) {
    for (int i = 0; i < n; ++i) {
      Task t;
      t.id = "L" + std::to_string(level) + "-" + std::to_string(i);
      t.instruction = t.id;
      t.env_kind = EnvKind::shopping;
      ShoppingTruth truth;
      truth.target_product_id = "P";
      for (int a = 0; a < level; ++a) truth.required_attributes.insert("a" + std::to_string(a));
      t.ground_truth = truth;
      t.complexity = level;
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("10 per level over levels 1..6 of the fixture gives 60 tasks") {
  const auto& universe = builtin_tasks(EnvKind::shopping);
  const auto tasks = sample_tasks(universe, 10, {1, 2, 3, 4, 5, 6}, 7);
  REQUIRE(tasks.size() == 60);
  std::map<int, int> counts;
  std::set<std::string> ids;
  int last = 0;
  for (const auto& t : tasks) {
    ++counts[t.complexity];
    ids.insert(t.id);
    CHECK(t.complexity >= last);
    last = t.complexity;
  }
  for (int l = 1; l <= 6; ++l) CHECK(counts[l] == 10);
  CHECK(ids.size() == 60);
}

TEST_CASE("150 per level over six levels gives 900") {
  const auto universe = synthetic_universe({{1, 160}, {2, 150}, {3, 200}, {4, 151}, {5, 150}, {6, 170}});
  CHECK(sample_tasks(universe, 150, {1, 2, 3, 4, 5, 6}, 1).size() == 900);
}

TEST_CASE("an under-populated level raises a shortage naming it") {
  const auto universe = synthetic_universe({{1, 12}, {7, 3}});
  try {
    sample_tasks(universe, 10, {1, 7}, 0);
    FAIL("expected a shortage");
  } catch (const ShortageError& e) {
    CHECK(e.level() == 7);
  }
  CHECK_THROWS_AS(sample_tasks(builtin_tasks(EnvKind::shopping), 10, {7}, 0), ShortageError);
  CHECK_THROWS_AS(sample_tasks(universe, 0, {1}, 0), ConfigError);
  CHECK_THROWS_AS(sample_tasks(universe, 1, {}, 0), ConfigError);
  CHECK_THROWS_AS(sample_tasks(universe, 1, {7, 1}, 0), ConfigError);
}

TEST_CASE("sampling is a pure function of its inputs") {
  const auto universe = synthetic_universe({{1, 40}, {2, 40}, {3, 40}});
  const auto a = sample_tasks(universe, 10, {1, 2, 3}, 42);
  CHECK(a == sample_tasks(universe, 10, {1, 2, 3}, 42));
  CHECK(a != sample_tasks(universe, 10, {1, 2, 3}, 43));
  // Levels are drawn independently: adding a level leaves the others alone.
  const auto b = sample_tasks(universe, 10, {1, 3}, 42);
  CHECK(std::vector<Task>(a.begin(), a.begin() + 10) == std::vector<Task>(b.begin(), b.begin() + 10));
  CHECK(std::vector<Task>(a.begin() + 20, a.end()) == std::vector<Task>(b.begin() + 10, b.end()));
}

TEST_CASE("every level subset is exact on random universes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<int, int> sizes;
    for (int l = 1; l <= 4; ++l) sizes[l] = 5 + static_cast<int>(bounded_draw(rng, 20));
    const auto universe = synthetic_universe(sizes);
    const std::size_t k = 1 + bounded_draw(rng, 5);
    const auto tasks = sample_tasks(universe, k, {1, 2, 3, 4}, rng());
    std::map<int, std::size_t> counts;
    for (const auto& t : tasks) ++counts[t.complexity];
    for (int l = 1; l <= 4; ++l) CHECK(counts[l] == k);
  }
}

TEST_CASE("bounded_draw stays in range and covers it") {
  std::mt19937_64 rng(9);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = bounded_draw(rng, 7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK(bounded_draw(rng, 1) == 0);
}
