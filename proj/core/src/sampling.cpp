#include "bolaa/sampling.hpp"

#include <algorithm>
#include <limits>

#include "bolaa/errors.hpp"

namespace bolaa {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw ContractError("bounded_draw: bound must be positive");
  // Largest multiple of bound that fits; values at or above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<Task> sample_tasks(const std::vector<Task>& universe, std::size_t per_level,
                               const std::vector<int>& levels, std::uint64_t seed) {
  if (per_level == 0) throw ConfigError("per_level_count must be at least 1");
  if (levels.empty()) throw ConfigError("levels must not be empty");
  if (!std::is_sorted(levels.begin(), levels.end()) ||
      std::adjacent_find(levels.begin(), levels.end()) != levels.end()) {
    throw ConfigError("levels must be strictly ascending");
  }

  std::vector<Task> out;
  out.reserve(per_level * levels.size());
  for (int level : levels) {
    std::vector<const Task*> pool;
    for (const auto& t : universe) {
      if (task_complexity(t) == level) pool.push_back(&t);
    }
    if (pool.size() < per_level) throw ShortageError(level, pool.size(), per_level);

    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(level + 1)));
    for (std::size_t i = pool.size() - 1; i > 0; --i) {
      std::swap(pool[i], pool[bounded_draw(rng, i + 1)]);
    }
    for (std::size_t i = 0; i < per_level; ++i) out.push_back(*pool[i]);
  }
  return out;
}

}  // namespace bolaa
