#pragma once

#include <cstdint>
#include <cstddef>
#include <random>
#include <vector>

#include "bolaa/types.hpp"

namespace bolaa {

// Uniform draw in [0, bound) by rejection, so results do not depend on the
// standard library's distribution implementation.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

// Exactly `per_level` tasks for each level, without replacement. Output is in
// ascending level order and seeded-shuffled within a level. Throws
// ShortageError naming the first level with too few tasks, ConfigError for
// per_level == 0 or empty/unsorted levels.
std::vector<Task> sample_tasks(const std::vector<Task>& universe, std::size_t per_level,
                               const std::vector<int>& levels, std::uint64_t seed);

}  // namespace bolaa
