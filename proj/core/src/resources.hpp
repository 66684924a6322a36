#pragma once

#include <string_view>

namespace bolaa::detail {

// Files from data/ compiled into the library. Throws ConfigError for unknown names.
std::string_view resource(std::string_view name);

}  // namespace bolaa::detail
