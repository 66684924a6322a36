#include "resources.hpp"

#include <string>

#include "bolaa/errors.hpp"

namespace bolaa::detail {

std::string_view embedded_resource(std::string_view name);

std::string_view resource(std::string_view name) {
  const std::string_view data = embedded_resource(name);
  if (data.empty()) throw ConfigError("no embedded resource named '" + std::string(name) + "'");
  return data;
}

}  // namespace bolaa::detail
