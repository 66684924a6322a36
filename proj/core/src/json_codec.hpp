#pragma once

#include <json.hpp>

#include "bolaa/catalog.hpp"
#include "bolaa/types.hpp"

// JSON shapes of the domain types. Field names here are the stable file contract.
namespace bolaa::codec {

using nlohmann::json;

json to_json(const Action& a);
Action action_from_json(const json& j);

json to_json(const Task& t);
Task task_from_json(const json& j);

json to_json(const Record& r);
Record record_from_json(const json& j);

json to_json(const EpisodeResult& r);
EpisodeResult result_from_json(const json& j);

json to_json(const LAAConfig& c);
LAAConfig config_from_json(const json& j);

json to_json(ActionSet s);
ActionSet action_set_from_json(const json& j);

json to_json(const Product& p);
Product product_from_json(const json& j);

}  // namespace bolaa::codec
