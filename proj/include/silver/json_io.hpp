#pragma once

#include <json.hpp>

#include "silver/filtering.hpp"

namespace silver {

nlohmann::ordered_json config_to_json(const FilterConfig& cfg);

}  // namespace silver
