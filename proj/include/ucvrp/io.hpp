#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include <json.hpp>

#include "ucvrp/instance.hpp"

namespace ucvrp::io {

using json = nlohmann::json;

// Canonical instance JSON:
//   { "name": str, "capacity": int, "demands": [int],
//     "metric": {"type": "explicit", "matrix": [[float]]}
//             | {"type": "euc2d", "coords": [[x, y]]} }
// The depot is row/column 0 (coords[0]) and has no demand entry.
json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& doc);

// TSPLIB CVRP subset: NAME, TYPE, COMMENT, DIMENSION, CAPACITY,
// EDGE_WEIGHT_TYPE in {EUC_2D, EXPLICIT} (EXPLICIT needs
// EDGE_WEIGHT_FORMAT FULL_MATRIX), NODE_COORD_SECTION,
// EDGE_WEIGHT_SECTION, DEMAND_SECTION, DEPOT_SECTION. Anything else is
// rejected with MalformedInstance. With round_euc2d the EUC_2D distances
// are rounded to the nearest integer as TSPLIB prescribes.
Instance parse_tsplib(std::istream& in, bool round_euc2d = false);

// Reads a .json instance, or a TSPLIB file for any other extension.
Instance load_instance(const std::filesystem::path& path,
                       bool round_euc2d = false);

void save_instance(const Instance& inst, const std::filesystem::path& path);

} // namespace ucvrp::io
