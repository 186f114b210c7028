#pragma once

#include "json.hpp"

#include "rih/instance.hpp"
#include "rih/lattice.hpp"
#include "rih/rules.hpp"
#include "rih/search.hpp"
#include "rih/solver.hpp"
#include "rih/tiling.hpp"

namespace rih {

using Json = nlohmann::json;

Json to_json(const LatticeSpec& s);
LatticeSpec lattice_from_json(const Json& j);

/// Short display name "<colour><number>", e.g. "r0", "y2".
std::string tile_name(const Tile& t);
Tile tile_from_name(const std::string& s);

/// {"spec": {...}, "copies": [[[colour, number], ...], [...]]}, sites in lexicographic order.
Json to_json(const Tiling& t);
Tiling tiling_from_json(const Json& j);

Json to_json(const ClassificationFlags& f);
Json to_json(const ClassicalEnergy& e);
Json to_json(const SectorEnergy& e);
Json to_json(const EnergyReport& r, bool with_records = true);

Json to_json(const TileRuleSet& rs);
TileRuleSet ruleset_from_json(const Json& j);
Json to_json(const GridTiling& g, const TileRuleSet& rs);
GridTiling grid_from_json(const Json& j, const TileRuleSet& rs);

Json to_json(const InstanceEncoding& e);

}  // namespace rih
