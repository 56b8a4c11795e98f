#pragma once

#include <string>

#include "swarmsim/world.hpp"

namespace swarmsim {

/// World snapshot as a JSON document with fixed field order
/// {arena_side, tick, robots:[{id, group, x, y, theta}], bollards:[{group, x, y}]}
/// and floats printed with 6 decimal digits. Identical worlds serialize to
/// identical bytes.
std::string world_to_json(const World& world);

/// Parses a snapshot produced by world_to_json (field order not required).
/// group_count is recovered from the largest group index present. Throws
/// std::invalid_argument on malformed documents.
World world_from_json(const std::string& text);

}  // namespace swarmsim
