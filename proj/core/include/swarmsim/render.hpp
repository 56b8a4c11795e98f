#pragma once

#include <array>
#include <string>

#include "swarmsim/world.hpp"

namespace swarmsim {

/// Fixed group color list; group k draws in group_palette()[k % 8].
const std::array<const char*, 8>& group_palette();

/// SVG picture of the world at 2 px per cm, y axis pointing up. Robots are
/// filled circles with a heading tick from center to rim; bollards are
/// outlined circles in their group's color; the arena is a square outline.
std::string render_svg(const World& world);

/// render_svg written to a file. Throws std::runtime_error on I/O failure.
void render_snapshot(const World& world, const std::string& path);

}  // namespace swarmsim
