#pragma once

#include <cstdint>

#include "swarmsim/world.hpp"

namespace swarmsim {

/// One trial's scenario: group layout, arena, and the placement seed.
struct ScenarioConfig {
    int g = 3;                    // number of groups
    int n_per_group = 25;         // robots per group, r = g * n_per_group
    double arena_side = 450.0;    // cm
    bool bollards_enabled = true;
    double duration_s = 2400.0;
    uint64_t seed = 1;

    int total_robots() const { return g * n_per_group; }
    bool operator==(const ScenarioConfig&) const = default;
};

/// Minimum center-to-center slack added on top of tangency when placing robots.
constexpr double kPlacementMargin = 0.1;

/// Builds the initial world: bollards evenly spaced on the circle of radius
/// 0.4 * arena_side about the center (first bollard due east), then robots by
/// seeded rejection sampling with uniform positions and orientations.
/// Deterministic given the seed. Throws std::invalid_argument on invalid or
/// infeasible configs and std::runtime_error when rejection sampling exceeds
/// the per-robot attempt budget.
World generate_scenario(const ScenarioConfig& cfg);

}  // namespace swarmsim
