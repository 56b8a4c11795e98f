#pragma once

#include <cstdint>
#include <vector>

#include "swarmsim/geometry.hpp"
#include "swarmsim/rng.hpp"

namespace swarmsim {

/// e-puck body radius, half of the 7.4 cm diameter.
constexpr double kRobotRadius = 3.7;
/// Maximum wheel speed in cm/s.
constexpr double kMaxWheelSpeed = 12.8;
/// Maximum residual pairwise penetration allowed after a completed control cycle.
constexpr double kPenetrationTolerance = 0.01;

struct WheelSpeeds {
    double left = 0.0;
    double right = 0.0;

    bool operator==(const WheelSpeeds&) const = default;
};

struct RobotBody {
    int id = 0;
    int group = 0;
    Pose pose;
    WheelSpeeds wheel_speeds;
    double radius = kRobotRadius;

    bool operator==(const RobotBody&) const = default;
};

/// Fixed landmark sensed as a robot of its group. Never moves during a trial.
struct Bollard {
    int group = 0;
    Vec2 position;
    double radius = kRobotRadius;

    bool operator==(const Bollard&) const = default;
};

/// Square arena [0, side]^2, walls are its four sides.
struct ArenaConfig {
    double side = 450.0;

    bool operator==(const ArenaConfig&) const = default;
};

/// The single mutable simulation state: arena, bodies, and the control-cycle clock.
struct World {
    ArenaConfig arena;
    std::vector<RobotBody> robots;
    std::vector<Bollard> bollards;
    int64_t tick = 0;
    int group_count = 0;
    SplitMix64 rng;

    bool operator==(const World&) const = default;
};

/// Indices of the robots in group k, ascending id order.
/// Throws std::out_of_range for k outside [0, group_count).
std::vector<int> robots_of_group(const World& world, int k);

/// Signed penetration depth (ra + rb) - |pa - pb|; positive means overlap.
double overlap(Vec2 pa, double ra, Vec2 pb, double rb);

/// Largest signed penetration depth over all robot-robot and robot-bollard
/// pairs. Negative when nothing touches (the closest pair's clearance,
/// negated); -infinity for worlds with fewer than two bodies.
double max_pairwise_penetration(const World& world);

/// True when every robot center is at least one radius from each wall.
bool all_robots_inside_arena(const World& world);

/// Finiteness check over every stored coordinate and orientation.
bool world_is_finite(const World& world);

}  // namespace swarmsim
