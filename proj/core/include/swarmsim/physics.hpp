#pragma once

#include "swarmsim/controller.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/world.hpp"

namespace swarmsim {

/// Timing and contact-resolution constants for one control cycle.
struct StepConfig {
    double control_dt = 0.1;       // seconds per control cycle
    int substeps_per_cycle = 10;   // physics updates per control cycle
    double axle_length = 5.3;      // e-puck wheelbase, cm
    double max_speed = kMaxWheelSpeed;
    int collision_iterations = 64; // positional pass cap per substep

    bool operator==(const StepConfig&) const = default;
};

/// Exact closed-form unicycle update: straight translation when the wheels
/// match, otherwise rotation about the instantaneous center of curvature.
/// Orientation is renormalized to [-pi, pi). Throws std::invalid_argument on
/// non-finite inputs.
Pose integrate_differential_drive(const Pose& pose, double vl, double vr, double axle, double dt);

/// Iterative positional correction: separates overlapping robot-robot pairs
/// (split equally) and robot-bollard pairs (robot takes the full correction)
/// in ascending index order, then clamps robots inside the arena walls.
/// Passes repeat until the worst remaining penetration falls within half of
/// kPenetrationTolerance (or the pass cap is hit, whichever comes first).
/// Zero restitution; orientation untouched.
void resolve_collisions(World& world, const StepConfig& cfg);

/// One full control cycle: sense every robot against the pre-step snapshot,
/// set wheel speeds from the controller, run the physics substeps, and
/// increment the tick. Deterministic: identical inputs give identical worlds.
void step_control_cycle(World& world, const ControllerParams& controller, const StepConfig& cfg);

}  // namespace swarmsim
