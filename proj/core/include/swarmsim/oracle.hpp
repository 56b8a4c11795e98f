#pragma once

#include "swarmsim/geometry.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/sensing.hpp"
#include "swarmsim/world.hpp"

namespace swarmsim {
namespace oracle {

// Independent reference routes for cross-checking. These deliberately avoid
// the production code paths: clustering uses breadth-first search instead of
// union-find, the second moment accumulates in long double, and kinematics is
// checked against fine-step Euler integration.

/// Per-group exhaustive pairwise maximum, summed over groups.
double group_dispersion(const World& world);

/// Group-based second moment with long double accumulation throughout.
double second_moment(const World& world);

/// Largest connected component per group via breadth-first search.
ClusterStats clustered_proportion(const World& world);

/// Euler micro-integration of the unicycle model in long double state.
/// dt_micro is clamped to dt_total when larger.
Pose integrate_euler(const Pose& pose, double vl, double vr, double axle, double dt_total,
                     double dt_micro);

/// Dense ray-marching line-of-sight: walks the heading ray in fixed steps and
/// classifies the first body containing the sample point beyond the robot's
/// own radius.
SensorReading line_of_sight_raymarch(const World& world, int robot_id, double step = 0.01);

}  // namespace oracle
}  // namespace swarmsim
