#pragma once

#include <vector>

namespace swarmsim {

struct World;

/// Line-of-sight classification of the first body straight ahead.
enum class SensorReading : int {
    Nothing = 0,    // only walls ahead
    SameGroup = 1,  // robot or bollard of the robot's own group
    OtherGroup = 2, // robot or bollard of a different group
};

/// Casts an infinitely thin ray from the robot's center along its heading and
/// classifies the first body hit (smallest ray parameter strictly greater than
/// the robot's own radius). Range is unbounded within the arena; exact tangency
/// counts as a hit. Throws std::out_of_range for an invalid robot id.
SensorReading line_of_sight(const World& world, int robot_id);

/// Readings for every robot, ascending id order, all taken against the same
/// immutable snapshot.
std::vector<SensorReading> sense_all(const World& world);

}  // namespace swarmsim
