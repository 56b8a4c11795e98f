#include "swarmsim/sensing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "swarmsim/world.hpp"

namespace swarmsim {

namespace {

// Smallest ray parameter t > min_t at which the ray origin + t*dir crosses the
// circle (center, radius). Negative result means no acceptable hit. Tangency
// (zero discriminant) is a hit.
double ray_circle_hit(Vec2 origin, Vec2 dir, Vec2 center, double radius, double min_t) {
    const Vec2 oc = center - origin;
    const double b = dot(dir, oc);
    const double c = norm_sq(oc) - radius * radius;
    const double disc = b * b - c;
    if (disc < 0.0) return -1.0;
    const double s = std::sqrt(disc);
    const double t_near = b - s;
    if (t_near > min_t) return t_near;
    const double t_far = b + s;
    if (t_far > min_t) return t_far;
    return -1.0;
}

}  // namespace

SensorReading line_of_sight(const World& world, int robot_id) {
    if (robot_id < 0 || static_cast<size_t>(robot_id) >= world.robots.size()) {
        throw std::out_of_range("line_of_sight: robot id " + std::to_string(robot_id));
    }
    const RobotBody& self = world.robots[robot_id];
    const Vec2 origin = self.pose.position;
    const Vec2 dir{std::cos(self.pose.orientation), std::sin(self.pose.orientation)};
    const double min_t = self.radius;  // hits accepted strictly beyond own rim

    double best_t = std::numeric_limits<double>::infinity();
    int best_group = -1;

    for (const RobotBody& other : world.robots) {
        if (other.id == self.id) continue;
        const double t = ray_circle_hit(origin, dir, other.pose.position, other.radius, min_t);
        if (t >= 0.0 && t < best_t) {
            best_t = t;
            best_group = other.group;
        }
    }
    for (const Bollard& b : world.bollards) {
        const double t = ray_circle_hit(origin, dir, b.position, b.radius, min_t);
        if (t >= 0.0 && t < best_t) {
            best_t = t;
            best_group = b.group;
        }
    }

    if (best_group < 0) return SensorReading::Nothing;
    return best_group == self.group ? SensorReading::SameGroup : SensorReading::OtherGroup;
}

std::vector<SensorReading> sense_all(const World& world) {
    std::vector<SensorReading> readings;
    readings.reserve(world.robots.size());
    for (size_t i = 0; i < world.robots.size(); ++i) {
        readings.push_back(line_of_sight(world, static_cast<int>(i)));
    }
    return readings;
}

}  // namespace swarmsim
