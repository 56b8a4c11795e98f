#include "swarmsim/world.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace swarmsim {

std::vector<int> robots_of_group(const World& world, int k) {
    if (k < 0 || k >= world.group_count) {
        throw std::out_of_range("robots_of_group: group index " + std::to_string(k) +
                                " outside [0, " + std::to_string(world.group_count) + ")");
    }
    std::vector<int> out;
    for (const RobotBody& r : world.robots) {
        if (r.group == k) out.push_back(r.id);
    }
    return out;
}

double overlap(Vec2 pa, double ra, Vec2 pb, double rb) {
    return (ra + rb) - distance(pa, pb);
}

double max_pairwise_penetration(const World& world) {
    double worst = -std::numeric_limits<double>::infinity();
    const auto& robots = world.robots;
    for (size_t i = 0; i < robots.size(); ++i) {
        for (size_t j = i + 1; j < robots.size(); ++j) {
            double d = overlap(robots[i].pose.position, robots[i].radius,
                               robots[j].pose.position, robots[j].radius);
            if (d > worst) worst = d;
        }
        for (const Bollard& b : world.bollards) {
            double d = overlap(robots[i].pose.position, robots[i].radius, b.position, b.radius);
            if (d > worst) worst = d;
        }
    }
    return worst;
}

bool all_robots_inside_arena(const World& world) {
    const double side = world.arena.side;
    for (const RobotBody& r : world.robots) {
        const Vec2 p = r.pose.position;
        if (p.x < r.radius || p.x > side - r.radius) return false;
        if (p.y < r.radius || p.y > side - r.radius) return false;
    }
    return true;
}

bool world_is_finite(const World& world) {
    if (!std::isfinite(world.arena.side)) return false;
    for (const RobotBody& r : world.robots) {
        if (!is_finite(r.pose.position) || !std::isfinite(r.pose.orientation)) return false;
        if (!std::isfinite(r.wheel_speeds.left) || !std::isfinite(r.wheel_speeds.right)) return false;
    }
    for (const Bollard& b : world.bollards) {
        if (!is_finite(b.position)) return false;
    }
    return true;
}

}  // namespace swarmsim
