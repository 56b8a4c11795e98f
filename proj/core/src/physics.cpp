#include "swarmsim/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmsim/sensing.hpp"

namespace swarmsim {

Pose integrate_differential_drive(const Pose& pose, double vl, double vr, double axle, double dt) {
    if (!is_finite(pose.position) || !std::isfinite(pose.orientation) ||
        !std::isfinite(vl) || !std::isfinite(vr) || !std::isfinite(axle) || !std::isfinite(dt)) {
        throw std::invalid_argument("integrate_differential_drive: non-finite input");
    }

    const double theta = pose.orientation;
    Pose out = pose;
    if (vl == vr) {
        out.position.x += vl * dt * std::cos(theta);
        out.position.y += vl * dt * std::sin(theta);
        return out;
    }

    const double omega = (vr - vl) / axle;
    const double radius = 0.5 * axle * (vr + vl) / (vr - vl);
    const double theta_new = theta + omega * dt;

    // Rotate about the instantaneous center of curvature at signed radius.
    const double icc_x = pose.position.x - radius * std::sin(theta);
    const double icc_y = pose.position.y + radius * std::cos(theta);
    out.position.x = icc_x + radius * std::sin(theta_new);
    out.position.y = icc_y - radius * std::cos(theta_new);
    out.orientation = normalize_angle(theta_new);
    return out;
}

namespace {

// Pushes a and b apart along their center line so they end exactly tangent.
// weight_a/weight_b select how the correction splits (robot-bollard pairs put
// the whole correction on the robot). Coincident centers separate along +x.
bool separate_pair(Vec2& a, double ra, Vec2& b, double rb, double weight_a, double weight_b) {
    const Vec2 delta = b - a;
    const double d2 = norm_sq(delta);
    const double r = ra + rb;
    if (d2 >= r * r) return false;
    const double d = std::sqrt(d2);
    Vec2 dir{1.0, 0.0};
    if (d > 0.0) dir = delta * (1.0 / d);
    const double depth = r - d;
    a = a - dir * (depth * weight_a);
    b = b + dir * (depth * weight_b);
    return true;
}

}  // namespace

void resolve_collisions(World& world, const StepConfig& cfg) {
    auto& robots = world.robots;
    const size_t n = robots.size();
    const double side = world.arena.side;

    for (int pass = 0; pass < cfg.collision_iterations; ++pass) {
        bool corrected = false;

        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                corrected |= separate_pair(robots[i].pose.position, robots[i].radius,
                                           robots[j].pose.position, robots[j].radius, 0.5, 0.5);
            }
        }
        for (size_t i = 0; i < n; ++i) {
            for (const Bollard& b : world.bollards) {
                Vec2 fixed = b.position;
                corrected |= separate_pair(robots[i].pose.position, robots[i].radius,
                                           fixed, b.radius, 1.0, 0.0);
            }
        }
        for (RobotBody& r : robots) {
            Vec2& p = r.pose.position;
            const double lo_x = r.radius, hi_x = side - r.radius;
            const double lo_y = r.radius, hi_y = side - r.radius;
            const double cx = std::clamp(p.x, lo_x, hi_x);
            const double cy = std::clamp(p.y, lo_y, hi_y);
            if (cx != p.x || cy != p.y) {
                p.x = cx;
                p.y = cy;
                corrected = true;
            }
        }

        // Remaining passes would be no-ops once a pass applies no correction.
        if (!corrected) break;
        // Corrections can reintroduce overlap elsewhere; stop once the worst
        // residual sits comfortably inside the penetration budget.
        if (max_pairwise_penetration(world) <= 0.5 * kPenetrationTolerance) break;
    }
}

void step_control_cycle(World& world, const ControllerParams& controller, const StepConfig& cfg) {
    // Sense-then-act: every reading comes from the same pre-step snapshot.
    const std::vector<SensorReading> readings = sense_all(world);
    for (size_t i = 0; i < world.robots.size(); ++i) {
        world.robots[i].wheel_speeds = to_wheel_speeds(actuate(controller, readings[i]), cfg.max_speed);
    }

    const double dt = cfg.control_dt / cfg.substeps_per_cycle;
    for (int s = 0; s < cfg.substeps_per_cycle; ++s) {
        for (RobotBody& r : world.robots) {
            r.pose = integrate_differential_drive(r.pose, r.wheel_speeds.left, r.wheel_speeds.right,
                                                  cfg.axle_length, dt);
        }
        resolve_collisions(world, cfg);
    }

    world.tick += 1;
}

}  // namespace swarmsim
