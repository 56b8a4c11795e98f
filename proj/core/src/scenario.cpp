#include "swarmsim/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmsim {

namespace {

constexpr int kMaxPlacementAttempts = 100000;

void validate(const ScenarioConfig& cfg) {
    if (cfg.g < 1) throw std::invalid_argument("scenario: g must be >= 1");
    if (cfg.n_per_group < 1) throw std::invalid_argument("scenario: n_per_group must be >= 1");
    if (cfg.duration_s <= 0.0) throw std::invalid_argument("scenario: duration_s must be > 0");
    if (cfg.arena_side <= 2.0 * kRobotRadius) {
        throw std::invalid_argument("scenario: arena_side too small for one robot");
    }
    // Area sanity: r bodies of footprint (2*r_o)^2 must fit in half the arena.
    const double footprint = 2.0 * kRobotRadius;
    const double needed = static_cast<double>(cfg.total_robots()) * footprint * footprint;
    if (needed >= 0.5 * cfg.arena_side * cfg.arena_side) {
        throw std::invalid_argument("scenario: arena cannot fit " +
                                    std::to_string(cfg.total_robots()) + " robots");
    }
}

}  // namespace

World generate_scenario(const ScenarioConfig& cfg) {
    validate(cfg);

    World world;
    world.arena.side = cfg.arena_side;
    world.group_count = cfg.g;
    world.tick = 0;
    world.rng = SplitMix64(cfg.seed);

    if (cfg.bollards_enabled) {
        const Vec2 center{cfg.arena_side / 2.0, cfg.arena_side / 2.0};
        const double ring_radius = 0.4 * cfg.arena_side;
        for (int k = 0; k < cfg.g; ++k) {
            const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(cfg.g);
            Bollard b;
            b.group = k;
            b.position = {center.x + ring_radius * std::cos(angle),
                          center.y + ring_radius * std::sin(angle)};
            b.radius = kRobotRadius;
            world.bollards.push_back(b);
        }
    }

    const double lo = kRobotRadius;
    const double hi = cfg.arena_side - kRobotRadius;
    const double min_dist = 2.0 * kRobotRadius + kPlacementMargin;
    const double min_dist_sq = min_dist * min_dist;

    const int r = cfg.total_robots();
    for (int i = 0; i < r; ++i) {
        Vec2 pos;
        bool placed = false;
        for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
            pos.x = world.rng.uniform(lo, hi);
            pos.y = world.rng.uniform(lo, hi);
            bool clear = true;
            for (const RobotBody& other : world.robots) {
                if (distance_sq(pos, other.pose.position) < min_dist_sq) {
                    clear = false;
                    break;
                }
            }
            if (clear) {
                for (const Bollard& b : world.bollards) {
                    if (distance_sq(pos, b.position) < min_dist_sq) {
                        clear = false;
                        break;
                    }
                }
            }
            if (clear) {
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw std::runtime_error("scenario: placement failed for robot " + std::to_string(i) +
                                     " after " + std::to_string(kMaxPlacementAttempts) +
                                     " attempts");
        }

        RobotBody robot;
        robot.id = i;
        robot.group = i / cfg.n_per_group;
        robot.pose.position = pos;
        robot.pose.orientation = world.rng.uniform(-kPi, kPi);
        robot.radius = kRobotRadius;
        world.robots.push_back(robot);
    }

    return world;
}

}  // namespace swarmsim
