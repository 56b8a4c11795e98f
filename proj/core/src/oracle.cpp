#include "swarmsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace swarmsim {
namespace oracle {

namespace {

std::vector<std::vector<int>> members_by_group(const World& world) {
    if (world.group_count < 1) throw std::invalid_argument("oracle: world has no groups");
    std::vector<std::vector<int>> members(world.group_count);
    for (size_t i = 0; i < world.robots.size(); ++i) {
        members[world.robots[i].group].push_back(static_cast<int>(i));
    }
    for (const auto& g : members) {
        if (g.empty()) throw std::invalid_argument("oracle: empty group");
    }
    return members;
}

}  // namespace

double group_dispersion(const World& world) {
    const auto members = members_by_group(world);
    double total = 0.0;
    for (const auto& group : members) {
        double worst = 0.0;
        for (size_t a = 0; a < group.size(); ++a) {
            for (size_t b = a + 1; b < group.size(); ++b) {
                const double d = distance(world.robots[group[a]].pose.position,
                                          world.robots[group[b]].pose.position);
                worst = std::max(worst, d);
            }
        }
        total += worst;
    }
    return total;
}

double second_moment(const World& world) {
    const auto members = members_by_group(world);
    long double sum = 0.0L;
    for (const auto& group : members) {
        long double cx = 0.0L, cy = 0.0L;
        for (int i : group) {
            cx += static_cast<long double>(world.robots[i].pose.position.x);
            cy += static_cast<long double>(world.robots[i].pose.position.y);
        }
        cx /= static_cast<long double>(group.size());
        cy /= static_cast<long double>(group.size());
        for (int i : group) {
            const long double dx = static_cast<long double>(world.robots[i].pose.position.x) - cx;
            const long double dy = static_cast<long double>(world.robots[i].pose.position.y) - cy;
            sum += dx * dx + dy * dy;
        }
    }
    const long double r_o = static_cast<long double>(kRobotRadius);
    return static_cast<double>(sum / (4.0L * r_o * r_o));
}

ClusterStats clustered_proportion(const World& world) {
    const auto members = members_by_group(world);
    const double threshold = 4.0 * kRobotRadius;
    const double threshold_sq = threshold * threshold;

    ClusterStats stats;
    stats.lc.resize(world.group_count, 0);
    stats.pc_k.resize(world.group_count, 0.0);

    int clustered_total = 0;
    for (int k = 0; k < world.group_count; ++k) {
        const auto& group = members[k];
        const int n = static_cast<int>(group.size());

        std::vector<std::vector<int>> adj(n);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const double d2 = distance_sq(world.robots[group[a]].pose.position,
                                              world.robots[group[b]].pose.position);
                if (d2 < threshold_sq) {
                    adj[a].push_back(b);
                    adj[b].push_back(a);
                }
            }
        }

        std::vector<bool> visited(n, false);
        int largest = 0;
        for (int start = 0; start < n; ++start) {
            if (visited[start]) continue;
            int size = 0;
            std::queue<int> frontier;
            frontier.push(start);
            visited[start] = true;
            while (!frontier.empty()) {
                const int v = frontier.front();
                frontier.pop();
                ++size;
                for (int w : adj[v]) {
                    if (!visited[w]) {
                        visited[w] = true;
                        frontier.push(w);
                    }
                }
            }
            largest = std::max(largest, size);
        }

        stats.lc[k] = largest;
        stats.pc_k[k] = static_cast<double>(largest) / static_cast<double>(n);
        clustered_total += largest;
    }
    stats.pc = static_cast<double>(clustered_total) / static_cast<double>(world.robots.size());
    return stats;
}

Pose integrate_euler(const Pose& pose, double vl, double vr, double axle, double dt_total,
                     double dt_micro) {
    long double x = pose.position.x;
    long double y = pose.position.y;
    long double theta = pose.orientation;
    const long double v = (static_cast<long double>(vl) + vr) / 2.0L;
    const long double w = (static_cast<long double>(vr) - vl) / axle;

    long double remaining = dt_total;
    while (remaining > 0.0L) {
        const long double h = std::min<long double>(remaining, dt_micro);
        x += v * std::cos(theta) * h;
        y += v * std::sin(theta) * h;
        theta += w * h;
        remaining -= h;
    }

    Pose out;
    out.position.x = static_cast<double>(x);
    out.position.y = static_cast<double>(y);
    out.orientation = normalize_angle(static_cast<double>(theta));
    return out;
}

SensorReading line_of_sight_raymarch(const World& world, int robot_id, double step) {
    const RobotBody& self = world.robots[robot_id];
    const Vec2 origin = self.pose.position;
    const Vec2 dir{std::cos(self.pose.orientation), std::sin(self.pose.orientation)};
    const double side = world.arena.side;

    for (double t = step;; t += step) {
        const Vec2 p = origin + dir * t;
        if (p.x < 0.0 || p.x > side || p.y < 0.0 || p.y > side) return SensorReading::Nothing;
        if (t <= self.radius) continue;
        for (const RobotBody& other : world.robots) {
            if (other.id == self.id) continue;
            if (distance_sq(p, other.pose.position) <= other.radius * other.radius) {
                return other.group == self.group ? SensorReading::SameGroup
                                                 : SensorReading::OtherGroup;
            }
        }
        for (const Bollard& b : world.bollards) {
            if (distance_sq(p, b.position) <= b.radius * b.radius) {
                return b.group == self.group ? SensorReading::SameGroup : SensorReading::OtherGroup;
            }
        }
    }
}

}  // namespace oracle
}  // namespace swarmsim
