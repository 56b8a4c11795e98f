#include "swarmsim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

namespace swarmsim {

void CostAccumulator::add(int64_t t, double d) {
    if (t != last_t_ + 1) {
        throw std::logic_error("CostAccumulator: step " + std::to_string(t) +
                               " does not follow " + std::to_string(last_t_));
    }
    sum_ += static_cast<long double>(t) * static_cast<long double>(d);
    last_t_ = t;
}

namespace {

std::vector<std::vector<int>> members_by_group(const World& world) {
    if (world.group_count < 1) {
        throw std::invalid_argument("metrics: world has no groups");
    }
    std::vector<std::vector<int>> members(world.group_count);
    for (size_t i = 0; i < world.robots.size(); ++i) {
        const int g = world.robots[i].group;
        if (g < 0 || g >= world.group_count) {
            throw std::invalid_argument("metrics: robot group out of range");
        }
        members[g].push_back(static_cast<int>(i));
    }
    for (int k = 0; k < world.group_count; ++k) {
        if (members[k].empty()) {
            throw std::invalid_argument("metrics: group " + std::to_string(k) + " is empty");
        }
    }
    return members;
}

// Union-find over group-local indices, path compression plus union by size.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    int component_size(int x) { return size_[find(x)]; }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace

double group_dispersion(const World& world) {
    const auto members = members_by_group(world);
    double total = 0.0;
    for (const auto& group : members) {
        double worst_sq = 0.0;
        for (size_t a = 0; a < group.size(); ++a) {
            for (size_t b = a + 1; b < group.size(); ++b) {
                const double d2 = distance_sq(world.robots[group[a]].pose.position,
                                              world.robots[group[b]].pose.position);
                if (d2 > worst_sq) worst_sq = d2;
            }
        }
        total += std::sqrt(worst_sq);
    }
    return total;
}

double second_moment(const World& world) {
    const auto members = members_by_group(world);
    double sum = 0.0;
    for (const auto& group : members) {
        Vec2 centroid{0.0, 0.0};
        for (int i : group) centroid = centroid + world.robots[i].pose.position;
        centroid = centroid * (1.0 / static_cast<double>(group.size()));
        for (int i : group) {
            sum += distance_sq(world.robots[i].pose.position, centroid);
        }
    }
    const double r_o = kRobotRadius;
    return sum / (4.0 * r_o * r_o);
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
        UnionFind uf(static_cast<int>(group.size()));
        for (size_t a = 0; a < group.size(); ++a) {
            for (size_t b = a + 1; b < group.size(); ++b) {
                const double d2 = distance_sq(world.robots[group[a]].pose.position,
                                              world.robots[group[b]].pose.position);
                // Strict: distance exactly 4*r_o is not an edge.
                if (d2 < threshold_sq) uf.unite(static_cast<int>(a), static_cast<int>(b));
            }
        }
        int largest = 0;
        for (size_t a = 0; a < group.size(); ++a) {
            largest = std::max(largest, uf.component_size(static_cast<int>(a)));
        }
        stats.lc[k] = largest;
        stats.pc_k[k] = static_cast<double>(largest) / static_cast<double>(group.size());
        clustered_total += largest;
    }
    stats.pc = static_cast<double>(clustered_total) / static_cast<double>(world.robots.size());
    return stats;
}

MetricSample measure(const World& world) {
    MetricSample s;
    s.tick = world.tick;
    s.d = group_dispersion(world);
    s.u = second_moment(world);
    ClusterStats c = clustered_proportion(world);
    s.pc = c.pc;
    s.lc = std::move(c.lc);
    s.pc_k = std::move(c.pc_k);
    return s;
}

std::string metrics_csv(const std::vector<MetricSample>& series, int group_count,
                        double control_dt) {
    std::string out = "tick,time_s,d_cm,u,pc";
    for (int k = 1; k <= group_count; ++k) {
        out += ",lc_" + std::to_string(k);
    }
    out += "\n";

    char buf[160];
    for (const MetricSample& s : series) {
        std::snprintf(buf, sizeof(buf), "%lld,%.1f,%.6f,%.6f,%.6f",
                      static_cast<long long>(s.tick),
                      static_cast<double>(s.tick) * control_dt, s.d, s.u, s.pc);
        out += buf;
        for (int lc : s.lc) {
            out += "," + std::to_string(lc);
        }
        out += "\n";
    }
    return out;
}

}  // namespace swarmsim
