#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarmsim/world.hpp"

namespace swarmsim {

/// Per-control-cycle record of every quantitative measure.
struct MetricSample {
    int64_t tick = 0;
    double d = 0.0;              // sum of per-group furthest distances, cm
    double u = 0.0;              // group-based second moment, dimensionless
    double pc = 0.0;             // proportion of clustered robots over all groups
    std::vector<int> lc;         // per-group largest connected component sizes
    std::vector<double> pc_k;    // per-group clustered proportions

    bool operator==(const MetricSample&) const = default;
};

/// Time-weighted cost sum over a run: U = sum over t of t * d(t). Accumulated
/// in extended precision, ascending t, for bit-reproducible totals.
class CostAccumulator {
public:
    /// Adds one term. t must be strictly increasing starting from 1; anything
    /// else throws std::logic_error.
    void add(int64_t t, double d);

    double total() const { return static_cast<double>(sum_); }
    int64_t steps() const { return last_t_; }

private:
    long double sum_ = 0.0L;
    int64_t last_t_ = 0;
};

/// Sum over groups of the largest pairwise distance among that group's robots.
/// Singleton groups contribute 0. Throws std::invalid_argument when a group is
/// empty.
double group_dispersion(const World& world);

/// Second moment of robots about their group centroids, normalized by 4*r_o^2.
/// Throws std::invalid_argument when a group is empty.
double second_moment(const World& world);

struct ClusterStats {
    double pc = 0.0;
    std::vector<int> lc;
    std::vector<double> pc_k;
};

/// Largest connected component per group in the proximity graph whose edges
/// join robots with center distance strictly below 4*r_o. Bollards are not
/// vertices. Throws std::invalid_argument when a group is empty.
ClusterStats clustered_proportion(const World& world);

/// All metrics for one snapshot, tagged with the world's tick.
MetricSample measure(const World& world);

/// CSV with header tick,time_s,d_cm,u,pc,lc_1..lc_g (one lc column per group).
std::string metrics_csv(const std::vector<MetricSample>& series, int group_count,
                        double control_dt);

}  // namespace swarmsim
