#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swarmsim/controller.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/physics.hpp"
#include "swarmsim/scenario.hpp"
#include "swarmsim/world.hpp"

namespace swarmsim {

/// Outcome of one simulated run.
struct TrialResult {
  ScenarioConfig scenario;
  ControllerParams controller;
  double cost = 0.0;  ///< time-weighted dispersion, summed over control cycles
  int64_t cycles = 0;
  /// Metric samples actually retained (see sample_every in run_trial).
  /// The sample at tick 0 is the initial state when retained.
  std::vector<MetricSample> series;
  double wall_seconds = 0.0;
};

/// Called with the world state at tick 0 and after every completed control
/// cycle. Used for snapshot export; keep it cheap.
using TrialObserver = std::function<void(const World&, int64_t tick)>;

/// Simulates cfg for its full duration under the given controller.
///
/// Cost accumulates every cycle in extended precision regardless of sampling.
/// sample_every selects which metric samples are retained in the result:
///   1  every cycle plus the initial state (default),
///   0  none,
///   N  initial state plus ticks divisible by N.
/// The final tick is always retained when sampling is enabled.
TrialResult run_trial(const ScenarioConfig& cfg, const ControllerParams& controller,
                      const StepConfig& step = {}, int64_t sample_every = 1,
                      const TrialObserver& observer = nullptr);

/// Same, but starting from an existing world (tick 0 expected).
TrialResult run_trial_world(World world, const ScenarioConfig& cfg,
                            const ControllerParams& controller, const StepConfig& step = {},
                            int64_t sample_every = 1, const TrialObserver& observer = nullptr);

}  // namespace swarmsim
