#include "swarmsim/trial.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace swarmsim {

namespace {

MetricSample sample_with_known_d(const World& world, double d) {
  MetricSample s;
  s.tick = world.tick;
  s.d = d;
  s.u = second_moment(world);
  ClusterStats c = clustered_proportion(world);
  s.pc = c.pc;
  s.lc = std::move(c.lc);
  s.pc_k = std::move(c.pc_k);
  return s;
}

}  // namespace

TrialResult run_trial_world(World world, const ScenarioConfig& cfg,
                            const ControllerParams& controller, const StepConfig& step,
                            int64_t sample_every, const TrialObserver& observer) {
  if (sample_every < 0) {
    throw std::invalid_argument("run_trial: sample_every must be >= 0");
  }
  const auto wall_start = std::chrono::steady_clock::now();

  const int64_t cycles = std::llround(cfg.duration_s / step.control_dt);
  if (cycles < 1) {
    throw std::invalid_argument("run_trial: duration shorter than one control cycle");
  }

  TrialResult result;
  result.scenario = cfg;
  result.controller = controller;
  result.cycles = cycles;

  if (sample_every > 0) {
    result.series.reserve(static_cast<size_t>(cycles / sample_every + 2));
    result.series.push_back(measure(world));
  }
  if (observer) observer(world, world.tick);

  CostAccumulator cost;
  for (int64_t t = 1; t <= cycles; ++t) {
    step_control_cycle(world, controller, step);
    const double d = group_dispersion(world);
    cost.add(t, d);
    const bool retain =
        sample_every == 1 || (sample_every > 1 && (t % sample_every == 0 || t == cycles));
    if (retain) result.series.push_back(sample_with_known_d(world, d));
    if (observer) observer(world, world.tick);
  }
  result.cost = cost.total();

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

TrialResult run_trial(const ScenarioConfig& cfg, const ControllerParams& controller,
                      const StepConfig& step, int64_t sample_every,
                      const TrialObserver& observer) {
  return run_trial_world(generate_scenario(cfg), cfg, controller, step, sample_every, observer);
}

}  // namespace swarmsim
