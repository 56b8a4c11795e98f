#include <benchmark/benchmark.h>

#include "swarmsim/controller.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/physics.hpp"
#include "swarmsim/scenario.hpp"
#include "swarmsim/sensing.hpp"
#include "swarmsim/trial.hpp"

using namespace swarmsim;

namespace {

World fresh_world(int per_group) {
  ScenarioConfig cfg;
  cfg.g = 3;
  cfg.n_per_group = per_group;
  cfg.seed = 1;
  return generate_scenario(cfg);
}

// World after five simulated minutes: clusters formed, contacts frequent.
// This is the regime the collision solver and metrics mostly see.
World settled_world(int per_group) {
  World world = fresh_world(per_group);
  const StepConfig step;
  for (int i = 0; i < 3000; ++i) step_control_cycle(world, kBestController, step);
  return world;
}

void BM_StepControlCycle(benchmark::State& state) {
  World world = fresh_world(static_cast<int>(state.range(0)));
  const StepConfig step;
  for (auto _ : state) {
    step_control_cycle(world, kBestController, step);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(world.robots.size()));
}
BENCHMARK(BM_StepControlCycle)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_LineOfSight(benchmark::State& state) {
  const World world = settled_world(25);
  int id = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(line_of_sight(world, id));
    id = (id + 1) % static_cast<int>(world.robots.size());
  }
}
BENCHMARK(BM_LineOfSight);

void BM_SenseAll(benchmark::State& state) {
  const World world = settled_world(25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sense_all(world));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(world.robots.size()));
}
BENCHMARK(BM_SenseAll)->Unit(benchmark::kMicrosecond);

void BM_ResolveCollisionsSettled(benchmark::State& state) {
  World world = settled_world(static_cast<int>(state.range(0)));
  const StepConfig step;
  for (auto _ : state) {
    resolve_collisions(world, step);
  }
}
BENCHMARK(BM_ResolveCollisionsSettled)->Arg(25)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_ClusteredProportion(benchmark::State& state) {
  const World world = settled_world(50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(clustered_proportion(world));
  }
}
BENCHMARK(BM_ClusteredProportion)->Unit(benchmark::kMicrosecond);

void BM_Measure(benchmark::State& state) {
  const World world = settled_world(50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure(world));
  }
}
BENCHMARK(BM_Measure)->Unit(benchmark::kMicrosecond);

void BM_ShortTrial(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.g = 3;
  cfg.n_per_group = 10;
  cfg.duration_s = 10.0;
  cfg.seed = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(cfg, kBestController, {}, 0));
  }
}
BENCHMARK(BM_ShortTrial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
