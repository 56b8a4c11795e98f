#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swarmsim/controller.hpp"
#include "swarmsim/physics.hpp"

namespace swarmsim {

/// Scalability sweep: every combination of group count, per-group size and
/// bollard setting, several seeded trials each, scored at fixed checkpoints.
struct ValidationConfig {
  std::vector<int> group_counts = {3, 5};
  std::vector<int> per_group = {10, 15, 20, 25, 30};
  std::vector<int> bollard_options = {0, 1};
  double arena_side = 450.0;
  double duration_s = 2400.0;
  std::vector<int> checkpoints_s = {300, 600, 900, 1200, 1800, 2400};
  int trials_per_config = 10;
  StepConfig step;
};

struct CheckpointSample {
  int checkpoint_s = 0;
  double pc = 0.0;
  double u = 0.0;
  double d = 0.0;
};

/// One trial's checkpoint readings.
struct ValidationRow {
  int g = 0;
  int n_per_group = 0;
  bool bollards = false;
  uint64_t seed = 0;
  std::vector<CheckpointSample> checkpoints;
};

struct ValidationReport {
  ValidationConfig config;
  std::vector<ValidationRow> rows;  ///< config-major, trial-minor order
};

using ValidationProgressFn = std::function<void(int64_t trials_done, int64_t trials_total)>;

/// Runs the whole matrix. Trial i of every configuration uses base_seed + i,
/// so configurations are compared on shared initial conditions. Rows come
/// back in enumeration order (groups, then per-group size, then bollards,
/// then trial) regardless of thread scheduling. The progress callback, when
/// set, fires once per finished trial from whichever thread ran it.
ValidationReport run_validation_matrix(const ValidationConfig& cfg,
                                       const ControllerParams& controller, uint64_t base_seed,
                                       int threads = 1,
                                       const ValidationProgressFn& progress = nullptr);

/// One line per trial and checkpoint: g,n_per_group,bollards,seed,checkpoint_s,pc,u,d_cm
std::string validation_report_csv(const ValidationReport& report);

/// Mean/min/max over trials per configuration and checkpoint.
std::string validation_summary_csv(const ValidationReport& report);

}  // namespace swarmsim
