#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swarmsim/controller.hpp"
#include "swarmsim/physics.hpp"
#include "swarmsim/scenario.hpp"

namespace swarmsim {

/// The sweep axis used when none is given: -1.0, -0.9, ..., 1.0 (21 values).
std::vector<double> default_axis_values();

/// Sweep definition. Both swept parameters range over the same axis_values
/// list; the first four controller entries stay fixed.
struct GridSpec {
  std::array<double, 4> fixed_prefix = kFixedPrefix;
  std::vector<double> axis_values = default_axis_values();
  int runs_per_cell = 30;
  /// Scenario template. Its seed field is ignored; run j of every cell uses
  /// base_seed + j so all cells see the same initial configurations.
  ScenarioConfig scenario;
  StepConfig step;
};

struct HeatmapCell {
  double vl2 = 0.0;
  double vr2 = 0.0;
  std::vector<double> costs;  ///< per-run cost, in run order
  double mean_cost = 0.0;
  double ln_mean_cost = 0.0;
};

struct GridIoOptions {
  /// Directory for runs.csv / heatmap.csv. Empty keeps results in memory only.
  std::string out_dir;
  /// Continue from an existing runs.csv instead of starting over.
  bool resume = false;
  /// Stop after computing this many not-yet-persisted cells (< 0 means all).
  /// Persisted results stay valid, so a later resume finishes the sweep.
  int64_t max_cells = -1;
};

struct GridSearchResult {
  std::vector<HeatmapCell> cells;  ///< axis-order (vl2 major, vr2 minor)
  int64_t completed_cells = 0;
  bool complete = false;
  int best_index = -1;  ///< argmin mean cost; set only when complete
};

using GridProgressFn = std::function<void(int64_t cells_done, int64_t cells_total)>;

/// Runs the sweep. Cells are evaluated and persisted in axis order; each
/// cell's block of rows is appended to runs.csv once all its runs finish, so
/// an interrupted sweep loses at most the cells in flight. heatmap.csv is
/// written only when every cell is complete. Results are identical bytes
/// whether the sweep ran straight through, resumed, or used multiple threads.
GridSearchResult grid_search(const GridSpec& spec, uint64_t base_seed,
                             const GridIoOptions& io = {}, int threads = 1,
                             const GridProgressFn& progress = nullptr);

/// Index of the completed cell with minimum mean cost; ties go to the cell
/// earlier in axis order, i.e. lexicographically smaller (vl2, vr2). Throws
/// std::invalid_argument when no cell has any runs.
int best_cell(const std::vector<HeatmapCell>& cells);

/// Full 6-parameter controller from the fixed prefix plus one cell's pair.
ControllerParams assemble_controller(const std::array<double, 4>& prefix, double vl2, double vr2);

/// Row/number formatting shared by the writer, the resume validator, and
/// tests. Axis values use %.6g; costs use %.17g so they round-trip exactly.
std::string format_axis_value(double v);
std::string format_cost_value(double v);

}  // namespace swarmsim
