#include "swarmsim/synthesis.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "swarmsim/trial.hpp"

namespace swarmsim {

namespace {

constexpr const char* kRunsHeader = "vl2,vr2,seed,U";
constexpr const char* kHeatmapHeader = "vl2,vr2,mean_cost,ln_mean_cost,n_runs";

void validate_spec(const GridSpec& spec) {
  if (spec.axis_values.empty()) {
    throw std::invalid_argument("grid spec: axis_values is empty");
  }
  for (size_t i = 0; i < spec.axis_values.size(); ++i) {
    const double v = spec.axis_values[i];
    if (!(v >= -1.0 && v <= 1.0)) {
      throw std::invalid_argument("grid spec: axis value outside [-1, 1]");
    }
    if (i > 0 && !(spec.axis_values[i - 1] < v)) {
      throw std::invalid_argument("grid spec: axis values must be strictly increasing");
    }
  }
  if (spec.runs_per_cell < 1) {
    throw std::invalid_argument("grid spec: runs_per_cell must be >= 1");
  }
  for (double p : spec.fixed_prefix) {
    if (!(p >= -1.0 && p <= 1.0)) {
      throw std::invalid_argument("grid spec: fixed prefix value outside [-1, 1]");
    }
  }
}

void finalize_cell(HeatmapCell& cell) {
  long double sum = 0.0L;
  for (double c : cell.costs) sum += static_cast<long double>(c);
  cell.mean_cost = static_cast<double>(sum / static_cast<long double>(cell.costs.size()));
  cell.ln_mean_cost = std::log(cell.mean_cost);
}

std::string cell_block(const HeatmapCell& cell, uint64_t base_seed) {
  std::string out;
  for (size_t j = 0; j < cell.costs.size(); ++j) {
    out += format_axis_value(cell.vl2);
    out += ',';
    out += format_axis_value(cell.vr2);
    out += ',';
    out += std::to_string(base_seed + static_cast<uint64_t>(j));
    out += ',';
    out += format_cost_value(cell.costs[j]);
    out += '\n';
  }
  return out;
}

double run_cell_trial(const GridSpec& spec, double vl2, double vr2, uint64_t seed) {
  ScenarioConfig cfg = spec.scenario;
  cfg.seed = seed;
  const ControllerParams controller = assemble_controller(spec.fixed_prefix, vl2, vr2);
  return run_trial(cfg, controller, spec.step, /*sample_every=*/0).cost;
}

// Restores state from an existing runs.csv: fills the costs of the leading
// fully-persisted cells and returns how many there are. The file is trimmed
// back to the end of the last full block, so whatever a torn write left
// behind is recomputed rather than trusted.
int64_t load_runs_file(const std::filesystem::path& path, std::vector<HeatmapCell>& cells,
                       int runs_per_cell, uint64_t base_seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("resume: cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();

  // A torn final line never ends in a newline; drop it before validating.
  const size_t last_newline = content.find_last_of('\n');
  std::string body =
      last_newline == std::string::npos ? std::string() : content.substr(0, last_newline + 1);

  std::istringstream lines(body);
  std::string line;
  if (!std::getline(lines, line) || line != kRunsHeader) {
    throw std::runtime_error("resume: " + path.string() + " has an unexpected header");
  }

  size_t offset = std::string(kRunsHeader).size() + 1;
  size_t valid_end = offset;
  int64_t complete_cells = 0;
  size_t cell_idx = 0;
  int run_idx = 0;
  while (std::getline(lines, line)) {
    if (cell_idx >= cells.size()) {
      throw std::runtime_error("resume: " + path.string() + " has more rows than the grid");
    }
    HeatmapCell& cell = cells[cell_idx];
    std::string expected = format_axis_value(cell.vl2) + ',' + format_axis_value(cell.vr2) + ',' +
                           std::to_string(base_seed + static_cast<uint64_t>(run_idx)) + ',';
    if (line.compare(0, expected.size(), expected) != 0) {
      throw std::runtime_error("resume: " + path.string() +
                               " does not match this grid spec (row " +
                               std::to_string(complete_cells * runs_per_cell + run_idx + 2) + ")");
    }
    const std::string cost_field = line.substr(expected.size());
    char* end = nullptr;
    const double cost = std::strtod(cost_field.c_str(), &end);
    if (end == cost_field.c_str() || *end != '\0' || !std::isfinite(cost)) {
      throw std::runtime_error("resume: " + path.string() + " has a malformed cost value");
    }
    cell.costs.push_back(cost);
    offset += line.size() + 1;
    ++run_idx;
    if (run_idx == runs_per_cell) {
      finalize_cell(cell);
      ++complete_cells;
      ++cell_idx;
      run_idx = 0;
      valid_end = offset;
    }
  }
  // Rows past the last full block belong to a cell that never finished.
  for (size_t c = static_cast<size_t>(complete_cells); c < cells.size(); ++c) {
    cells[c].costs.clear();
  }
  if (valid_end != content.size()) {
    std::filesystem::resize_file(path, valid_end);
  }
  return complete_cells;
}

}  // namespace

std::vector<double> default_axis_values() {
  std::vector<double> axis;
  axis.reserve(21);
  for (int i = -10; i <= 10; ++i) axis.push_back(static_cast<double>(i) / 10.0);
  return axis;
}

std::string format_axis_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_cost_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ControllerParams assemble_controller(const std::array<double, 4>& prefix, double vl2,
                                     double vr2) {
  return ControllerParams{{prefix[0], prefix[1], prefix[2], prefix[3], vl2, vr2}};
}

int best_cell(const std::vector<HeatmapCell>& cells) {
  int best = -1;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].costs.empty()) continue;
    if (best < 0 || cells[i].mean_cost < cells[best].mean_cost) best = static_cast<int>(i);
  }
  if (best < 0) throw std::invalid_argument("best_cell: no completed cells");
  return best;
}

GridSearchResult grid_search(const GridSpec& spec, uint64_t base_seed, const GridIoOptions& io,
                             int threads, const GridProgressFn& progress) {
  validate_spec(spec);

  const size_t axis_n = spec.axis_values.size();
  const int64_t total_cells = static_cast<int64_t>(axis_n * axis_n);
  const int runs = spec.runs_per_cell;

  GridSearchResult result;
  result.cells.resize(static_cast<size_t>(total_cells));
  for (size_t i = 0; i < axis_n; ++i) {
    for (size_t k = 0; k < axis_n; ++k) {
      HeatmapCell& cell = result.cells[i * axis_n + k];
      cell.vl2 = spec.axis_values[i];
      cell.vr2 = spec.axis_values[k];
    }
  }

  const bool persist = !io.out_dir.empty();
  std::filesystem::path runs_path;
  int64_t first_incomplete = 0;
  std::ofstream runs_out;
  if (persist) {
    std::filesystem::create_directories(io.out_dir);
    runs_path = std::filesystem::path(io.out_dir) / "runs.csv";
    if (io.resume && std::filesystem::exists(runs_path)) {
      first_incomplete = load_runs_file(runs_path, result.cells, runs, base_seed);
      runs_out.open(runs_path, std::ios::binary | std::ios::app);
    } else {
      runs_out.open(runs_path, std::ios::binary | std::ios::trunc);
      runs_out << kRunsHeader << '\n';
      runs_out.flush();
    }
    if (!runs_out) throw std::runtime_error("grid_search: cannot write " + runs_path.string());
  }

  int64_t last_cell = total_cells;
  if (io.max_cells >= 0) {
    last_cell = std::min(total_cells, first_incomplete + io.max_cells);
  }

  auto emit_cell = [&](int64_t idx) {
    HeatmapCell& cell = result.cells[static_cast<size_t>(idx)];
    finalize_cell(cell);
    if (persist) {
      runs_out << cell_block(cell, base_seed);
      runs_out.flush();
      if (!runs_out) {
        throw std::runtime_error("grid_search: write failed on " + runs_path.string());
      }
    }
    if (progress) progress(idx + 1, total_cells);
  };

  if (threads <= 1 || first_incomplete >= last_cell) {
    for (int64_t idx = first_incomplete; idx < last_cell; ++idx) {
      HeatmapCell& cell = result.cells[static_cast<size_t>(idx)];
      cell.costs.resize(static_cast<size_t>(runs));
      for (int j = 0; j < runs; ++j) {
        cell.costs[static_cast<size_t>(j)] =
            run_cell_trial(spec, cell.vl2, cell.vr2, base_seed + static_cast<uint64_t>(j));
      }
      emit_cell(idx);
    }
  } else {
    // Workers fill per-run slots; the calling thread persists cells strictly
    // in axis order as their run counts reach zero.
    const int64_t pending_cells = last_cell - first_incomplete;
    const int64_t total_jobs = pending_cells * runs;
    std::vector<int> remaining(static_cast<size_t>(pending_cells), runs);
    for (int64_t idx = first_incomplete; idx < last_cell; ++idx) {
      result.cells[static_cast<size_t>(idx)].costs.resize(static_cast<size_t>(runs));
    }

    std::mutex mu;
    std::condition_variable cv;
    std::atomic<int64_t> next_job{0};
    bool failed = false;
    std::exception_ptr error;

    auto worker = [&]() {
      for (;;) {
        const int64_t job = next_job.fetch_add(1, std::memory_order_relaxed);
        if (job >= total_jobs) return;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (failed) return;
        }
        const int64_t idx = first_incomplete + job / runs;
        const int j = static_cast<int>(job % runs);
        HeatmapCell& cell = result.cells[static_cast<size_t>(idx)];
        try {
          cell.costs[static_cast<size_t>(j)] =
              run_cell_trial(spec, cell.vl2, cell.vr2, base_seed + static_cast<uint64_t>(j));
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failed) {
            failed = true;
            error = std::current_exception();
          }
          cv.notify_all();
          return;
        }
        {
          std::lock_guard<std::mutex> lock(mu);
          --remaining[static_cast<size_t>(idx - first_incomplete)];
        }
        cv.notify_all();
      }
    };

    std::vector<std::thread> pool;
    const int n_threads = static_cast<int>(std::min<int64_t>(threads, total_jobs));
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);

    {
      std::unique_lock<std::mutex> lock(mu);
      for (int64_t idx = first_incomplete; idx < last_cell && !failed; ++idx) {
        cv.wait(lock, [&] {
          return failed || remaining[static_cast<size_t>(idx - first_incomplete)] == 0;
        });
        if (failed) break;
        lock.unlock();
        emit_cell(idx);
        lock.lock();
      }
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  result.completed_cells = last_cell;
  result.complete = last_cell == total_cells;
  if (result.complete) {
    result.best_index = best_cell(result.cells);
    if (persist) {
      const auto heatmap_path = std::filesystem::path(io.out_dir) / "heatmap.csv";
      std::ofstream heat(heatmap_path, std::ios::binary | std::ios::trunc);
      heat << kHeatmapHeader << '\n';
      for (const HeatmapCell& cell : result.cells) {
        heat << format_axis_value(cell.vl2) << ',' << format_axis_value(cell.vr2) << ','
             << format_cost_value(cell.mean_cost) << ',' << format_cost_value(cell.ln_mean_cost)
             << ',' << cell.costs.size() << '\n';
      }
      heat.flush();
      if (!heat) throw std::runtime_error("grid_search: cannot write " + heatmap_path.string());
    }
  }
  return result;
}

}  // namespace swarmsim
