// swarmsim: deterministic multi-group aggregation experiments from the
// command line. Subcommands run single trials, the controller grid search,
// the scalability matrix, snapshot rendering, and metric oracle cross-checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swarmsim/controller.hpp"
#include "swarmsim/jobs.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/oracle.hpp"
#include "swarmsim/render.hpp"
#include "swarmsim/scenario.hpp"
#include "swarmsim/synthesis.hpp"
#include "swarmsim/trial.hpp"
#include "swarmsim/validation.hpp"
#include "swarmsim/version.hpp"
#include "swarmsim/world_json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace swarmsim;

namespace {

// Raised during flag/config resolution; maps to exit code 1 (usage error)
// rather than 2 (runtime failure).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

// Loads the config JSON for --config. A manifest is accepted directly: its
// "config" object is used, so re-running from a manifest needs no editing.
json load_config_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const std::exception& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("--config: top-level JSON object expected");
  if (j.contains("config") && j["config"].is_object()) return j["config"];
  return j;
}

json scenario_to_json(const ScenarioConfig& sc, bool include_seed) {
  json j{{"g", sc.g},
         {"n_per_group", sc.n_per_group},
         {"arena_side", sc.arena_side},
         {"bollards_enabled", sc.bollards_enabled},
         {"duration_s", sc.duration_s}};
  if (include_seed) j["seed"] = sc.seed;
  return j;
}

void scenario_from_json(const json& j, ScenarioConfig& sc) {
  sc.g = j.value("g", sc.g);
  sc.n_per_group = j.value("n_per_group", sc.n_per_group);
  sc.arena_side = j.value("arena_side", sc.arena_side);
  sc.bollards_enabled = j.value("bollards_enabled", sc.bollards_enabled);
  sc.duration_s = j.value("duration_s", sc.duration_s);
  sc.seed = j.value("seed", sc.seed);
}

void write_manifest(const fs::path& dir, const std::string& command, const json& config,
                    const std::vector<uint64_t>& seeds,
                    const std::vector<std::string>& artifacts, const std::string& started) {
  json m{{"command", command},
         {"tool_version", SWARMSIM_VERSION},
         {"started_utc", started},
         {"finished_utc", utc_timestamp()},
         {"seeds", seeds},
         {"config", config},
         {"artifacts", artifacts}};
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

ControllerParams resolve_controller(const std::string& text) {
  try {
    return parse_controller(text);
  } catch (const std::exception& e) {
    throw UsageError("--controller: " + std::string(e.what()));
  }
}

std::vector<double> axis_from_step(double step) {
  if (!(step > 0.0 && step <= 2.0)) {
    throw UsageError("--axis-step: must be in (0, 2]");
  }
  const double divisions = 1.0 / step;
  const int n = static_cast<int>(std::llround(divisions));
  if (n < 1 || std::abs(divisions - static_cast<double>(n)) > 1e-9) {
    throw UsageError("--axis-step: must divide the [-1, 1] range evenly");
  }
  std::vector<double> axis;
  axis.reserve(static_cast<size_t>(2 * n + 1));
  for (int i = -n; i <= n; ++i) axis.push_back(static_cast<double>(i) / static_cast<double>(n));
  return axis;
}

std::vector<uint64_t> seed_range(uint64_t base, int count) {
  std::vector<uint64_t> seeds;
  seeds.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) seeds.push_back(base + static_cast<uint64_t>(i));
  return seeds;
}

// Shared per-subcommand option state. CLI11 counts tell us which flags were
// actually given, so precedence is: struct defaults, then --config file, then
// explicit flags.
struct CommonOpts {
  std::string out_dir = "out";
  std::string config_path;
  int jobs = 0;  // 0: pick automatically
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out-dir", opts.out_dir, "Directory for artifacts and the run manifest");
  cmd->add_option("--config", opts.config_path,
                  "JSON config file; explicit flags override its values. A manifest.json "
                  "from a previous run is accepted.");
  cmd->add_option("--jobs", opts.jobs, "Worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);
}

int effective_jobs(const CommonOpts& opts) {
  return opts.jobs > 0 ? opts.jobs : available_parallelism();
}

// ---------------------------------------------------------------- trial ----

struct TrialOpts {
  CommonOpts common;
  ScenarioConfig scenario;
  std::string controller_text = format_controller(kBestController);
  int64_t sample_every = 1;
  std::vector<int> snapshots_s;
};

int cmd_trial(const CLI::App& cmd, TrialOpts& opt) {
  const std::string started = utc_timestamp();
  ScenarioConfig flag_values = opt.scenario;

  if (cmd.count("--config") > 0) {
    const json cfg = load_config_file(opt.common.config_path);
    if (cfg.contains("scenario")) scenario_from_json(cfg["scenario"], opt.scenario);
    try {
      opt.controller_text = cfg.value("controller", opt.controller_text);
      opt.sample_every = cfg.value("sample_every", opt.sample_every);
      opt.snapshots_s = cfg.value("snapshots_s", opt.snapshots_s);
    } catch (const json::exception& e) {
      throw UsageError("--config: " + std::string(e.what()));
    }
  }
  if (cmd.count("--groups")) opt.scenario.g = flag_values.g;
  if (cmd.count("--per-group")) opt.scenario.n_per_group = flag_values.n_per_group;
  if (cmd.count("--arena-side")) opt.scenario.arena_side = flag_values.arena_side;
  if (cmd.count("--bollards")) opt.scenario.bollards_enabled = flag_values.bollards_enabled;
  if (cmd.count("--duration")) opt.scenario.duration_s = flag_values.duration_s;
  if (cmd.count("--seed")) opt.scenario.seed = flag_values.seed;

  const ControllerParams controller = resolve_controller(opt.controller_text);
  if (opt.sample_every < 0) throw UsageError("--sample-every: must be >= 0");

  const StepConfig step;
  std::map<int64_t, int> snapshot_ticks;
  for (int s : opt.snapshots_s) {
    if (s < 0 || static_cast<double>(s) > opt.scenario.duration_s) {
      throw UsageError("--snapshots: time outside the trial duration");
    }
    snapshot_ticks[std::llround(static_cast<double>(s) / step.control_dt)] = s;
  }

  const fs::path out_dir(opt.common.out_dir);
  fs::create_directories(out_dir);

  std::vector<std::string> artifacts = {"metrics.csv"};
  TrialObserver observer;
  if (!snapshot_ticks.empty()) {
    observer = [&](const World& world, int64_t tick) {
      const auto it = snapshot_ticks.find(tick);
      if (it == snapshot_ticks.end()) return;
      const std::string name = "snapshot_" + std::to_string(it->second) + "s.svg";
      render_snapshot(world, (out_dir / name).string());
    };
    for (const auto& [tick, sec] : snapshot_ticks) {
      artifacts.push_back("snapshot_" + std::to_string(sec) + "s.svg");
    }
  }

  const TrialResult result =
      run_trial(opt.scenario, controller, step, opt.sample_every, observer);

  write_file(out_dir / "metrics.csv",
             metrics_csv(result.series, opt.scenario.g, step.control_dt));

  json config{{"scenario", scenario_to_json(opt.scenario, true)},
              {"controller", opt.controller_text},
              {"sample_every", opt.sample_every}};
  if (!opt.snapshots_s.empty()) config["snapshots_s"] = opt.snapshots_s;
  write_manifest(out_dir, "trial", config, {opt.scenario.seed}, artifacts, started);

  if (!result.series.empty()) {
    const MetricSample& last = result.series.back();
    std::printf("trial: %d robots, %lld cycles, final pc=%.4f u=%.3f d=%.2f cm\n",
                opt.scenario.total_robots(), static_cast<long long>(result.cycles), last.pc,
                last.u, last.d);
  }
  std::printf("cost U=%.6e, wall %.2f s, artifacts in %s\n", result.cost, result.wall_seconds,
              out_dir.string().c_str());
  return 0;
}

// ----------------------------------------------------------- grid-search ----

struct GridOpts {
  CommonOpts common;
  GridSpec spec;
  uint64_t base_seed = 1;
  double axis_step = 0.0;  // 0: keep spec.axis_values
  int64_t max_cells = -1;
  bool resume = false;
};

int cmd_grid_search(const CLI::App& cmd, GridOpts& opt) {
  const std::string started = utc_timestamp();
  const GridSpec flag_values = opt.spec;
  const uint64_t flag_seed = opt.base_seed;

  if (cmd.count("--config") > 0) {
    const json cfg = load_config_file(opt.common.config_path);
    try {
      if (cfg.contains("grid")) {
        const json& g = cfg["grid"];
        if (g.contains("fixed_prefix")) {
          const auto prefix = g["fixed_prefix"].get<std::vector<double>>();
          if (prefix.size() != 4) throw UsageError("--config: fixed_prefix needs 4 values");
          std::copy(prefix.begin(), prefix.end(), opt.spec.fixed_prefix.begin());
        }
        if (g.contains("axis_values")) {
          opt.spec.axis_values = g["axis_values"].get<std::vector<double>>();
        }
        opt.spec.runs_per_cell = g.value("runs_per_cell", opt.spec.runs_per_cell);
        if (g.contains("scenario")) scenario_from_json(g["scenario"], opt.spec.scenario);
      }
      opt.base_seed = cfg.value("base_seed", opt.base_seed);
    } catch (const json::exception& e) {
      throw UsageError("--config: " + std::string(e.what()));
    }
  }
  if (cmd.count("--groups")) opt.spec.scenario.g = flag_values.scenario.g;
  if (cmd.count("--per-group")) opt.spec.scenario.n_per_group = flag_values.scenario.n_per_group;
  if (cmd.count("--arena-side")) opt.spec.scenario.arena_side = flag_values.scenario.arena_side;
  if (cmd.count("--bollards")) {
    opt.spec.scenario.bollards_enabled = flag_values.scenario.bollards_enabled;
  }
  if (cmd.count("--duration")) opt.spec.scenario.duration_s = flag_values.scenario.duration_s;
  if (cmd.count("--runs")) opt.spec.runs_per_cell = flag_values.runs_per_cell;
  if (cmd.count("--seed")) opt.base_seed = flag_seed;
  if (cmd.count("--axis-step")) opt.spec.axis_values = axis_from_step(opt.axis_step);

  GridIoOptions io;
  io.out_dir = opt.common.out_dir;
  io.resume = opt.resume;
  io.max_cells = opt.max_cells;
  fs::create_directories(io.out_dir);

  std::mutex progress_mu;
  const auto progress = [&](int64_t done, int64_t total) {
    std::lock_guard<std::mutex> lock(progress_mu);
    std::fprintf(stderr, "grid-search: cell %lld/%lld\n", static_cast<long long>(done),
                 static_cast<long long>(total));
  };

  GridSearchResult result;
  try {
    result = grid_search(opt.spec, opt.base_seed, io, effective_jobs(opt.common), progress);
  } catch (const std::invalid_argument& e) {
    // Bad axis/prefix/runs values arrive through flags or config.
    throw UsageError(e.what());
  }

  json grid_cfg{{"fixed_prefix",
                 std::vector<double>(opt.spec.fixed_prefix.begin(), opt.spec.fixed_prefix.end())},
                {"axis_values", opt.spec.axis_values},
                {"runs_per_cell", opt.spec.runs_per_cell},
                {"scenario", scenario_to_json(opt.spec.scenario, false)}};
  json config{{"grid", grid_cfg}, {"base_seed", opt.base_seed}};
  std::vector<std::string> artifacts = {"runs.csv"};
  if (result.complete) artifacts.push_back("heatmap.csv");
  write_manifest(io.out_dir, "grid-search", config,
                 seed_range(opt.base_seed, opt.spec.runs_per_cell), artifacts, started);

  if (result.complete) {
    const HeatmapCell& best = result.cells[static_cast<size_t>(result.best_index)];
    const ControllerParams best_params =
        assemble_controller(opt.spec.fixed_prefix, best.vl2, best.vr2);
    std::printf("grid-search: %lld cells complete\n",
                static_cast<long long>(result.completed_cells));
    std::printf("best cell (vl2=%s, vr2=%s) mean U=%.6e\n",
                format_axis_value(best.vl2).c_str(), format_axis_value(best.vr2).c_str(),
                best.mean_cost);
    std::printf("best controller %s\n", format_controller(best_params).c_str());
  } else {
    std::printf("grid-search: stopped at %lld/%zu cells; rerun with --resume to continue\n",
                static_cast<long long>(result.completed_cells), result.cells.size());
  }
  return 0;
}

// -------------------------------------------------------------- validate ----

struct ValidateOpts {
  CommonOpts common;
  ValidationConfig config;
  std::string controller_text = format_controller(kBestController);
  uint64_t base_seed = 1;
};

int cmd_validate(const CLI::App& cmd, ValidateOpts& opt) {
  const std::string started = utc_timestamp();
  const ValidationConfig flag_values = opt.config;
  const uint64_t flag_seed = opt.base_seed;

  if (cmd.count("--config") > 0) {
    const json cfg = load_config_file(opt.common.config_path);
    try {
      if (cfg.contains("validation")) {
        const json& v = cfg["validation"];
        opt.config.group_counts = v.value("group_counts", opt.config.group_counts);
        opt.config.per_group = v.value("per_group", opt.config.per_group);
        opt.config.bollard_options = v.value("bollard_options", opt.config.bollard_options);
        opt.config.arena_side = v.value("arena_side", opt.config.arena_side);
        opt.config.duration_s = v.value("duration_s", opt.config.duration_s);
        opt.config.checkpoints_s = v.value("checkpoints_s", opt.config.checkpoints_s);
        opt.config.trials_per_config = v.value("trials_per_config", opt.config.trials_per_config);
      }
      opt.controller_text = cfg.value("controller", opt.controller_text);
      opt.base_seed = cfg.value("base_seed", opt.base_seed);
    } catch (const json::exception& e) {
      throw UsageError("--config: " + std::string(e.what()));
    }
  }
  if (cmd.count("--trials")) opt.config.trials_per_config = flag_values.trials_per_config;
  if (cmd.count("--duration")) opt.config.duration_s = flag_values.duration_s;
  if (cmd.count("--arena-side")) opt.config.arena_side = flag_values.arena_side;
  if (cmd.count("--seed")) opt.base_seed = flag_seed;

  const ControllerParams controller = resolve_controller(opt.controller_text);

  const fs::path out_dir(opt.common.out_dir);
  fs::create_directories(out_dir);

  std::mutex progress_mu;
  const auto progress = [&](int64_t done, int64_t total) {
    std::lock_guard<std::mutex> lock(progress_mu);
    std::fprintf(stderr, "validate: trial %lld/%lld\n", static_cast<long long>(done),
                 static_cast<long long>(total));
  };

  const ValidationReport report = run_validation_matrix(
      opt.config, controller, opt.base_seed, effective_jobs(opt.common), progress);

  write_file(out_dir / "report.csv", validation_report_csv(report));
  write_file(out_dir / "summary.csv", validation_summary_csv(report));

  json validation_cfg{{"group_counts", opt.config.group_counts},
                      {"per_group", opt.config.per_group},
                      {"bollard_options", opt.config.bollard_options},
                      {"arena_side", opt.config.arena_side},
                      {"duration_s", opt.config.duration_s},
                      {"checkpoints_s", opt.config.checkpoints_s},
                      {"trials_per_config", opt.config.trials_per_config}};
  json config{{"validation", validation_cfg},
              {"controller", opt.controller_text},
              {"base_seed", opt.base_seed}};
  write_manifest(out_dir, "validate", config,
                 seed_range(opt.base_seed, opt.config.trials_per_config),
                 {"report.csv", "summary.csv"}, started);

  std::printf("validate: %zu trials, artifacts in %s\n", report.rows.size(),
              out_dir.string().c_str());
  return 0;
}

// ---------------------------------------------------------------- render ----

struct RenderOpts {
  CommonOpts common;
  std::string input;
};

int cmd_render(const CLI::App&, RenderOpts& opt) {
  const std::string started = utc_timestamp();
  const World world = world_from_json(read_file(opt.input));

  const fs::path out_dir(opt.common.out_dir);
  fs::create_directories(out_dir);
  render_snapshot(world, (out_dir / "world.svg").string());

  write_manifest(out_dir, "render", json{{"input", opt.input}}, {}, {"world.svg"}, started);
  std::printf("render: %zu robots, %zu bollards -> %s\n", world.robots.size(),
              world.bollards.size(), (out_dir / "world.svg").string().c_str());
  return 0;
}

// ---------------------------------------------------------------- oracle ----

struct OracleOpts {
  std::string input;
};

int cmd_oracle(const CLI::App&, OracleOpts& opt) {
  const World world = world_from_json(read_file(opt.input));

  const double d_impl = group_dispersion(world);
  const double d_ref = oracle::group_dispersion(world);
  const double u_impl = second_moment(world);
  const double u_ref = oracle::second_moment(world);
  const ClusterStats c_impl = clustered_proportion(world);
  const ClusterStats c_ref = oracle::clustered_proportion(world);

  const double u_scale = std::max({std::abs(u_impl), std::abs(u_ref), 1e-30});
  const bool d_match = d_impl == d_ref;
  const bool u_match = std::abs(u_impl - u_ref) / u_scale <= 1e-9;
  const bool c_match = c_impl.lc == c_ref.lc && c_impl.pc == c_ref.pc;

  json out{{"d", {{"value", d_impl}, {"oracle", d_ref}, {"match", d_match}}},
           {"u", {{"value", u_impl}, {"oracle", u_ref}, {"match", u_match}}},
           {"clustering",
            {{"pc", c_impl.pc},
             {"pc_oracle", c_ref.pc},
             {"lc", c_impl.lc},
             {"lc_oracle", c_ref.lc},
             {"match", c_match}}},
           {"all_match", d_match && u_match && c_match}};
  std::printf("%s\n", out.dump(2).c_str());
  if (!(d_match && u_match && c_match)) {
    std::fprintf(stderr, "oracle: MISMATCH detected\n");
    return 2;
  }
  return 0;
}

void add_scenario_flags(CLI::App* cmd, ScenarioConfig& sc) {
  cmd->add_option("--groups", sc.g, "Number of robot groups")->check(CLI::PositiveNumber);
  cmd->add_option("--per-group", sc.n_per_group, "Robots per group")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--arena-side", sc.arena_side, "Arena side length, cm")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--bollards,!--no-bollards", sc.bollards_enabled,
                "Place one reference bollard per group");
  cmd->add_option("--duration", sc.duration_s, "Simulated seconds per trial")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic 2D multi-group swarm aggregation toolkit"};
  app.set_version_flag("--version", SWARMSIM_VERSION);
  app.require_subcommand(1);

  TrialOpts trial_opts;
  CLI::App* trial = app.add_subcommand("trial", "Run one seeded simulation and export metrics");
  add_common_options(trial, trial_opts.common);
  add_scenario_flags(trial, trial_opts.scenario);
  trial->add_option("--seed", trial_opts.scenario.seed, "Placement seed");
  trial->add_option("--controller", trial_opts.controller_text,
                    "Controller as \"[vl0,vr0,vl1,vr1,vl2,vr2]\"");
  trial->add_option("--sample-every", trial_opts.sample_every,
                    "Keep every Nth metric sample (0: none, 1: all)");
  trial->add_option("--snapshots", trial_opts.snapshots_s,
                    "Comma-separated times in seconds to render SVG snapshots")
      ->delimiter(',');

  GridOpts grid_opts;
  CLI::App* grid = app.add_subcommand(
      "grid-search", "Sweep the two free controller parameters and rank cells by mean cost");
  add_common_options(grid, grid_opts.common);
  add_scenario_flags(grid, grid_opts.spec.scenario);
  grid->add_option("--seed", grid_opts.base_seed, "Base seed; run j uses seed base+j");
  grid->add_option("--axis-step", grid_opts.axis_step,
                   "Axis spacing over [-1, 1] (default 0.1, i.e. 21 values)");
  grid->add_option("--runs", grid_opts.spec.runs_per_cell, "Runs per grid cell")
      ->check(CLI::PositiveNumber);
  grid->add_option("--max-cells", grid_opts.max_cells,
                   "Stop after this many new cells (for chunked sweeps)");
  grid->add_flag("--resume", grid_opts.resume, "Continue from an existing runs.csv");

  ValidateOpts validate_opts;
  CLI::App* validate = app.add_subcommand(
      "validate", "Run the scalability matrix (group counts x sizes x bollards)");
  add_common_options(validate, validate_opts.common);
  validate->add_option("--trials", validate_opts.config.trials_per_config,
                       "Seeded trials per configuration")
      ->check(CLI::PositiveNumber);
  validate->add_option("--duration", validate_opts.config.duration_s,
                       "Simulated seconds per trial")
      ->check(CLI::PositiveNumber);
  validate->add_option("--arena-side", validate_opts.config.arena_side, "Arena side length, cm")
      ->check(CLI::PositiveNumber);
  validate->add_option("--seed", validate_opts.base_seed, "Base seed; trial i uses seed base+i");
  validate->add_option("--controller", validate_opts.controller_text,
                       "Controller as \"[vl0,vr0,vl1,vr1,vl2,vr2]\"");

  RenderOpts render_opts;
  CLI::App* render = app.add_subcommand("render", "Render a world JSON snapshot to SVG");
  add_common_options(render, render_opts.common);
  render->add_option("--in", render_opts.input, "World JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  OracleOpts oracle_opts;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Cross-check metrics on a world JSON against brute-force reference routes");
  oracle_cmd->add_option("--in", oracle_opts.input, "World JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (trial->parsed()) return cmd_trial(*trial, trial_opts);
    if (grid->parsed()) return cmd_grid_search(*grid, grid_opts);
    if (validate->parsed()) return cmd_validate(*validate, validate_opts);
    if (render->parsed()) return cmd_render(*render, render_opts);
    if (oracle_cmd->parsed()) return cmd_oracle(*oracle_cmd, oracle_opts);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
