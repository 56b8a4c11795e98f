#include "swarmsim/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "swarmsim/jobs.hpp"
#include "swarmsim/trial.hpp"

namespace swarmsim {

namespace {

std::vector<int64_t> checkpoint_ticks(const ValidationConfig& cfg) {
  if (cfg.checkpoints_s.empty()) {
    throw std::invalid_argument("validation: no checkpoints");
  }
  std::vector<int64_t> ticks;
  ticks.reserve(cfg.checkpoints_s.size());
  int prev = 0;
  for (int s : cfg.checkpoints_s) {
    if (s <= prev) {
      throw std::invalid_argument("validation: checkpoints must be positive and increasing");
    }
    if (s > cfg.duration_s) {
      throw std::invalid_argument("validation: checkpoint beyond trial duration");
    }
    const double exact = static_cast<double>(s) / cfg.step.control_dt;
    const int64_t tick = std::llround(exact);
    if (std::abs(exact - static_cast<double>(tick)) > 1e-9) {
      throw std::invalid_argument("validation: checkpoint not aligned to the control cycle");
    }
    ticks.push_back(tick);
    prev = s;
  }
  return ticks;
}

void validate_config(const ValidationConfig& cfg) {
  if (cfg.group_counts.empty() || cfg.per_group.empty() || cfg.bollard_options.empty()) {
    throw std::invalid_argument("validation: empty configuration axis");
  }
  for (int g : cfg.group_counts) {
    if (g < 1) throw std::invalid_argument("validation: group count must be >= 1");
  }
  for (int n : cfg.per_group) {
    if (n < 1) throw std::invalid_argument("validation: per-group size must be >= 1");
  }
  for (int b : cfg.bollard_options) {
    if (b != 0 && b != 1) throw std::invalid_argument("validation: bollard option must be 0 or 1");
  }
  if (cfg.trials_per_config < 1) {
    throw std::invalid_argument("validation: trials_per_config must be >= 1");
  }
}

}  // namespace

ValidationReport run_validation_matrix(const ValidationConfig& cfg,
                                       const ControllerParams& controller, uint64_t base_seed,
                                       int threads, const ValidationProgressFn& progress) {
  validate_config(cfg);
  const std::vector<int64_t> ticks = checkpoint_ticks(cfg);
  int64_t sample_every = ticks.front();
  for (int64_t t : ticks) sample_every = std::gcd(sample_every, t);

  struct TrialSpec {
    int g;
    int n;
    bool bollards;
    uint64_t seed;
  };
  std::vector<TrialSpec> specs;
  for (int g : cfg.group_counts) {
    for (int n : cfg.per_group) {
      for (int b : cfg.bollard_options) {
        for (int i = 0; i < cfg.trials_per_config; ++i) {
          specs.push_back({g, n, b != 0, base_seed + static_cast<uint64_t>(i)});
        }
      }
    }
  }

  ValidationReport report;
  report.config = cfg;
  report.rows.resize(specs.size());
  const int64_t total = static_cast<int64_t>(specs.size());
  std::atomic<int64_t> done{0};

  run_indexed_jobs(total, threads, [&](int64_t i) {
    const TrialSpec& ts = specs[static_cast<size_t>(i)];
    ScenarioConfig sc;
    sc.g = ts.g;
    sc.n_per_group = ts.n;
    sc.arena_side = cfg.arena_side;
    sc.bollards_enabled = ts.bollards;
    sc.duration_s = cfg.duration_s;
    sc.seed = ts.seed;

    const TrialResult r = run_trial(sc, controller, cfg.step, sample_every);

    ValidationRow row;
    row.g = ts.g;
    row.n_per_group = ts.n;
    row.bollards = ts.bollards;
    row.seed = ts.seed;
    row.checkpoints.reserve(ticks.size());
    size_t cursor = 0;
    for (size_t c = 0; c < ticks.size(); ++c) {
      while (cursor < r.series.size() && r.series[cursor].tick < ticks[c]) ++cursor;
      if (cursor >= r.series.size() || r.series[cursor].tick != ticks[c]) {
        throw std::logic_error("validation: checkpoint sample missing from series");
      }
      const MetricSample& s = r.series[cursor];
      row.checkpoints.push_back(
          {cfg.checkpoints_s[c], s.pc, s.u, s.d});
    }
    report.rows[static_cast<size_t>(i)] = std::move(row);
    if (progress) progress(done.fetch_add(1, std::memory_order_relaxed) + 1, total);
  });

  return report;
}

std::string validation_report_csv(const ValidationReport& report) {
  std::string out = "g,n_per_group,bollards,seed,checkpoint_s,pc,u,d_cm\n";
  char buf[192];
  for (const ValidationRow& row : report.rows) {
    for (const CheckpointSample& c : row.checkpoints) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%d,%llu,%d,%.6f,%.6f,%.6f\n", row.g,
                    row.n_per_group, row.bollards ? 1 : 0,
                    static_cast<unsigned long long>(row.seed), c.checkpoint_s, c.pc, c.u, c.d);
      out += buf;
    }
  }
  return out;
}

std::string validation_summary_csv(const ValidationReport& report) {
  std::string out =
      "g,n_per_group,bollards,checkpoint_s,trials,"
      "pc_mean,pc_min,pc_max,u_mean,u_min,u_max,d_mean,d_min,d_max\n";
  char buf[320];
  const int trials = report.config.trials_per_config;
  for (size_t base = 0; base + static_cast<size_t>(trials) <= report.rows.size();
       base += static_cast<size_t>(trials)) {
    const ValidationRow& head = report.rows[base];
    for (size_t c = 0; c < head.checkpoints.size(); ++c) {
      long double pc_sum = 0.0L, u_sum = 0.0L, d_sum = 0.0L;
      double pc_min = 0.0, pc_max = 0.0, u_min = 0.0, u_max = 0.0, d_min = 0.0, d_max = 0.0;
      for (int i = 0; i < trials; ++i) {
        const CheckpointSample& s = report.rows[base + static_cast<size_t>(i)].checkpoints[c];
        pc_sum += s.pc;
        u_sum += s.u;
        d_sum += s.d;
        if (i == 0) {
          pc_min = pc_max = s.pc;
          u_min = u_max = s.u;
          d_min = d_max = s.d;
        } else {
          pc_min = std::min(pc_min, s.pc);
          pc_max = std::max(pc_max, s.pc);
          u_min = std::min(u_min, s.u);
          u_max = std::max(u_max, s.u);
          d_min = std::min(d_min, s.d);
          d_max = std::max(d_max, s.d);
        }
      }
      const double n = static_cast<double>(trials);
      std::snprintf(buf, sizeof(buf),
                    "%d,%d,%d,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", head.g,
                    head.n_per_group, head.bollards ? 1 : 0, head.checkpoints[c].checkpoint_s,
                    trials, static_cast<double>(pc_sum / n), pc_min, pc_max,
                    static_cast<double>(u_sum / n), u_min, u_max, static_cast<double>(d_sum / n),
                    d_min, d_max);
      out += buf;
    }
  }
  return out;
}

}  // namespace swarmsim
