#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "swarmsim/synthesis.hpp"

#include "test_support.hpp"

using namespace swarmsim;
namespace fs = std::filesystem;

namespace {

// Small, fast sweep scenario shared by the file-handling tests.
GridSpec tiny_spec(std::vector<double> axis, int runs) {
  GridSpec spec;
  spec.axis_values = std::move(axis);
  spec.runs_per_cell = runs;
  spec.scenario.g = 2;
  spec.scenario.n_per_group = 3;
  spec.scenario.duration_s = 2.0;
  return spec;
}

}  // namespace

TEST_CASE("default axis holds 21 tenths from -1 to 1") {
  const auto axis = default_axis_values();
  REQUIRE(axis.size() == 21);
  CHECK(axis.front() == -1.0);
  CHECK(axis.back() == 1.0);
  CHECK(axis[3] == -0.7);
  CHECK(axis[10] == 0.0);
  for (size_t i = 1; i < axis.size(); ++i) CHECK(axis[i - 1] < axis[i]);
}

TEST_CASE("degenerate 1x1 grid runs one trial and is its own best cell") {
  GridSpec spec = tiny_spec({0.25}, 1);
  const GridSearchResult result = grid_search(spec, 7);
  REQUIRE(result.cells.size() == 1);
  CHECK(result.complete);
  CHECK(result.best_index == 0);
  CHECK(result.cells[0].costs.size() == 1);
  CHECK(result.cells[0].vl2 == 0.25);
  CHECK(result.cells[0].vr2 == 0.25);
  CHECK(result.cells[0].mean_cost == result.cells[0].costs[0]);
  CHECK(result.cells[0].ln_mean_cost == doctest::Approx(std::log(result.cells[0].mean_cost)));
}

TEST_CASE("cells share per-run seeds, so equal cells give equal costs") {
  // Same (vl2, vr2) evaluated inside different sweeps must match exactly.
  GridSpec lone = tiny_spec({-0.5}, 2);
  GridSpec wide = tiny_spec({-0.5, 0.5}, 2);
  const auto lone_result = grid_search(lone, 3);
  const auto wide_result = grid_search(wide, 3);
  CHECK(lone_result.cells[0].costs == wide_result.cells[0].costs);
  CHECK(lone_result.cells[0].mean_cost == wide_result.cells[0].mean_cost);
}

TEST_CASE("best cell takes the minimum mean, ties to the lexicographically smaller") {
  std::vector<HeatmapCell> cells(3);
  cells[0].vl2 = -1.0;
  cells[0].vr2 = -1.0;
  cells[0].costs = {5.0};
  cells[0].mean_cost = 5.0;
  cells[1].vl2 = -1.0;
  cells[1].vr2 = 0.0;
  cells[1].costs = {2.0};
  cells[1].mean_cost = 2.0;
  cells[2].vl2 = 0.0;
  cells[2].vr2 = -1.0;
  cells[2].costs = {2.0};
  cells[2].mean_cost = 2.0;
  CHECK(best_cell(cells) == 1);

  CHECK_THROWS_AS(best_cell({}), std::invalid_argument);
  std::vector<HeatmapCell> empty_runs(2);
  CHECK_THROWS_AS(best_cell(empty_runs), std::invalid_argument);
}

TEST_CASE("assemble_controller splices the swept pair after the fixed prefix") {
  const ControllerParams single = assemble_controller(kFixedPrefix, 0.3, 0.1);
  CHECK(single.v == std::array<double, 6>{-0.7, -1.0, 1.0, -1.0, 0.3, 0.1});

  const ControllerParams best = assemble_controller(kFixedPrefix, -0.7, -1.0);
  CHECK(best == kBestController);
}

TEST_CASE("grid validation rejects malformed specs") {
  CHECK_THROWS_AS(grid_search(tiny_spec({}, 1), 1), std::invalid_argument);
  CHECK_THROWS_AS(grid_search(tiny_spec({0.5, -0.5}, 1), 1), std::invalid_argument);
  CHECK_THROWS_AS(grid_search(tiny_spec({-2.0, 0.0}, 1), 1), std::invalid_argument);
  CHECK_THROWS_AS(grid_search(tiny_spec({0.0}, 0), 1), std::invalid_argument);
}

TEST_CASE("runs.csv and heatmap.csv carry the sweep in axis order") {
  const fs::path dir = test_support::scratch_dir("grid_files");
  GridSpec spec = tiny_spec({-1.0, 1.0}, 2);
  GridIoOptions io;
  io.out_dir = dir.string();
  const GridSearchResult result = grid_search(spec, 11, io);
  REQUIRE(result.complete);

  const std::string runs = test_support::read_file(dir / "runs.csv");
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < runs.size()) {
    const size_t end = runs.find('\n', start);
    lines.push_back(runs.substr(start, end - start));
    start = end + 1;
  }
  REQUIRE(lines.size() == 9);  // header + 4 cells x 2 runs
  CHECK(lines[0] == "vl2,vr2,seed,U");
  CHECK(lines[1].rfind("-1,-1,11,", 0) == 0);
  CHECK(lines[2].rfind("-1,-1,12,", 0) == 0);
  CHECK(lines[3].rfind("-1,1,11,", 0) == 0);
  CHECK(lines[5].rfind("1,-1,11,", 0) == 0);
  CHECK(lines[7].rfind("1,1,11,", 0) == 0);

  // Costs in the file round-trip to the in-memory values exactly.
  const std::string cost_text = lines[1].substr(lines[1].rfind(',') + 1);
  CHECK(std::stod(cost_text) == result.cells[0].costs[0]);

  const std::string heatmap = test_support::read_file(dir / "heatmap.csv");
  CHECK(heatmap.rfind("vl2,vr2,mean_cost,ln_mean_cost,n_runs\n", 0) == 0);
  CHECK(std::count(heatmap.begin(), heatmap.end(), '\n') == 5);  // header + 4 cells
  CHECK(heatmap.find("-1,-1,") != std::string::npos);
  CHECK(heatmap.find(",2\n") != std::string::npos);  // n_runs column
  fs::remove_all(dir);
}

TEST_CASE("an interrupted sweep resumes to byte-identical outputs") {
  GridSpec spec = tiny_spec({-1.0, 0.0, 1.0}, 2);  // 9 cells

  const fs::path straight = test_support::scratch_dir("grid_straight");
  GridIoOptions io_straight;
  io_straight.out_dir = straight.string();
  grid_search(spec, 21, io_straight);

  const fs::path chunked = test_support::scratch_dir("grid_chunked");
  GridIoOptions io_first;
  io_first.out_dir = chunked.string();
  io_first.max_cells = 4;
  const GridSearchResult partial = grid_search(spec, 21, io_first);
  CHECK_FALSE(partial.complete);
  CHECK(partial.completed_cells == 4);
  CHECK_FALSE(fs::exists(chunked / "heatmap.csv"));

  GridIoOptions io_resume;
  io_resume.out_dir = chunked.string();
  io_resume.resume = true;
  const GridSearchResult full = grid_search(spec, 21, io_resume);
  CHECK(full.complete);

  CHECK(test_support::read_file(straight / "runs.csv") ==
        test_support::read_file(chunked / "runs.csv"));
  CHECK(test_support::read_file(straight / "heatmap.csv") ==
        test_support::read_file(chunked / "heatmap.csv"));
  fs::remove_all(straight);
  fs::remove_all(chunked);
}

TEST_CASE("resume trims a torn final line and recomputes that cell") {
  GridSpec spec = tiny_spec({-1.0, 1.0}, 2);

  const fs::path reference = test_support::scratch_dir("grid_ref");
  GridIoOptions io_ref;
  io_ref.out_dir = reference.string();
  grid_search(spec, 31, io_ref);

  const fs::path torn = test_support::scratch_dir("grid_torn");
  GridIoOptions io_torn;
  io_torn.out_dir = torn.string();
  io_torn.max_cells = 2;
  grid_search(spec, 31, io_torn);

  // Simulate a crash mid-append: half a row, no trailing newline.
  std::ofstream(torn / "runs.csv", std::ios::binary | std::ios::app) << "-1,1,31,123.4";

  GridIoOptions io_resume;
  io_resume.out_dir = torn.string();
  io_resume.resume = true;
  const GridSearchResult result = grid_search(spec, 31, io_resume);
  CHECK(result.complete);
  CHECK(test_support::read_file(reference / "runs.csv") ==
        test_support::read_file(torn / "runs.csv"));
  fs::remove_all(reference);
  fs::remove_all(torn);
}

TEST_CASE("resume rejects a results file from a different sweep") {
  GridSpec spec = tiny_spec({-1.0, 1.0}, 2);
  const fs::path dir = test_support::scratch_dir("grid_mismatch");
  GridIoOptions io;
  io.out_dir = dir.string();
  grid_search(spec, 41, io);

  GridIoOptions io_resume = io;
  io_resume.resume = true;

  GridSpec other_axis = tiny_spec({-0.5, 0.5}, 2);
  CHECK_THROWS_AS(grid_search(other_axis, 41, io_resume), std::runtime_error);

  // Different base seed no longer matches the persisted seeds.
  CHECK_THROWS_AS(grid_search(spec, 42, io_resume), std::runtime_error);

  // A foreign header is refused outright.
  std::ofstream(dir / "runs.csv", std::ios::binary | std::ios::trunc) << "a,b,c\n";
  CHECK_THROWS_AS(grid_search(spec, 41, io_resume), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("threaded sweeps reproduce the serial results byte for byte") {
  GridSpec spec = tiny_spec({-1.0, 0.0, 1.0}, 3);

  const fs::path serial = test_support::scratch_dir("grid_serial");
  GridIoOptions io_serial;
  io_serial.out_dir = serial.string();
  const auto serial_result = grid_search(spec, 51, io_serial, 1);

  const fs::path threaded = test_support::scratch_dir("grid_threaded");
  GridIoOptions io_threaded;
  io_threaded.out_dir = threaded.string();
  const auto threaded_result = grid_search(spec, 51, io_threaded, 4);

  CHECK(serial_result.best_index == threaded_result.best_index);
  for (size_t i = 0; i < serial_result.cells.size(); ++i) {
    CHECK(serial_result.cells[i].costs == threaded_result.cells[i].costs);
    CHECK(serial_result.cells[i].mean_cost == threaded_result.cells[i].mean_cost);
  }
  CHECK(test_support::read_file(serial / "runs.csv") ==
        test_support::read_file(threaded / "runs.csv"));
  CHECK(test_support::read_file(serial / "heatmap.csv") ==
        test_support::read_file(threaded / "heatmap.csv"));
  fs::remove_all(serial);
  fs::remove_all(threaded);
}

TEST_CASE("progress callback reports cells in completion order") {
  GridSpec spec = tiny_spec({-1.0, 1.0}, 1);
  std::vector<int64_t> seen;
  grid_search(spec, 61, {}, 1, [&](int64_t done, int64_t total) {
    CHECK(total == 4);
    seen.push_back(done);
  });
  CHECK(seen == std::vector<int64_t>{1, 2, 3, 4});
}
