#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "swarmsim/controller.hpp"
#include "swarmsim/oracle.hpp"
#include "swarmsim/physics.hpp"
#include "swarmsim/rng.hpp"
#include "swarmsim/world.hpp"

using namespace swarmsim;

namespace {

World world_with_robots(std::vector<Pose> poses, std::vector<int> groups, int group_count) {
  World world;
  world.group_count = group_count;
  for (size_t i = 0; i < poses.size(); ++i) {
    RobotBody r;
    r.id = static_cast<int>(i);
    r.group = groups[i];
    r.pose = poses[i];
    world.robots.push_back(r);
  }
  return world;
}

}  // namespace

TEST_CASE("equal wheel speeds translate straight along the heading") {
  const Pose out = integrate_differential_drive({{0.0, 0.0}, 0.0}, 10.0, 10.0, 5.3, 0.1);
  CHECK(out.position.x == doctest::Approx(1.0));
  CHECK(out.position.y == doctest::Approx(0.0));
  CHECK(out.orientation == 0.0);

  const double heading = 2.0;
  const Pose angled = integrate_differential_drive({{5.0, 5.0}, heading}, -4.0, -4.0, 5.3, 0.5);
  CHECK(angled.position.x == doctest::Approx(5.0 - 2.0 * std::cos(heading)));
  CHECK(angled.position.y == doctest::Approx(5.0 - 2.0 * std::sin(heading)));
  CHECK(angled.orientation == doctest::Approx(heading));
}

TEST_CASE("opposite wheel speeds spin in place") {
  const Pose out = integrate_differential_drive({{0.0, 0.0}, 0.0}, -6.4, 6.4, 5.3, 0.1);
  CHECK(out.position.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.position.y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(out.orientation == doctest::Approx(2.0 * 6.4 * 0.1 / 5.3));  // 0.241509...
}

TEST_CASE("curved motion matches fine-step Euler integration") {
  const Pose start{{0.0, 0.0}, 0.0};
  const Pose closed = integrate_differential_drive(start, 12.8, 6.4, 5.3, 0.1);
  const Pose euler = oracle::integrate_euler(start, 12.8, 6.4, 5.3, 0.1, 1e-6);
  CHECK(std::abs(closed.position.x - euler.position.x) < 1e-6);
  CHECK(std::abs(closed.position.y - euler.position.y) < 1e-6);
  CHECK(std::abs(closed.orientation - euler.orientation) < 1e-8);
}

TEST_CASE("closed-form kinematics tracks the Euler oracle over random inputs") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const Pose start{{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)},
                     rng.uniform(-kPi, kPi)};
    const double vl = rng.uniform(-12.8, 12.8);
    const double vr = rng.uniform(-12.8, 12.8);
    const double dt = rng.uniform(1e-4, 0.01);
    const Pose closed = integrate_differential_drive(start, vl, vr, 5.3, dt);
    const Pose euler = oracle::integrate_euler(start, vl, vr, 5.3, dt, 1e-6);
    CHECK(std::abs(closed.position.x - euler.position.x) < 1e-6);
    CHECK(std::abs(closed.position.y - euler.position.y) < 1e-6);
    CHECK(std::abs(normalize_angle(closed.orientation - euler.orientation)) < 1e-8);
  }
}

TEST_CASE("non-finite kinematics inputs are rejected") {
  const Pose p{{0.0, 0.0}, 0.0};
  CHECK_THROWS_AS(integrate_differential_drive(p, std::nan(""), 1.0, 5.3, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      integrate_differential_drive({{std::nan(""), 0.0}, 0.0}, 1.0, 1.0, 5.3, 0.1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      integrate_differential_drive(p, 1.0, 1.0, 5.3, std::numeric_limits<double>::infinity()),
      std::invalid_argument);
}

TEST_CASE("overlapping pair separates symmetrically") {
  World world = world_with_robots({{{50.0, 50.0}, 0.0}, {{56.0, 50.0}, 0.0}}, {0, 0}, 1);
  resolve_collisions(world, StepConfig{});
  CHECK(world.robots[0].pose.position.x == doctest::Approx(49.3));
  CHECK(world.robots[1].pose.position.x == doctest::Approx(56.7));
  CHECK(distance(world.robots[0].pose.position, world.robots[1].pose.position) ==
        doctest::Approx(7.4));
  // Each moved 0.7 cm outward, y untouched.
  CHECK(world.robots[0].pose.position.y == 50.0);
  CHECK(world.robots[1].pose.position.y == 50.0);
}

TEST_CASE("wall clamp projects the center back inside") {
  World world = world_with_robots({{{2.0, 50.0}, 0.0}}, {0}, 1);
  resolve_collisions(world, StepConfig{});
  CHECK(world.robots[0].pose.position.x == doctest::Approx(3.7));
  CHECK(world.robots[0].pose.position.y == 50.0);

  world.robots[0].pose.position = {449.0, 449.5};
  resolve_collisions(world, StepConfig{});
  CHECK(world.robots[0].pose.position.x == doctest::Approx(450.0 - 3.7));
  CHECK(world.robots[0].pose.position.y == doctest::Approx(450.0 - 3.7));
}

TEST_CASE("three-robot chain resolves under the penetration tolerance") {
  World world = world_with_robots(
      {{{50.0, 50.0}, 0.0}, {{55.0, 50.0}, 0.0}, {{60.0, 50.0}, 0.0}}, {0, 0, 0}, 1);
  resolve_collisions(world, StepConfig{});
  CHECK(max_pairwise_penetration(world) <= kPenetrationTolerance);
}

TEST_CASE("bollards are immovable; the robot takes the whole correction") {
  World world = world_with_robots({{{50.0, 50.0}, 0.0}}, {0}, 1);
  world.bollards.push_back(Bollard{0, Vec2{55.0, 50.0}, kRobotRadius});
  resolve_collisions(world, StepConfig{});
  CHECK(world.bollards[0].position == Vec2{55.0, 50.0});
  CHECK(world.robots[0].pose.position.x == doctest::Approx(55.0 - 7.4));
  CHECK(max_pairwise_penetration(world) <= kPenetrationTolerance);
}

TEST_CASE("zero controller leaves the world unchanged except for the tick") {
  World world = world_with_robots({{{100.0, 100.0}, 0.5}, {{200.0, 200.0}, -1.0}}, {0, 0}, 1);
  World before = world;
  step_control_cycle(world, ControllerParams{}, StepConfig{});
  CHECK(world.tick == before.tick + 1);
  CHECK(world.robots[0].pose == before.robots[0].pose);
  CHECK(world.robots[1].pose == before.robots[1].pose);
}

TEST_CASE("lone robot under the best controller backs up along a clockwise arc") {
  // Nothing ahead: wheels (-0.7, -1.0) * 12.8. Both negative with the left
  // wheel faster, so the robot reverses while its heading rotates clockwise.
  World world = world_with_robots({{{225.0, 225.0}, 0.0}}, {0}, 1);
  step_control_cycle(world, kBestController, StepConfig{});

  const Vec2 displacement = world.robots[0].pose.position - Vec2{225.0, 225.0};
  CHECK(dot(displacement, Vec2{1.0, 0.0}) < 0.0);       // moved backward
  CHECK(world.robots[0].pose.orientation < 0.0);        // turned clockwise
  CHECK(world.robots[0].wheel_speeds.left == doctest::Approx(-0.7 * 12.8));
  CHECK(world.robots[0].wheel_speeds.right == doctest::Approx(-12.8));
}

TEST_CASE("mutually visible same-group robots spin clockwise at full speed") {
  World world = world_with_robots(
      {{{100.0, 100.0}, 0.0}, {{150.0, 100.0}, -kPi}}, {0, 0}, 1);
  step_control_cycle(world, kBestController, StepConfig{});
  for (const RobotBody& r : world.robots) {
    CHECK(r.wheel_speeds.left == doctest::Approx(12.8));
    CHECK(r.wheel_speeds.right == doctest::Approx(-12.8));
  }
  // Spin in place: positions essentially unchanged, headings decreased.
  CHECK(world.robots[0].pose.position.x == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(world.robots[0].pose.orientation < 0.0);
}

TEST_CASE("sensing snapshots precede actuation within a cycle") {
  // A sees B ahead (same group); B sees nothing. If updates interleaved with
  // sensing, B's spin could change what A reads. Wheel speeds must reflect
  // the pre-step snapshot only.
  World world = world_with_robots(
      {{{100.0, 100.0}, 0.0}, {{130.0, 100.0}, kPi / 2.0}}, {0, 0}, 1);
  const auto readings = sense_all(world);
  World stepped = world;
  step_control_cycle(stepped, kBestController, StepConfig{});
  for (size_t i = 0; i < world.robots.size(); ++i) {
    const auto expected =
        to_wheel_speeds(actuate(kBestController, readings[i]), StepConfig{}.max_speed);
    CHECK(stepped.robots[i].wheel_speeds == expected);
  }
}

TEST_CASE("trajectories are bit-identical across reruns") {
  World a = world_with_robots({{{100.0, 100.0}, 0.3},
                               {{120.0, 110.0}, 2.0},
                               {{140.0, 90.0}, -2.5},
                               {{110.0, 130.0}, 1.0}},
                              {0, 0, 1, 1}, 2);
  a.bollards.push_back(Bollard{0, Vec2{200.0, 200.0}, kRobotRadius});
  a.bollards.push_back(Bollard{1, Vec2{250.0, 200.0}, kRobotRadius});
  World b = a;
  const StepConfig cfg;
  for (int t = 0; t < 1000; ++t) {
    step_control_cycle(a, kBestController, cfg);
    step_control_cycle(b, kBestController, cfg);
  }
  CHECK(a == b);
}

TEST_CASE("per-cycle displacement respects the speed cap when unobstructed") {
  World world = world_with_robots({{{225.0, 225.0}, 1.1}}, {0}, 1);
  const StepConfig cfg;
  for (int t = 0; t < 200; ++t) {
    const Vec2 before = world.robots[0].pose.position;
    step_control_cycle(world, kBestController, cfg);
    CHECK(distance(before, world.robots[0].pose.position) <=
          cfg.max_speed * cfg.control_dt + 1e-9);
  }
}
