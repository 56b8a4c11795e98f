#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "swarmsim/geometry.hpp"
#include "swarmsim/rng.hpp"
#include "swarmsim/scenario.hpp"
#include "swarmsim/world.hpp"

using namespace swarmsim;

namespace {

World three_robot_world() {
  World world;
  world.group_count = 2;
  for (int i = 0; i < 3; ++i) {
    RobotBody r;
    r.id = i;
    r.group = i < 2 ? 0 : 1;
    r.pose.position = {50.0 + 10.0 * i, 50.0};
    world.robots.push_back(r);
  }
  return world;
}

}  // namespace

TEST_CASE("Vec2 arithmetic and norms") {
  const Vec2 a{3.0, 4.0};
  CHECK(norm(a) == doctest::Approx(5.0));
  CHECK(norm_sq(a) == 25.0);
  CHECK(dot(a, Vec2{1.0, 0.0}) == 3.0);
  CHECK((a + Vec2{1.0, 1.0}) == Vec2{4.0, 5.0});
  CHECK((a - a) == Vec2{0.0, 0.0});
  CHECK((a * 2.0) == Vec2{6.0, 8.0});
  CHECK(distance(Vec2{0.0, 0.0}, a) == doctest::Approx(5.0));
  CHECK(is_finite(a));
  CHECK_FALSE(is_finite(Vec2{std::nan(""), 0.0}));
}

TEST_CASE("normalize_angle maps into [-pi, pi) with pi exclusive") {
  CHECK(normalize_angle(0.0) == 0.0);
  CHECK(normalize_angle(kPi) == doctest::Approx(-kPi));
  CHECK(normalize_angle(-kPi) == doctest::Approx(-kPi));
  CHECK(normalize_angle(2.0 * kPi) == doctest::Approx(0.0));
  CHECK(normalize_angle(3.0 * kPi) == doctest::Approx(-kPi));
  CHECK(normalize_angle(-7.5 * kPi) == doctest::Approx(0.5 * kPi));

  SplitMix64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.uniform(-1000.0, 1000.0);
    const double n = normalize_angle(a);
    CHECK(n >= -kPi);
    CHECK(n < kPi);
    // Same direction modulo full turns.
    CHECK(std::abs(normalize_angle(n - a)) < 1e-9);
  }
}

TEST_CASE("robots_of_group filters by group in id order") {
  const World world = three_robot_world();
  CHECK(robots_of_group(world, 0) == std::vector<int>{0, 1});
  CHECK(robots_of_group(world, 1) == std::vector<int>{2});
  CHECK_THROWS_AS(robots_of_group(world, 2), std::out_of_range);
  CHECK_THROWS_AS(robots_of_group(world, -1), std::out_of_range);
}

TEST_CASE("robots_of_group partitions a balanced 75-robot world") {
  ScenarioConfig cfg;
  cfg.g = 3;
  cfg.n_per_group = 25;
  cfg.seed = 3;
  const World world = generate_scenario(cfg);

  std::set<int> seen;
  for (int k = 0; k < 3; ++k) {
    const auto members = robots_of_group(world, k);
    CHECK(members.size() == 25);
    CHECK(std::is_sorted(members.begin(), members.end()));
    for (int idx : members) {
      CHECK(world.robots[static_cast<size_t>(idx)].group == k);
      CHECK(seen.insert(idx).second);  // disjoint across groups
    }
  }
  CHECK(seen.size() == 75);  // union covers every robot
}

TEST_CASE("overlap returns signed penetration depth") {
  const double r = kRobotRadius;
  CHECK(overlap(Vec2{0.0, 0.0}, r, Vec2{10.0, 0.0}, r) == doctest::Approx(-2.6));
  CHECK(overlap(Vec2{5.0, 5.0}, r, Vec2{5.0, 5.0}, r) == doctest::Approx(7.4));
  CHECK(overlap(Vec2{0.0, 0.0}, r, Vec2{7.4, 0.0}, r) == doctest::Approx(0.0));
}

TEST_CASE("world finiteness and arena containment checks") {
  World world = three_robot_world();
  CHECK(world_is_finite(world));
  CHECK(all_robots_inside_arena(world));

  world.robots[0].pose.position.x = 2.0;  // closer to the wall than one radius
  CHECK_FALSE(all_robots_inside_arena(world));

  world.robots[0].pose.position.x = std::numeric_limits<double>::infinity();
  CHECK_FALSE(world_is_finite(world));
}

TEST_CASE("max_pairwise_penetration scans robots and bollards") {
  World world;
  world.group_count = 1;
  RobotBody a;
  a.id = 0;
  a.pose.position = {50.0, 50.0};
  RobotBody b = a;
  b.id = 1;
  b.pose.position = {56.0, 50.0};  // 6 cm apart: 1.4 cm penetration
  world.robots = {a, b};
  CHECK(max_pairwise_penetration(world) == doctest::Approx(1.4));

  world.bollards.push_back(Bollard{0, Vec2{50.0, 52.0}, kRobotRadius});
  CHECK(max_pairwise_penetration(world) == doctest::Approx(5.4));
}
