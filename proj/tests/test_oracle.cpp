#include <doctest.h>

#include <cmath>

#include "polycert/errors.hpp"
#include "polycert/oracle.hpp"
#include "polycert/parser.hpp"
#include "polycert/sampling.hpp"
#include "support.hpp"

using namespace polycert;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("grid_alpha examples") {
  const auto quartic = testing::load_problem("quartic.pop");
  CHECK(std::abs(grid_alpha(quartic, GridSpec::defaults_for(2)) - 0.5) <= 1e-4);
  CHECK(grid_alpha(testing::load_problem("bowl.pop"), GridSpec::defaults_for(2)) == 0.0);
  CHECK(std::abs(grid_alpha(testing::load_problem("halfplane.pop"), GridSpec::defaults_for(2)) -
                 0.5) <= 1e-4);
  CHECK(std::abs(grid_alpha(testing::load_problem("quadrant.pop"), GridSpec::defaults_for(2)) -
                 0.25) <= 1e-4);
  CHECK(grid_alpha(testing::load_problem("degenerate_cones.pop"), GridSpec::defaults_for(2)) == 0.0);
}

TEST_CASE("grid_alpha on the 2-sphere") {
  // -x3 certifies on the upper hemisphere; -x1 - x2 - x3 with x1, x2 <= 0
  // constraints is a spherical wedge of measure 1/8 cut by the plane.
  GridSpec spec = GridSpec::defaults_for(3);
  CHECK(spec.resolution == 1000);
  spec.resolution = 400;
  const auto hemi = parse_problem("dim 3\nobjective: -x3\n");
  CHECK(std::abs(grid_alpha(hemi, spec) - 0.5) <= 1e-3);
  const auto octant = parse_problem("dim 3\nobjective: -x1\nconstraint: -x2\nconstraint: -x3\n");
  CHECK(std::abs(grid_alpha(octant, spec) - 0.125) <= 2e-3);
  CHECK(grid_alpha(testing::load_problem("ball.pop"), spec) == 0.0);
}

TEST_CASE("grid spec validation") {
  GridSpec spec;
  spec.dimension = 4;
  CHECK_THROWS_AS(spec.validate(), InputError);
  spec.dimension = 2;
  spec.resolution = 7;
  CHECK_THROWS_AS(spec.validate(), InputError);
  CHECK_THROWS_AS(grid_alpha(parse_problem("dim 4\nobjective: -x1\n"), GridSpec{4, 100}),
                  InputError);
}

TEST_CASE("verify_ray examples") {
  const auto example = testing::load_problem("degenerate_cones.pop");
  CHECK(verify_ray(example, std::vector<double>{kS, kS}, 2.0).ok);

  const auto axis = verify_ray(example, std::vector<double>{1, 0}, 2.0);
  CHECK_FALSE(axis.ok);
  CHECK(axis.polynomial == std::optional<std::size_t>(1));
  CHECK(axis.t == 2.0);

  const auto sq = verify_ray(parse_problem("dim 2\nobjective: x1^2\n"),
                             std::vector<double>{1, 0}, 1.0);
  CHECK_FALSE(sq.ok);
  CHECK(sq.polynomial == std::optional<std::size_t>(0));
}

TEST_CASE("verify_ray requires strict descent") {
  // f(t d) = -1 is negative but constant along the ray.
  const auto flat = parse_problem("dim 2\nobjective: x2 - 1\n");
  CHECK_FALSE(verify_ray(flat, std::vector<double>{1, 0}, 1.0).ok);
}

TEST_CASE("grid and Monte Carlo agree") {
  SampleConfig cfg;
  cfg.count = 100000;
  cfg.seed = 2;
  for (const char* file : {"bowl.pop", "quadrant.pop", "quartic.pop", "halfplane.pop"}) {
    const auto problem = testing::load_problem(file);
    const double grid = grid_alpha(problem, GridSpec::defaults_for(2));
    const double mc = estimate_alpha(problem, cfg).alpha_hat;
    CHECK_MESSAGE(std::abs(grid - mc) <= 0.01, file);
  }
}

TEST_CASE("grid minimum in a ball") {
  const auto bowl = testing::load_problem("bowl.pop");
  const auto m = grid_minimum_in_ball(bowl, 2.0, 0.1);
  CHECK(m.feasible_point_found);
  CHECK(m.value == doctest::Approx(0.0).scale(1.0));
  const auto lin = grid_minimum_in_ball(testing::load_problem("halfplane.pop"), 1.0, 0.05);
  CHECK(lin.value == doctest::Approx(-1.0).epsilon(1e-9));
}
