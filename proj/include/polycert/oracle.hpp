#pragma once

// Brute-force cross-checks for low-dimensional problems: grid measurement of
// the certifying-direction measure alpha, and direct evaluation of the
// original polynomials along a claimed certificate ray.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polycert/asymptotics.hpp"
#include "polycert/problem.hpp"

namespace polycert {

struct GridSpec {
  std::size_t dimension = 2;
  /// n = 2: number of angles on the circle. n = 3: number of equal-area
  /// z-bands and of azimuth steps per band.
  std::size_t resolution = 100000;

  static GridSpec defaults_for(std::size_t dimension);
  void validate() const;
};

/// Measure-weighted fraction of grid directions passing certificate_check.
/// Every cell has equal measure, so this is a plain fraction.
double grid_alpha(const Problem& problem, const GridSpec& spec,
                  const Tolerance& tol = {});

struct RayCheck {
  bool ok = true;
  std::optional<std::size_t> polynomial;  // violating g_i, 0 = objective
  double t = 0.0;
  std::string reason;
};

/// Checks g_i(t d) < 0 for all i in [m]+ at t in {T, 2T, 10T, 100T, 1000T},
/// and f strictly decreasing over {10T, 100T, 1000T}.
RayCheck verify_ray(const Problem& problem, std::span<const double> d, double T);

struct BallMinimum {
  bool feasible_point_found = false;
  double value = 0.0;
  std::vector<double> argmin;
  std::size_t grid_points = 0;
};

/// Brute-force minimum of the objective over feasible points of a uniform
/// grid (spacing `step`) inside the ball ||x|| <= radius. n = 2 or 3 only.
BallMinimum grid_minimum_in_ball(const Problem& problem, double radius, double step);

}  // namespace polycert
