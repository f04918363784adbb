#include "polycert/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "polycert/errors.hpp"

namespace polycert {

GridSpec GridSpec::defaults_for(std::size_t dimension) {
  return GridSpec{dimension, dimension == 3 ? std::size_t{1000} : std::size_t{100000}};
}

void GridSpec::validate() const {
  if (dimension != 2 && dimension != 3) {
    throw InputError("grid oracle supports dimension 2 or 3 only, got " +
                     std::to_string(dimension));
  }
  if (resolution < 8) throw InputError("grid resolution must be at least 8");
}

double grid_alpha(const Problem& problem, const GridSpec& spec,
                  const Tolerance& tol) {
  spec.validate();
  if (problem.dimension() != spec.dimension) {
    throw InputError("grid dimension does not match the problem dimension");
  }
  std::vector<HomogeneousDecomposition> decs;
  for (const auto& p : problem.polynomials()) decs.push_back(decompose(p));
  std::vector<DirectionalProfile> profiles(decs.size());
  auto passes = [&](std::span<const double> d) {
    for (std::size_t i = 0; i < decs.size(); ++i) profiles[i] = classify(decs[i], d, tol);
    return certificate_check(profiles, tol);
  };

  const std::size_t r = spec.resolution;
  const double two_pi = 2.0 * std::numbers::pi;
  std::size_t hits = 0;
  std::size_t cells = 0;
  if (spec.dimension == 2) {
    for (std::size_t j = 0; j < r; ++j) {
      const double theta = two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(r);
      const std::array<double, 2> d{std::cos(theta), std::sin(theta)};
      hits += passes(d) ? 1 : 0;
      ++cells;
    }
  } else {
    // Archimedes: equal z-bands have equal area on S^2.
    for (std::size_t b = 0; b < r; ++b) {
      const double z = -1.0 + 2.0 * (static_cast<double>(b) + 0.5) / static_cast<double>(r);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (std::size_t j = 0; j < r; ++j) {
        const double phi = two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(r);
        std::array<double, 3> d{rho * std::cos(phi), rho * std::sin(phi), z};
        const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        for (double& v : d) v /= norm;
        hits += passes(d) ? 1 : 0;
        ++cells;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(cells);
}

RayCheck verify_ray(const Problem& problem, std::span<const double> d, double T) {
  RayCheck out;
  if (d.size() != problem.dimension()) {
    out.ok = false;
    out.reason = "direction length does not match the problem dimension";
    return out;
  }
  if (!(T > 0.0) || !std::isfinite(T)) {
    out.ok = false;
    out.reason = "threshold must be positive and finite";
    return out;
  }
  const std::array<double, 5> ladder{T, 2 * T, 10 * T, 100 * T, 1000 * T};
  std::array<double, 5> objective{};
  std::vector<double> x(d.size());
  const auto& polys = problem.polynomials();
  for (std::size_t s = 0; s < ladder.size(); ++s) {
    const double t = ladder[s];
    for (std::size_t j = 0; j < d.size(); ++j) x[j] = t * d[j];
    // Constraints first, so a violation names the infeasibility.
    for (std::size_t k = 1; k <= polys.size(); ++k) {
      const std::size_t i = k % polys.size();
      const double v = polys[i].evaluate(x);
      if (i == 0) objective[s] = v;
      if (!(v < 0.0)) {
        out.ok = false;
        out.polynomial = i;
        out.t = t;
        out.reason = (i == 0 ? std::string("objective") : "constraint " + std::to_string(i)) +
                     " is not negative at t = " + std::to_string(t);
        return out;
      }
    }
  }
  for (std::size_t s = 3; s < ladder.size(); ++s) {
    if (!(objective[s] < objective[s - 1])) {
      out.ok = false;
      out.polynomial = 0;
      out.t = ladder[s];
      out.reason = "objective does not decrease at t = " + std::to_string(ladder[s]);
      return out;
    }
  }
  return out;
}

BallMinimum grid_minimum_in_ball(const Problem& problem, double radius, double step) {
  const std::size_t n = problem.dimension();
  if (n != 2 && n != 3) throw InputError("ball grid supports dimension 2 or 3 only");
  if (!(radius > 0.0) || !(step > 0.0)) throw InputError("radius and step must be positive");
  const auto k = static_cast<long>(std::floor(radius / step));
  BallMinimum out;
  std::vector<double> x(n, 0.0);
  const auto& polys = problem.polynomials();
  auto visit = [&] {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    if (sq > radius * radius) return;
    ++out.grid_points;
    for (std::size_t i = 1; i < polys.size(); ++i) {
      if (polys[i].evaluate(x) > 0.0) return;
    }
    const double f = polys[0].evaluate(x);
    if (!out.feasible_point_found || f < out.value) {
      out.feasible_point_found = true;
      out.value = f;
      out.argmin = x;
    }
  };
  const long kz = n == 3 ? k : 0;
  for (long a = -k; a <= k; ++a) {
    for (long b = -k; b <= k; ++b) {
      for (long c = -kz; c <= kz; ++c) {
        x[0] = static_cast<double>(a) * step;
        x[1] = static_cast<double>(b) * step;
        if (n == 3) x[2] = static_cast<double>(c) * step;
        visit();
      }
    }
  }
  return out;
}

}  // namespace polycert
