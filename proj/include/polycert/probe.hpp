#pragma once

// Heuristic search of the measure-zero strata where certifying directions
// can hide from uniform sampling.
//
// For a subset S of [m]+, a direction d lies on the stratum when the top
// forms phi_{i,p_i}(d) vanish for i in S and are strictly negative for
// i not in S. The penalty
//
//   P_S(d) = sum_{i in S} phi_i(d)^2 + sum_{i not in S} max(0, phi_i(d) + margin)^2
//
// is minimized over the unit sphere by projected gradient descent from
// seeded random starts. Every candidate is later screened by the same
// certificate check used for sampled directions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polycert/asymptotics.hpp"

namespace polycert {

struct ProbeConfig {
  std::size_t restarts = 32;
  std::size_t max_iterations = 500;
  double initial_step = 0.1;
  double convergence_tol = 1e-14;
  std::size_t subset_cap = 10;
  double margin = 1e-6;

  void validate() const;
};

/// Membership mask over [m]+ (size m + 1).
using Subset = std::vector<bool>;

/// All subsets when count <= cap; otherwise the empty set, singletons and
/// the full set. Deterministic order.
std::vector<Subset> probe_subsets(std::size_t count, std::size_t cap);

double penalty(const CompiledProblem& problem, const Subset& subset,
               std::span<const double> d, double margin);

/// (I - d d^T) grad P_S(d).
std::vector<double> penalty_tangent_gradient(const CompiledProblem& problem,
                                             const Subset& subset,
                                             std::span<const double> d,
                                             double margin);

struct DescentResult {
  std::vector<double> direction;
  double penalty = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  /// Penalty after each accepted step, starting with the initial value.
  std::vector<double> history;
};

/// One restart: projected gradient descent with step doubling on success and
/// halving on failure, then (if converged and S is nonempty) Gauss-Newton
/// polishing of the vanishing forms. The penalty never increases.
DescentResult descend(const CompiledProblem& problem, const Subset& subset,
                      std::span<const double> start, const ProbeConfig& config);

/// Converged terminal directions over all subsets and restarts, deduplicated
/// at angular distance 1e-6 and sorted lexicographically.
std::vector<std::vector<double>> find_candidates(const CompiledProblem& problem,
                                                 const ProbeConfig& config,
                                                 std::uint64_t seed,
                                                 unsigned threads = 1);

double angular_distance(std::span<const double> a, std::span<const double> b);

}  // namespace polycert
