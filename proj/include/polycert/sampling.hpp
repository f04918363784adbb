#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polycert/asymptotics.hpp"
#include "polycert/problem.hpp"

namespace polycert {

struct SampleConfig {
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  std::optional<double> delta;        // confidence level, in (0, 1)
  std::optional<double> alpha_floor;  // assumed minimum alpha, in (0, 1]
  unsigned threads = 0;               // 0 = hardware concurrency

  void validate() const;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Uniform unit vector for (seed, index): normalized standard normals drawn
/// from the Philox block stream keyed by `seed`, counter = (index, block).
/// Independent of call order and thread layout.
std::vector<double> sample_direction(std::uint64_t seed, std::uint64_t index,
                                     std::size_t dimension);

/// Allocation-free variant; `out.size()` is the dimension.
void sample_direction_into(std::uint64_t seed, std::uint64_t index,
                           std::span<double> out);

/// ceil(ln delta / ln(1 - alpha)), at least 1.
std::size_t required_samples(double alpha, double delta);

/// (1 - alpha_floor)^N, computed as exp(N ln(1 - alpha_floor)).
double residual_probability(double alpha_floor, std::size_t samples);

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

/// Exact (Clopper-Pearson) binomial interval at the given two-sided level.
Interval clopper_pearson(std::size_t hits, std::size_t trials,
                         double confidence = 0.95);

struct AlphaEstimate {
  std::size_t hits = 0;
  std::size_t samples = 0;
  double alpha_hat = 0.0;
  Interval interval;
};

/// Monte Carlo estimate of the certifying-direction measure alpha over the
/// same direction stream run_certificate uses.
AlphaEstimate estimate_alpha(const Problem& problem, const SampleConfig& config,
                             const Tolerance& tol = {});
AlphaEstimate estimate_alpha(const CompiledProblem& problem,
                             const SampleConfig& config, const Tolerance& tol);

/// SplitMix64 finalizer; used to derive independent keys from a seed.
std::uint64_t mix_seed(std::uint64_t seed) noexcept;

}  // namespace polycert
