#include "polycert/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/distributions/beta.hpp>

#include "polycert/errors.hpp"
#include "polycert/parallel.hpp"

namespace polycert {

void SampleConfig::validate() const {
  if (count < 1) throw InputError("sample count must be at least 1");
  if (delta && !(*delta > 0.0 && *delta < 1.0)) {
    throw InputError("delta must lie in (0, 1)");
  }
  if (alpha_floor && !(*alpha_floor > 0.0 && *alpha_floor <= 1.0)) {
    throw InputError("alpha floor must lie in (0, 1]");
  }
}

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
  const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

// Uniform in the open interval (0, 1) with 53 random bits.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (std::uint64_t{hi} << 32) | lo;
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) {
  philox_round(counter, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
    philox_round(counter, key);
  }
  return counter;
}

std::uint64_t mix_seed(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void sample_direction_into(std::uint64_t seed, std::uint64_t index,
                           std::span<double> out) {
  const std::size_t n = out.size();
  if (n == 0) throw InputError("sphere dimension must be at least 1");
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed),
                                         static_cast<std::uint32_t>(seed >> 32)};
  std::uint32_t block = 0;
  for (;;) {
    double sq = 0.0;
    for (std::size_t j = 0; j < n; j += 2, ++block) {
      const auto r = philox4x32_10(
          {static_cast<std::uint32_t>(index),
           static_cast<std::uint32_t>(index >> 32), block, 0u},
          key);
      // Box-Muller: one block -> two independent standard normals
      const double u1 = to_open_unit(r[0], r[1]);
      const double u2 = to_open_unit(r[2], r[3]);
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      out[j] = radius * std::cos(angle);
      if (j + 1 < n) out[j + 1] = radius * std::sin(angle);
    }
    for (double v : out) sq += v * v;
    if (sq > 0.0) {
      const double norm = std::sqrt(sq);
      for (double& v : out) v /= norm;
      return;
    }
    // all-zero draw: continue with fresh blocks of the same (seed, index)
  }
}

std::vector<double> sample_direction(std::uint64_t seed, std::uint64_t index,
                                     std::size_t dimension) {
  if (dimension == 0) throw InputError("sphere dimension must be at least 1");
  std::vector<double> out(dimension);
  sample_direction_into(seed, index, out);
  return out;
}

std::size_t required_samples(double alpha, double delta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
  const double n = std::ceil(std::log(delta) / std::log1p(-alpha));
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

double residual_probability(double alpha_floor, std::size_t samples) {
  if (!(alpha_floor > 0.0 && alpha_floor <= 1.0)) {
    throw InputError("alpha floor must lie in (0, 1]");
  }
  if (samples == 0) return 1.0;
  if (alpha_floor == 1.0) return 0.0;
  return std::exp(static_cast<double>(samples) * std::log1p(-alpha_floor));
}

Interval clopper_pearson(std::size_t hits, std::size_t trials,
                         double confidence) {
  if (trials == 0) throw InputError("Clopper-Pearson interval needs trials > 0");
  if (hits > trials) throw InputError("hits exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InputError("confidence must lie in (0, 1)");
  }
  const double tail = (1.0 - confidence) / 2.0;
  const auto k = static_cast<double>(hits);
  const auto n = static_cast<double>(trials);
  Interval ci;
  ci.lower = hits == 0
                 ? 0.0
                 : boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1.0), tail);
  ci.upper = hits == trials
                 ? 1.0
                 : boost::math::quantile(boost::math::beta_distribution<>(k + 1.0, n - k),
                                         1.0 - tail);
  return ci;
}

AlphaEstimate estimate_alpha(const CompiledProblem& problem,
                             const SampleConfig& config, const Tolerance& tol) {
  config.validate();
  tol.validate();
  const unsigned threads = resolve_threads(config.threads);
  std::vector<std::size_t> per_worker(threads, 0);
  parallel_chunks(config.count, 4096, threads,
                  [&](std::size_t begin, std::size_t end, unsigned worker) {
                    auto ws = problem.make_workspace();
                    std::vector<double> d(problem.dimension());
                    std::size_t hits = 0;
                    for (std::size_t i = begin; i < end; ++i) {
                      sample_direction_into(config.seed, i, d);
                      if (problem.certifies(d, tol, ws)) ++hits;
                    }
                    per_worker[worker] += hits;
                  });
  AlphaEstimate est;
  est.samples = config.count;
  for (auto h : per_worker) est.hits += h;
  est.alpha_hat = static_cast<double>(est.hits) / static_cast<double>(est.samples);
  est.interval = clopper_pearson(est.hits, est.samples);
  return est;
}

AlphaEstimate estimate_alpha(const Problem& problem, const SampleConfig& config,
                             const Tolerance& tol) {
  return estimate_alpha(CompiledProblem(problem), config, tol);
}

}  // namespace polycert
