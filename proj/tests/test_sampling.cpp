#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "polycert/errors.hpp"
#include "polycert/parser.hpp"
#include "polycert/sampling.hpp"
#include "support.hpp"

using namespace polycert;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) ==
        A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                      A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("sample_direction golden vector and determinism") {
  const auto v = sample_direction(42, 0, 2);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == 0.8959954087309475);
  CHECK(v[1] == 0.444063314779618);

  // Order of calls and neighbouring indices do not matter.
  sample_direction(42, 5, 7);
  CHECK(sample_direction(42, 0, 2) == v);
  CHECK(sample_direction(43, 0, 2) != v);
  CHECK(sample_direction(42, 1, 2) != v);

  std::vector<double> out(2);
  sample_direction_into(42, 0, out);
  CHECK(out == v);

  CHECK_THROWS_AS(sample_direction(1, 0, 0), InputError);
}

TEST_CASE("sampled directions are unit vectors") {
  for (std::size_t n : {1u, 2u, 3u, 5u, 10u, 33u}) {
    for (std::uint64_t i = 0; i < 2000; ++i) {
      const auto v = sample_direction(9, i, n);
      double s = 0.0;
      for (double x : v) s += x * x;
      CHECK(std::abs(std::sqrt(s) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("angles are uniform on the circle (chi-square, 36 bins)") {
  constexpr std::size_t kBins = 36, kSamples = 100000;
  std::vector<double> counts(kBins, 0.0);
  for (std::uint64_t i = 0; i < kSamples; ++i) {
    const auto v = sample_direction(7, i, 2);
    double a = std::atan2(v[1], v[0]);
    if (a < 0) a += 2 * std::numbers::pi;
    auto bin = static_cast<std::size_t>(a / (2 * std::numbers::pi) * kBins);
    counts[std::min(bin, kBins - 1)] += 1.0;
  }
  const double expected = static_cast<double>(kSamples) / kBins;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(kBins - 1);
  const double critical = boost::math::quantile(dist, 0.999);
  CHECK(critical == doctest::Approx(66.6188).epsilon(1e-5));
  CHECK(chi2 < critical);
}

TEST_CASE("coordinates have the moments of the uniform sphere") {
  // For uniform d on S^{n-1}: E[d_j] = 0, E[d_j^2] = 1/n.
  constexpr std::size_t n = 5, N = 40000;
  std::vector<double> m1(n), m2(n);
  for (std::uint64_t i = 0; i < N; ++i) {
    const auto v = sample_direction(3, i, n);
    for (std::size_t j = 0; j < n; ++j) {
      m1[j] += v[j];
      m2[j] += v[j] * v[j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(std::abs(m1[j] / N) < 0.01);
    CHECK(std::abs(m2[j] / N - 0.2) < 0.005);
  }
}

TEST_CASE("required_samples") {
  CHECK(required_samples(0.1, 0.01) == 44);
  CHECK(required_samples(0.5, 0.5) == 1);
  CHECK(required_samples(0.01, 0.001) == 688);
  CHECK(required_samples(0.999, 0.9) == 1);
  CHECK_THROWS_AS(required_samples(0.0, 0.1), InputError);
  CHECK_THROWS_AS(required_samples(1.0, 0.1), InputError);
  CHECK_THROWS_AS(required_samples(0.1, 0.0), InputError);
  CHECK_THROWS_AS(required_samples(0.1, 1.0), InputError);
}

TEST_CASE("residual_probability") {
  const double want = 0.010022595757618546;  // 0.75^16
  CHECK(std::abs(residual_probability(0.25, 16) - want) <= 1e-12 * want);
  CHECK(residual_probability(0.3, 0) == 1.0);
  CHECK(residual_probability(1.0, 1) == 0.0);
  CHECK(residual_probability(0.1, 1000) ==
        doctest::Approx(1.7478712517226947e-46).epsilon(1e-12));
  CHECK_THROWS_AS(residual_probability(0.0, 5), InputError);
  CHECK_THROWS_AS(residual_probability(1.5, 5), InputError);
}

TEST_CASE("residual_probability is strictly monotone") {
  for (double a : {0.001, 0.01, 0.1, 0.5, 0.9}) {
    double prev = residual_probability(a, 0);
    for (std::size_t n = 1; n <= 200; ++n) {
      const double cur = residual_probability(a, n);
      CHECK(cur < prev);
      prev = cur;
    }
  }
  for (std::size_t n : {1u, 10u, 100u}) {
    double prev = 1.0;
    for (double a = 0.01; a < 0.99; a += 0.01) {
      const double cur = residual_probability(a, n);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("required_samples achieves the requested confidence") {
  for (double a : {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5}) {
    for (double d : {0.001, 0.005, 0.01, 0.05, 0.1}) {
      const auto n = required_samples(a, d);
      CHECK(residual_probability(a, n) <= d);
      if (n > 1) CHECK(residual_probability(a, n - 1) > d);
    }
  }
}

TEST_CASE("Clopper-Pearson interval") {
  const auto half = clopper_pearson(5000, 10000);
  CHECK(half.lower == doctest::Approx(0.4901513805899815).epsilon(1e-9));
  CHECK(half.upper == doctest::Approx(0.5098486194100185).epsilon(1e-9));
  const auto none = clopper_pearson(0, 100);
  CHECK(none.lower == 0.0);
  CHECK(none.upper == doctest::Approx(0.03621669264517641).epsilon(1e-9));
  const auto all = clopper_pearson(100, 100);
  CHECK(all.upper == 1.0);
  CHECK(all.lower == doctest::Approx(1 - 0.03621669264517641).epsilon(1e-9));
  CHECK_THROWS_AS(clopper_pearson(5, 4), InputError);
}

TEST_CASE("estimate_alpha examples") {
  SampleConfig cfg;
  cfg.count = 10000;
  cfg.seed = 1;
  const auto quartic = estimate_alpha(testing::load_problem("quartic.pop"), cfg);
  CHECK(quartic.samples == 10000);
  CHECK(quartic.alpha_hat >= 0.48);
  CHECK(quartic.alpha_hat <= 0.52);
  CHECK(quartic.interval.lower <= quartic.alpha_hat);
  CHECK(quartic.interval.upper >= quartic.alpha_hat);

  const auto bowl = estimate_alpha(testing::load_problem("bowl.pop"), cfg);
  CHECK(bowl.hits == 0);
  CHECK(bowl.alpha_hat == 0.0);

  cfg.count = 100000;
  const auto example = estimate_alpha(testing::load_problem("degenerate_cones.pop"), cfg);
  CHECK(example.hits == 0);
}

TEST_CASE("estimate_alpha is independent of the thread count") {
  const auto problem = testing::load_problem("cubic3d.pop");
  SampleConfig cfg;
  cfg.count = 30001;
  cfg.seed = 99;
  cfg.threads = 1;
  const auto one = estimate_alpha(problem, cfg);
  for (unsigned t : {2u, 3u, 8u}) {
    cfg.threads = t;
    CHECK(estimate_alpha(problem, cfg).hits == one.hits);
  }
  CHECK(one.hits > 0);
  CHECK(one.hits < one.samples);
}

TEST_CASE("SampleConfig validation") {
  SampleConfig cfg;
  cfg.count = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg.count = 1;
  cfg.delta = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg.delta = 0.5;
  cfg.alpha_floor = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg.alpha_floor = 1.0;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("mix_seed spreads nearby seeds") {
  CHECK(mix_seed(0) != mix_seed(1));
  CHECK(mix_seed(1) != 1);
}
