#include <doctest.h>

#include <cmath>
#include <random>

#include "polycert/certify.hpp"
#include "polycert/errors.hpp"
#include "polycert/oracle.hpp"
#include "polycert/parser.hpp"
#include "support.hpp"

using namespace polycert;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

RunOptions samples(std::size_t n, std::uint64_t seed, unsigned threads = 1) {
  RunOptions o;
  o.sampling.count = n;
  o.sampling.seed = seed;
  o.sampling.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("example problem with a user direction") {
  const auto problem = testing::load_problem("degenerate_cones.pop");
  auto opts = samples(10, 0);
  opts.extra_directions = {{1.0, 1.0}};
  const auto out = run_certificate(problem, opts);
  REQUIRE(out.unbounded());
  const auto& c = out.certificate();
  CHECK(c.origin == DirectionOrigin{DirectionSource::User, 0});
  CHECK(c.direction[0] == doctest::Approx(kS));
  CHECK(c.direction[1] == doctest::Approx(kS));
  REQUIRE(c.profiles.size() == 3);
  CHECK(c.profiles[0].mu == 3);
  CHECK(c.profiles[1].mu == 4);
  CHECK(c.profiles[2].mu == 2);
  CHECK(c.profiles[0].leading_value == doctest::Approx(-0.353553).epsilon(1e-6));
  CHECK(c.profiles[1].leading_value == doctest::Approx(-0.25));
  CHECK(c.profiles[2].leading_value == doctest::Approx(-1.0));
  CHECK(c.witness_T == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(c.robustness.robust);
  CHECK(c.robustness.vanishing_indices == std::vector<std::size_t>{0});
  CHECK(verify_ray(problem, c.direction, c.witness_T).ok);
}

TEST_CASE("example problem defeats uniform sampling") {
  const auto problem = testing::load_problem("degenerate_cones.pop");
  const auto out = run_certificate(problem, samples(100000, 1));
  REQUIRE_FALSE(out.unbounded());
  const auto& inc = out.inconclusive();
  CHECK(inc.samples_used == 100000);
  REQUIRE(inc.residual_table.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(inc.residual_table[k].alpha == kResidualGrid[k]);
    CHECK(inc.residual_table[k].probability ==
          residual_probability(kResidualGrid[k], 100000));
    CHECK_FALSE(inc.residual_table[k].required_samples.has_value());
  }
}

TEST_CASE("indefinite quartic certifies robustly from samples") {
  const auto problem = testing::load_problem("quartic.pop");
  const auto out = run_certificate(problem, samples(64, 1));
  REQUIRE(out.unbounded());
  const auto& c = out.certificate();
  CHECK(c.origin.source == DirectionSource::Sample);
  CHECK(c.robustness.robust);
  CHECK(c.robustness.vanishing_indices.empty());
  CHECK(std::abs(c.direction[1]) > std::abs(c.direction[0]));
  // The winner is the lowest certifying index of the stream.
  for (std::size_t i = 0; i < c.origin.index; ++i) {
    const auto d = sample_direction(1, i, 2);
    CHECK(std::abs(d[1]) <= std::abs(d[0]));
  }
  CHECK(verify_ray(problem, c.direction, c.witness_T).ok);
}

TEST_CASE("coercive objective is inconclusive with the closed-form residual") {
  const auto out = run_certificate(testing::load_problem("bowl.pop"), samples(1000, 0));
  REQUIRE_FALSE(out.unbounded());
  const auto& row = out.inconclusive().residual_table.front();
  CHECK(row.alpha == 0.1);
  CHECK(row.probability == doctest::Approx(std::pow(0.9, 1000)).epsilon(1e-12));
}

TEST_CASE("residual table options") {
  const auto table = residual_table(100, 0.2, 0.01);
  REQUIRE(table.size() == 5);
  CHECK(table.back().alpha == 0.2);
  CHECK(table[0].required_samples == std::optional<std::size_t>(44));
  CHECK(table[3].required_samples == std::optional<std::size_t>(4603));
  CHECK(residual_table(100, 0.1, std::nullopt).size() == 4);  // already on the grid
}

TEST_CASE("classify_robustness examples") {
  const CompiledProblem example(testing::load_problem("degenerate_cones.pop"));
  const auto deg = classify_robustness(example, std::vector<double>{kS, kS});
  CHECK_FALSE(deg.robust);
  CHECK(deg.vanishing_indices == std::vector<std::size_t>{0});

  const CompiledProblem quartic(testing::load_problem("quartic.pop"));
  CHECK(classify_robustness(quartic, std::vector<double>{0, 1}).robust);

  const CompiledProblem linear(parse_problem("dim 2\nobjective: -x1\n"));
  CHECK(classify_robustness(linear, std::vector<double>{1, 0}).robust);

  // A top form that is positive (not just zero) is also listed.
  const CompiledProblem mixed(parse_problem("dim 2\nobjective: -x1\nconstraint: x2^2 - x1\n"));
  const auto r = classify_robustness(mixed, std::vector<double>{0.6, 0.8});
  CHECK(r.vanishing_indices == std::vector<std::size_t>{1});
}

TEST_CASE("each polynomial is decomposed once per run") {
  for (const char* file : {"degenerate_cones.pop", "quartic.pop", "cubic3d.pop", "ball.pop"}) {
    const auto problem = testing::load_problem(file);
    auto opts = samples(5000, 4);
    opts.extra_directions = {std::vector<double>(problem.dimension(), 1.0)};
    opts.probe = ProbeConfig{};
    opts.probe->restarts = 2;
    opts.probe->max_iterations = 50;
    const auto before = decomposition_count();
    const auto out = run_certificate(problem, opts);
    CHECK(decomposition_count() - before == problem.polynomials().size());
    CHECK(out.stats.decompositions == problem.polynomials().size());
  }
}

TEST_CASE("robust certificates survive small perturbations") {
  std::mt19937_64 rng(12);
  int robust_seen = 0;
  for (const char* file : {"quartic.pop", "halfplane.pop", "quadrant.pop", "cubic3d.pop"}) {
    const auto problem = testing::load_problem(file);
    const CompiledProblem compiled(problem);
    auto ws = compiled.make_workspace();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto out = run_certificate(problem, samples(2000, seed));
      REQUIRE(out.unbounded());
      if (!out.certificate().robustness.robust) continue;
      ++robust_seen;
      const auto& d = out.certificate().direction;
      for (int k = 0; k < 100; ++k) {
        const auto u = testing::random_unit(rng, d.size());
        std::vector<double> p(d);
        for (std::size_t j = 0; j < d.size(); ++j) p[j] += 1e-4 * u[j];
        CHECK(compiled.certifies(normalized(p), Tolerance{}, ws));
      }
    }
  }
  CHECK(robust_seen >= 15);
}

TEST_CASE("outcome does not depend on the thread count") {
  for (const char* file : {"quartic.pop", "cubic3d.pop", "quadrant.pop", "bowl.pop"}) {
    const auto problem = testing::load_problem(file);
    for (std::uint64_t seed : {0u, 5u, 17u}) {
      const auto one = run_certificate(problem, samples(50000, seed, 1));
      const auto many = run_certificate(problem, samples(50000, seed, 8));
      REQUIRE(one.unbounded() == many.unbounded());
      if (one.unbounded()) {
        CHECK(one.certificate().origin == many.certificate().origin);
        CHECK(one.certificate().direction == many.certificate().direction);
        CHECK(one.certificate().witness_T == many.certificate().witness_T);
      }
    }
  }
}

TEST_CASE("exhaustive mode counts the same hits as estimate_alpha") {
  const auto problem = testing::load_problem("cubic3d.pop");
  auto opts = samples(20000, 3, 4);
  opts.exhaustive = true;
  const auto out = run_certificate(problem, opts);
  REQUIRE(out.stats.hits.has_value());
  const auto est = estimate_alpha(problem, opts.sampling);
  CHECK(*out.stats.hits == est.hits);
  REQUIRE(out.unbounded());
  CHECK(out.certificate().origin.source == DirectionSource::Sample);
}

TEST_CASE("direction precedence: user, then samples, then probe") {
  const auto problem = testing::load_problem("quartic.pop");
  auto opts = samples(64, 1);
  opts.extra_directions = {{1.0, 0.0}, {0.0, -3.0}};
  const auto out = run_certificate(problem, opts);
  REQUIRE(out.unbounded());
  CHECK(out.certificate().origin == DirectionOrigin{DirectionSource::User, 1});
  CHECK(out.certificate().direction == std::vector<double>{0.0, -1.0});

  const auto example = testing::load_problem("degenerate_cones.pop");
  auto probe = samples(1000, 2);
  probe.probe = ProbeConfig{};
  const auto rescued = run_certificate(example, probe);
  REQUIRE(rescued.unbounded());
  CHECK(rescued.certificate().origin.source == DirectionSource::Probe);
  CHECK(rescued.stats.probe_candidates > 0);
  CHECK(verify_ray(example, rescued.certificate().direction, rescued.certificate().witness_T).ok);
}

TEST_CASE("input validation") {
  const auto problem = testing::load_problem("quartic.pop");
  auto opts = samples(10, 0);
  opts.extra_directions = {{1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(run_certificate(problem, opts), InputError);
  opts.extra_directions = {{0.0, 0.0}};
  CHECK_THROWS_AS(run_certificate(problem, opts), InputError);
  opts = samples(0, 0);
  CHECK_THROWS_AS(run_certificate(problem, opts), InputError);
  opts = samples(10, 0);
  opts.tolerance.abs = -1;
  CHECK_THROWS_AS(run_certificate(problem, opts), InputError);
}

TEST_CASE("near-threshold zero declarations are reported and capped") {
  const auto problem = parse_problem("dim 2\nobjective: 5e-13*x1^3 + x1^2 + x2^2\n");
  const auto out = run_certificate(problem, samples(2000, 0, 3));
  REQUIRE_FALSE(out.unbounded());
  const auto& inc = out.inconclusive();
  CHECK(inc.tolerance_flag_total > kMaxReportedFlags);
  REQUIRE(inc.tolerance_flags.size() == kMaxReportedFlags);
  for (std::size_t k = 1; k < inc.tolerance_flags.size(); ++k) {
    CHECK(inc.tolerance_flags[k - 1].origin.index < inc.tolerance_flags[k].origin.index);
  }
  CHECK(inc.tolerance_flags[0].detail.degree == 3);

  const auto again = run_certificate(problem, samples(2000, 0, 1));
  CHECK(again.inconclusive().tolerance_flag_total == inc.tolerance_flag_total);
}

TEST_CASE("soundness over the shipped problems") {
  for (const char* file : {"degenerate_cones.pop", "quartic.pop", "bowl.pop", "halfplane.pop",
                           "quadrant.pop", "cubic3d.pop", "ball.pop"}) {
    const auto problem = testing::load_problem(file);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto opts = samples(5000, seed);
      opts.probe = ProbeConfig{};
      const auto out = run_certificate(problem, opts);
      if (!out.unbounded()) continue;
      const auto& c = out.certificate();
      const auto check = verify_ray(problem, c.direction, c.witness_T);
      CHECK_MESSAGE(check.ok, file << ": " << check.reason);
    }
  }
  const auto ball = run_certificate(testing::load_problem("ball.pop"), samples(20000, 1));
  CHECK_FALSE(ball.unbounded());
}
