// Finite-region indistinguishability, shown on the degenerate two-cone
// problem: a brute-force search of the ball ||x|| <= 10 finds a finite
// minimum, the certificate still proves inf f = -inf, and the objective
// along the certified ray drops below that minimum only outside the ball.
//
// usage: finite_region_demo [problem-file] [radius] [grid-step]

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "polycert/certify.hpp"
#include "polycert/oracle.hpp"
#include "polycert/parser.hpp"

namespace {

constexpr const char* kBuiltin =
    "dim 2\n"
    "name: degenerate quartic cones\n"
    "objective: (x1^2 - x2^2)^2 - x2^3\n"
    "constraint: (x1^2 - x2^2)^2 - x1^2*x2^2\n"
    "constraint: 1 - x1^2 - x2^2\n";

}  // namespace

int main(int argc, char** argv) {
  using namespace polycert;
  std::string source = kBuiltin;
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "cannot open " << argv[1] << "\n";
      return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    source = buf.str();
  }
  const double radius = argc > 2 ? std::stod(argv[2]) : 10.0;
  const double step = argc > 3 ? std::stod(argv[3]) : 0.01;

  const Problem problem = parse_problem(source);
  const BallMinimum ball = grid_minimum_in_ball(problem, radius, step);
  std::printf("grid search of ||x|| <= %g (step %g, %zu points)\n", radius, step,
              ball.grid_points);
  if (!ball.feasible_point_found) {
    std::printf("  no feasible grid point\n");
    return 1;
  }
  std::printf("  minimum f = %.6g at (%g, %g)\n", ball.value, ball.argmin[0], ball.argmin[1]);

  RunOptions options;
  options.sampling.count = 1;
  options.extra_directions = {{1.0, 1.0}};
  const CertificateOutcome outcome = run_certificate(problem, options);
  if (!outcome.unbounded()) {
    std::printf("certificate: inconclusive\n");
    return 1;
  }
  const Unbounded& cert = outcome.certificate();
  std::printf("certificate: unbounded along d = (%.6f, %.6f), witness T = %g\n",
              cert.direction[0], cert.direction[1], cert.witness_T);

  // first point of the ray (in steps of 0.5) that beats the in-ball minimum
  std::vector<double> x(2);
  for (double t = cert.witness_T; t < 1e6; t += 0.5) {
    x[0] = t * cert.direction[0];
    x[1] = t * cert.direction[1];
    const double f = problem.objective().evaluate(x);
    if (f < ball.value) {
      std::printf("  f(t d) = %.6g < %.6g first at t = %g (||x|| = %g > %g)\n", f,
                  ball.value, t, t, radius);
      return t > radius ? 0 : 1;
    }
  }
  return 1;
}
