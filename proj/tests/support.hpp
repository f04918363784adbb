#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polycert/parser.hpp"
#include "polycert/polynomial.hpp"
#include "polycert/problem.hpp"

namespace testing {

inline std::string problem_path(const std::string& file) {
  return std::string(POLYCERT_PROBLEM_DIR) + "/" + file;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline polycert::Problem load_problem(const std::string& file) {
  return polycert::parse_problem(slurp(problem_path(file)));
}

// Random sparse polynomial: `terms` monomials of total degree <= max_degree,
// coefficients uniform in [-1, 1] or small nonzero integers.
inline polycert::Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n,
                                              int max_degree, std::size_t terms,
                                              bool integer_coefficients = false) {
  std::uniform_int_distribution<int> degree_dist(0, max_degree);
  std::uniform_int_distribution<std::size_t> var_dist(0, n - 1);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> icoef(-5, 5);
  std::vector<polycert::Term> out;
  for (std::size_t t = 0; t < terms; ++t) {
    polycert::Exponents e(n, 0);
    const int deg = degree_dist(rng);
    for (int k = 0; k < deg; ++k) ++e[var_dist(rng)];
    double c = 0.0;
    if (integer_coefficients) {
      while (c == 0.0) c = icoef(rng);
    } else {
      c = coef(rng);
    }
    out.push_back({polycert::Monomial(std::move(e)), c});
  }
  return polycert::Polynomial(n, std::move(out));
}

inline std::vector<double> random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& x : v) {
      x = g(rng);
      s += x * x;
    }
  } while (s < 1e-12);
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
  return v;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace testing
