#include "polycert/probe.hpp"

#include <algorithm>
#include <cmath>

#include "polycert/errors.hpp"
#include "polycert/parallel.hpp"
#include "polycert/sampling.hpp"

namespace polycert {

namespace {

constexpr std::size_t kPolishIterations = 200;
constexpr double kDedupAngle = 1e-6;
constexpr std::uint64_t kProbeStream = 0x70726F6265ull;  // "probe"

void normalize_in_place(std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  const double norm = std::sqrt(sq);
  for (double& x : v) x /= norm;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

void project_tangent(std::span<const double> d, std::vector<double>& g) {
  const double radial = dot(d, g);
  for (std::size_t j = 0; j < g.size(); ++j) g[j] -= radial * d[j];
}

// Solves the small symmetric system A x = b in place; false if singular.
bool solve_dense(std::vector<double> a, std::vector<double>& b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0) return false;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (std::size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i * n + k] * b[k];
    b[i] = s / a[i * n + i];
  }
  return std::all_of(b.begin(), b.end(), [](double v) { return std::isfinite(v); });
}

// Gauss-Newton steps on the residuals phi_i(d), i in S, restricted to the
// tangent space; each step must lower the penalty.
void polish(const CompiledProblem& problem, const Subset& subset,
            const ProbeConfig& config, DescentResult& state) {
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i]) active.push_back(i);
  }
  if (active.empty()) return;
  const std::size_t n = problem.dimension();
  const std::size_t s = active.size();
  auto& d = state.direction;
  for (std::size_t it = 0; it < kPolishIterations && state.penalty > 0.0; ++it) {
    std::vector<std::vector<double>> jac(s);
    std::vector<double> residual(s);
    for (std::size_t a = 0; a < s; ++a) {
      const Polynomial& form = problem.top_form(active[a]);
      residual[a] = form.evaluate(d);
      jac[a] = form.gradient(d);
      project_tangent(d, jac[a]);
    }
    std::vector<double> gram(s * s);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) gram[a * s + b] = dot(jac[a], jac[b]);
    }
    std::vector<double> y = residual;
    if (!solve_dense(gram, y, s)) return;
    std::vector<double> candidate(d);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t j = 0; j < n; ++j) candidate[j] -= y[a] * jac[a][j];
    }
    normalize_in_place(candidate);
    const double p = penalty(problem, subset, candidate, config.margin);
    if (!(p < state.penalty)) return;
    d = std::move(candidate);
    state.penalty = p;
    state.history.push_back(p);
  }
}

}  // namespace

void ProbeConfig::validate() const {
  if (restarts == 0 || max_iterations == 0 || subset_cap == 0) {
    throw InputError("probe restarts, iterations and subset cap must be positive");
  }
  if (!(initial_step > 0.0) || !(convergence_tol > 0.0) || !(margin > 0.0)) {
    throw InputError("probe step, tolerance and margin must be positive");
  }
}

std::vector<Subset> probe_subsets(std::size_t count, std::size_t cap) {
  std::vector<Subset> out;
  if (count <= cap && count < 63) {
    const std::uint64_t total = std::uint64_t{1} << count;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      Subset s(count, false);
      for (std::size_t i = 0; i < count; ++i) s[i] = (mask >> i) & 1u;
      out.push_back(std::move(s));
    }
    return out;
  }
  out.emplace_back(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    Subset s(count, false);
    s[i] = true;
    out.push_back(std::move(s));
  }
  out.emplace_back(count, true);
  return out;
}

double penalty(const CompiledProblem& problem, const Subset& subset,
               std::span<const double> d, double margin) {
  double total = 0.0;
  for (std::size_t i = 0; i < problem.polynomial_count(); ++i) {
    const double v = problem.top_form(i).evaluate(d);
    if (subset.at(i)) {
      total += v * v;
    } else {
      const double viol = std::max(0.0, v + margin);
      total += viol * viol;
    }
  }
  return total;
}

std::vector<double> penalty_tangent_gradient(const CompiledProblem& problem,
                                             const Subset& subset,
                                             std::span<const double> d,
                                             double margin) {
  std::vector<double> g(problem.dimension(), 0.0);
  for (std::size_t i = 0; i < problem.polynomial_count(); ++i) {
    const Polynomial& form = problem.top_form(i);
    const double v = form.evaluate(d);
    const double weight = subset.at(i) ? 2.0 * v : 2.0 * std::max(0.0, v + margin);
    if (weight == 0.0) continue;
    const auto grad = form.gradient(d);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += weight * grad[j];
  }
  project_tangent(d, g);
  return g;
}

DescentResult descend(const CompiledProblem& problem, const Subset& subset,
                      std::span<const double> start, const ProbeConfig& config) {
  DescentResult state;
  state.direction = normalized(start);
  state.penalty = penalty(problem, subset, state.direction, config.margin);
  state.history.push_back(state.penalty);
  auto& d = state.direction;
  double step = config.initial_step;

  while (state.iterations < config.max_iterations &&
         state.penalty > config.convergence_tol) {
    const auto g = penalty_tangent_gradient(problem, subset, d, config.margin);
    const double gnorm = std::sqrt(dot(g, g));
    if (gnorm == 0.0) break;
    bool accepted = false;
    std::vector<double> candidate(d.size());
    while (step * gnorm > 1e-18) {
      for (std::size_t j = 0; j < d.size(); ++j) candidate[j] = d[j] - step * g[j];
      normalize_in_place(candidate);
      const double p = penalty(problem, subset, candidate, config.margin);
      if (p < state.penalty) {
        d = candidate;
        state.penalty = p;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    ++state.iterations;
    state.history.push_back(state.penalty);
  }
  state.converged = state.penalty <= config.convergence_tol;
  if (state.converged) polish(problem, subset, config, state);
  return state;
}

double angular_distance(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sq += (a[j] - b[j]) * (a[j] - b[j]);
  return 2.0 * std::asin(std::min(1.0, std::sqrt(sq) / 2.0));
}

std::vector<std::vector<double>> find_candidates(const CompiledProblem& problem,
                                                 const ProbeConfig& config,
                                                 std::uint64_t seed,
                                                 unsigned threads) {
  config.validate();
  const auto subsets = probe_subsets(problem.polynomial_count(), config.subset_cap);
  const std::size_t jobs = subsets.size() * config.restarts;
  const std::uint64_t stream = mix_seed(seed ^ kProbeStream);
  std::vector<DescentResult> results(jobs);
  parallel_chunks(jobs, 1, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    std::vector<double> start(problem.dimension());
    for (std::size_t job = begin; job < end; ++job) {
      sample_direction_into(stream, job, start);
      results[job] = descend(problem, subsets[job / config.restarts], start, config);
    }
  });

  std::vector<std::vector<double>> kept;
  for (auto& r : results) {
    if (!r.converged) continue;
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return angular_distance(k, r.direction) <= kDedupAngle;
    });
    if (!duplicate) kept.push_back(std::move(r.direction));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace polycert
