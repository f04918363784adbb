#include "polycert/certify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "polycert/errors.hpp"
#include "polycert/parallel.hpp"

namespace polycert {

namespace {

constexpr std::size_t kSampleChunk = 1024;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct ChunkFlags {
  std::vector<ToleranceFlag> kept;
  std::size_t total = 0;
};

void record_flags(const std::vector<CompiledProblem::Flag>& raw,
                  DirectionOrigin origin, ChunkFlags& into) {
  for (const auto& f : raw) {
    ++into.total;
    if (into.kept.size() < kMaxReportedFlags) {
      into.kept.push_back(ToleranceFlag{origin, f.polynomial, f.detail});
    }
  }
}

Unbounded make_certificate(const CompiledProblem& problem,
                           std::vector<double> direction, DirectionOrigin origin,
                           const Tolerance& tol) {
  Unbounded out;
  out.profiles = problem.profiles(direction, tol);
  if (!certificate_check(out.profiles, tol)) {
    throw std::logic_error("fast certificate check disagrees with classify()");
  }
  out.witness_T = 1.0;
  for (const auto& p : out.profiles) {
    out.witness_T = std::max(out.witness_T, witness_threshold(p));
  }
  out.robustness = classify_robustness(problem, direction, tol);
  out.direction = std::move(direction);
  out.origin = origin;
  return out;
}

}  // namespace

RobustnessClass classify_robustness(const CompiledProblem& problem,
                                    std::span<const double> d,
                                    const Tolerance& tol) {
  RobustnessClass out;
  auto ws = problem.make_workspace();
  for (std::size_t i = 0; i < problem.polynomial_count(); ++i) {
    const int p = problem.full_degree(i);
    bool negative = false;
    if (p != kNegativeInfinityDegree) {
      const double v = problem.top_form_value(i, d, ws);
      negative = v < -problem.threshold(i, p, tol);
    }
    if (!negative) out.vanishing_indices.push_back(i);
  }
  out.robust = out.vanishing_indices.empty();
  return out;
}

std::vector<ResidualEntry> residual_table(std::size_t samples,
                                          std::optional<double> alpha_floor,
                                          std::optional<double> delta) {
  std::vector<double> alphas(std::begin(kResidualGrid), std::end(kResidualGrid));
  if (alpha_floor &&
      std::find(alphas.begin(), alphas.end(), *alpha_floor) == alphas.end()) {
    alphas.push_back(*alpha_floor);
  }
  std::vector<ResidualEntry> table;
  for (double a : alphas) {
    ResidualEntry e{a, residual_probability(a, samples), std::nullopt};
    if (delta && a < 1.0) e.required_samples = required_samples(a, *delta);
    table.push_back(e);
  }
  return table;
}

CertificateOutcome run_certificate(const Problem& problem,
                                   const RunOptions& options) {
  options.sampling.validate();
  options.tolerance.validate();
  if (options.probe) options.probe->validate();
  const Tolerance& tol = options.tolerance;
  const std::size_t n = problem.dimension();

  std::vector<std::vector<double>> user;
  for (std::size_t k = 0; k < options.extra_directions.size(); ++k) {
    const auto& v = options.extra_directions[k];
    if (v.size() != n) {
      throw InputError("direction " + std::to_string(k + 1) + " has length " +
                       std::to_string(v.size()) + ", expected " + std::to_string(n));
    }
    user.push_back(normalized(v));
  }

  CertificateOutcome outcome;
  RunStats& stats = outcome.stats;

  auto t0 = Clock::now();
  const std::uint64_t before = decomposition_count();
  const CompiledProblem compiled(problem);
  stats.decompositions = static_cast<std::size_t>(decomposition_count() - before);
  stats.decomposition_ms = elapsed_ms(t0);

  std::optional<Unbounded> winner;
  ChunkFlags user_flags;
  {
    auto ws = compiled.make_workspace();
    std::vector<CompiledProblem::Flag> raw;
    for (std::size_t k = 0; k < user.size() && !winner; ++k) {
      raw.clear();
      ++stats.directions_checked;
      const DirectionOrigin origin{DirectionSource::User, k};
      if (compiled.certifies(user[k], tol, ws, &raw)) {
        winner = make_certificate(compiled, user[k], origin, tol);
      }
      record_flags(raw, origin, user_flags);
    }
  }

  const std::size_t count = options.sampling.count;
  const std::uint64_t seed = options.sampling.seed;
  const unsigned threads = resolve_threads(options.sampling.threads);
  std::size_t first_hit = count;
  std::vector<ChunkFlags> chunk_flags;
  if (!winner || options.exhaustive) {
    t0 = Clock::now();
    const bool stop_early = !options.exhaustive;
    const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
    chunk_flags.resize(chunks);
    std::vector<std::size_t> chunk_hits(chunks, 0);
    std::atomic<std::size_t> best{count};
    parallel_chunks(count, kSampleChunk, threads,
                    [&](std::size_t begin, std::size_t end, unsigned) {
      if (stop_early && begin > best.load()) return;
      auto ws = compiled.make_workspace();
      std::vector<double> d(n);
      std::vector<CompiledProblem::Flag> raw;
      ChunkFlags& flags = chunk_flags[begin / kSampleChunk];
      std::size_t& hits = chunk_hits[begin / kSampleChunk];
      for (std::size_t i = begin; i < end; ++i) {
        if (stop_early && i > best.load(std::memory_order_relaxed)) return;
        sample_direction_into(seed, i, d);
        raw.clear();
        const bool pass = compiled.certifies(d, tol, ws, &raw);
        record_flags(raw, DirectionOrigin{DirectionSource::Sample, i}, flags);
        if (!pass) continue;
        ++hits;
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        if (stop_early) return;
      }
    });
    first_hit = best.load();
    stats.sampling_ms = elapsed_ms(t0);
    if (options.exhaustive) {
      std::size_t total = 0;
      for (auto h : chunk_hits) total += h;
      stats.hits = total;
    }
    stats.samples_evaluated = first_hit < count && stop_early ? first_hit + 1 : count;
    stats.directions_checked += stats.samples_evaluated;
    if (!winner && first_hit < count) {
      winner = make_certificate(compiled, sample_direction(seed, first_hit, n),
                                DirectionOrigin{DirectionSource::Sample, first_hit},
                                tol);
    }
  }

  if (!winner && options.probe) {
    stats.notes.push_back(
        "probe enabled: candidate directions come from a heuristic descent "
        "search and are screened by the same certificate check");
    try {
      const auto candidates =
          find_candidates(compiled, *options.probe, seed, threads);
      stats.probe_candidates = candidates.size();
      auto ws = compiled.make_workspace();
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        ++stats.directions_checked;
        if (compiled.certifies(candidates[k], tol, ws)) {
          winner = make_certificate(compiled, candidates[k],
                                    DirectionOrigin{DirectionSource::Probe, k}, tol);
          break;
        }
      }
      if (!winner) {
        stats.notes.push_back("probe found " + std::to_string(candidates.size()) +
                              " candidate(s); none certified");
      }
    } catch (const std::exception& e) {
      stats.notes.push_back(std::string("probe failed: ") + e.what());
    }
  }

  if (winner) {
    outcome.result = std::move(*winner);
    return outcome;
  }

  Inconclusive inc;
  inc.samples_used = count;
  inc.residual_table =
      residual_table(count, options.sampling.alpha_floor, options.sampling.delta);
  inc.tolerance_flag_total = user_flags.total;
  inc.tolerance_flags = std::move(user_flags.kept);
  for (auto& cf : chunk_flags) {
    inc.tolerance_flag_total += cf.total;
    for (auto& f : cf.kept) {
      if (inc.tolerance_flags.size() >= kMaxReportedFlags) break;
      inc.tolerance_flags.push_back(f);
    }
  }
  outcome.result = std::move(inc);
  return outcome;
}

}  // namespace polycert
