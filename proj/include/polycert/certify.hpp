#pragma once

// Directional certificate driver.
//
// Candidate directions are tried in precedence order: user-supplied
// directions, then uniformly sampled directions by ascending index, then
// (optionally) probe candidates. The first direction whose objective and
// constraints all diverge to -inf (or have negative finite slope) proves
// inf f = -inf; the run reports it with per-polynomial profiles, a witness
// threshold T such that t d is feasible with f(t d) < 0 for every t >= T,
// and a robustness class. Otherwise the run is inconclusive and reports the
// probability (1 - alpha0)^N that N uniform samples all missed a certifying
// set of measure alpha0.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polycert/asymptotics.hpp"
#include "polycert/probe.hpp"
#include "polycert/problem.hpp"
#include "polycert/sampling.hpp"

namespace polycert {

inline constexpr double kResidualGrid[] = {0.1, 0.05, 0.01, 0.001};

enum class DirectionSource { User, Sample, Probe };

struct DirectionOrigin {
  DirectionSource source = DirectionSource::Sample;
  std::size_t index = 0;

  friend bool operator==(const DirectionOrigin&, const DirectionOrigin&) = default;
};

/// Robust iff every full-degree top form phi_{i,p_i}(d) is strictly negative
/// (beyond its declared-zero threshold). Otherwise lists the offending i.
struct RobustnessClass {
  bool robust = true;
  std::vector<std::size_t> vanishing_indices;
};

struct Unbounded {
  std::vector<double> direction;
  DirectionOrigin origin;
  std::vector<DirectionalProfile> profiles;  // g_0 .. g_m
  double witness_T = 1.0;
  RobustnessClass robustness;
};

struct ResidualEntry {
  double alpha = 0.0;
  double probability = 1.0;
  std::optional<std::size_t> required_samples;  // set when delta is given
};

struct ToleranceFlag {
  DirectionOrigin origin;
  std::size_t polynomial = 0;
  NearThreshold detail;
};

struct Inconclusive {
  std::size_t samples_used = 0;
  std::vector<ResidualEntry> residual_table;
  std::vector<ToleranceFlag> tolerance_flags;  // first kMaxReportedFlags
  std::size_t tolerance_flag_total = 0;
};

inline constexpr std::size_t kMaxReportedFlags = 32;

struct RunStats {
  std::size_t decompositions = 0;
  std::size_t directions_checked = 0;
  std::size_t samples_evaluated = 0;
  std::size_t probe_candidates = 0;
  std::optional<std::size_t> hits;  // exhaustive mode only
  double decomposition_ms = 0.0;
  double sampling_ms = 0.0;
  std::vector<std::string> notes;
};

struct CertificateOutcome {
  std::variant<Unbounded, Inconclusive> result;
  RunStats stats;

  bool unbounded() const { return std::holds_alternative<Unbounded>(result); }
  const Unbounded& certificate() const { return std::get<Unbounded>(result); }
  const Inconclusive& inconclusive() const { return std::get<Inconclusive>(result); }
};

struct RunOptions {
  SampleConfig sampling;
  Tolerance tolerance;
  std::vector<std::vector<double>> extra_directions;  // any nonzero scale
  std::optional<ProbeConfig> probe;
  /// Keep sampling after the first certifying index to count all hits.
  bool exhaustive = false;
};

CertificateOutcome run_certificate(const Problem& problem,
                                   const RunOptions& options);

RobustnessClass classify_robustness(const CompiledProblem& problem,
                                    std::span<const double> d,
                                    const Tolerance& tol = {});

/// Residual probabilities for the reporting grid plus an optional user alpha.
std::vector<ResidualEntry> residual_table(std::size_t samples,
                                          std::optional<double> alpha_floor,
                                          std::optional<double> delta);

}  // namespace polycert
