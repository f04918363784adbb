#pragma once

// Serializable run report. The machine form is a single JSON document whose
// layout is described by schemas/report.schema.json (schema_version "1").

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polycert/certify.hpp"

namespace polycert {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchemaVersion = "1";

struct ProfileReport {
  std::size_t index = 0;
  std::string role;                 // "objective" | "constraint"
  std::optional<int> mu;            // empty for mu = -inf
  double leading_value = 0.0;
  std::string sign;                 // "-inf" | "finite" | "+inf"
  std::optional<double> finite_value;
  std::vector<double> ray_coefficients;

  friend bool operator==(const ProfileReport&, const ProfileReport&) = default;
};

struct RobustnessReport {
  std::string kind;  // "robust" | "degenerate"
  std::vector<std::size_t> vanishing_indices;

  friend bool operator==(const RobustnessReport&, const RobustnessReport&) = default;
};

struct SamplingReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::optional<std::size_t> hits;

  friend bool operator==(const SamplingReport&, const SamplingReport&) = default;
};

struct ResidualRow {
  double alpha = 0.0;
  double probability = 1.0;
  std::optional<std::size_t> required_samples;

  friend bool operator==(const ResidualRow&, const ResidualRow&) = default;
};

struct AlphaReport {
  std::size_t hits = 0;
  std::size_t samples = 0;
  double alpha_hat = 0.0;
  double lower = 0.0;
  double upper = 1.0;

  friend bool operator==(const AlphaReport&, const AlphaReport&) = default;
};

struct StatisticsReport {
  std::optional<double> delta;
  std::optional<double> alpha_floor;
  std::vector<ResidualRow> residual_table;
  std::optional<AlphaReport> alpha_estimate;

  friend bool operator==(const StatisticsReport&, const StatisticsReport&) = default;
};

struct FlagReport {
  std::string origin;  // "user:k" | "sample:i" | "probe:k"
  std::size_t polynomial = 0;
  int degree = 0;
  double magnitude = 0.0;
  double threshold = 0.0;

  friend bool operator==(const FlagReport&, const FlagReport&) = default;
};

struct ProvenanceReport {
  std::string tool_version = kToolVersion;
  std::optional<std::string> problem_name;
  std::size_t dimension = 0;
  std::size_t constraints = 0;
  double tol_abs = 0.0;
  double tol_rel = 0.0;
  bool probe_enabled = false;

  friend bool operator==(const ProvenanceReport&, const ProvenanceReport&) = default;
};

struct TimingReport {
  double decomposition_ms = 0.0;
  double per_1000_samples_ms = 0.0;

  friend bool operator==(const TimingReport&, const TimingReport&) = default;
};

struct Report {
  std::string schema_version = kReportSchemaVersion;
  std::string verdict;  // "unbounded" | "inconclusive"
  std::optional<std::vector<double>> direction;
  std::optional<std::string> certified_by;
  std::optional<double> witness_T;
  std::vector<ProfileReport> profiles;
  std::optional<RobustnessReport> robustness;
  SamplingReport sampling;
  StatisticsReport statistics;
  std::vector<FlagReport> tolerance_flags;
  std::size_t tolerance_flag_total = 0;
  ProvenanceReport provenance;
  std::vector<std::string> notes;
  TimingReport timing;

  friend bool operator==(const Report&, const Report&) = default;
};

std::string origin_label(const DirectionOrigin& origin);

/// Assembles a report from a finished run. `alpha` is the optional separate
/// Monte Carlo estimate.
Report make_report(const Problem& problem, const RunOptions& options,
                   const CertificateOutcome& outcome,
                   const std::optional<AlphaEstimate>& alpha = std::nullopt);

void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

/// Machine form: pretty JSON with a trailing newline.
std::string to_machine(const Report& r);
void write_human(std::ostream& os, const Report& r);

}  // namespace polycert
