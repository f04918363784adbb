#include "polycert/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace polycert {

using nlohmann::json;

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string sign_label(const AsymptoticSign& s) {
  switch (s.kind) {
    case SignKind::NegInfinity:
      return "-inf";
    case SignKind::PosInfinity:
      return "+inf";
    case SignKind::Finite:
      return "finite";
  }
  return "finite";
}

ProfileReport summarize(std::size_t index, const DirectionalProfile& p) {
  ProfileReport r;
  r.index = index;
  r.role = index == 0 ? "objective" : "constraint";
  if (p.mu != kNegativeInfinityDegree) r.mu = p.mu;
  r.leading_value = p.leading_value;
  r.sign = sign_label(p.sign);
  if (p.sign.kind == SignKind::Finite) r.finite_value = p.sign.value;
  r.ray_coefficients = p.ray_coefficients;
  return r;
}

}  // namespace

std::string origin_label(const DirectionOrigin& origin) {
  switch (origin.source) {
    case DirectionSource::User:
      return "user:" + std::to_string(origin.index);
    case DirectionSource::Sample:
      return "sample:" + std::to_string(origin.index);
    case DirectionSource::Probe:
      return "probe:" + std::to_string(origin.index);
  }
  return "unknown";
}

Report make_report(const Problem& problem, const RunOptions& options,
                   const CertificateOutcome& outcome,
                   const std::optional<AlphaEstimate>& alpha) {
  Report r;
  const RunStats& stats = outcome.stats;
  if (outcome.unbounded()) {
    const Unbounded& u = outcome.certificate();
    r.verdict = "unbounded";
    r.direction = u.direction;
    r.certified_by = origin_label(u.origin);
    r.witness_T = u.witness_T;
    for (std::size_t i = 0; i < u.profiles.size(); ++i) {
      r.profiles.push_back(summarize(i, u.profiles[i]));
    }
    r.robustness = RobustnessReport{u.robustness.robust ? "robust" : "degenerate",
                                    u.robustness.vanishing_indices};
  } else {
    const Inconclusive& inc = outcome.inconclusive();
    r.verdict = "inconclusive";
    for (const auto& e : inc.residual_table) {
      r.statistics.residual_table.push_back(
          ResidualRow{e.alpha, e.probability, e.required_samples});
    }
    for (const auto& f : inc.tolerance_flags) {
      r.tolerance_flags.push_back(FlagReport{origin_label(f.origin), f.polynomial,
                                             f.detail.degree, f.detail.magnitude,
                                             f.detail.threshold});
    }
    r.tolerance_flag_total = inc.tolerance_flag_total;
  }
  r.sampling.samples = options.sampling.count;
  r.sampling.seed = options.sampling.seed;
  r.sampling.exhaustive = options.exhaustive;
  r.sampling.hits = stats.hits;
  r.statistics.delta = options.sampling.delta;
  r.statistics.alpha_floor = options.sampling.alpha_floor;
  if (alpha) {
    r.statistics.alpha_estimate = AlphaReport{alpha->hits, alpha->samples, alpha->alpha_hat,
                                              alpha->interval.lower, alpha->interval.upper};
  }
  r.provenance.problem_name = problem.name();
  r.provenance.dimension = problem.dimension();
  r.provenance.constraints = problem.constraint_count();
  r.provenance.tol_abs = options.tolerance.abs;
  r.provenance.tol_rel = options.tolerance.rel;
  r.provenance.probe_enabled = options.probe.has_value();
  r.notes = stats.notes;
  r.timing.decomposition_ms = stats.decomposition_ms;
  r.timing.per_1000_samples_ms =
      stats.samples_evaluated == 0
          ? 0.0
          : stats.sampling_ms * 1000.0 / static_cast<double>(stats.samples_evaluated);
  return r;
}

void to_json(json& j, const Report& r) {
  json profiles = json::array();
  for (const auto& p : r.profiles) {
    profiles.push_back({{"index", p.index},
                        {"role", p.role},
                        {"mu", opt(p.mu)},
                        {"leading_value", p.leading_value},
                        {"sign", p.sign},
                        {"finite_value", opt(p.finite_value)},
                        {"ray_coefficients", p.ray_coefficients}});
  }
  json residual = json::array();
  for (const auto& row : r.statistics.residual_table) {
    residual.push_back({{"alpha", row.alpha},
                        {"probability", row.probability},
                        {"required_samples", opt(row.required_samples)}});
  }
  json alpha = nullptr;
  if (r.statistics.alpha_estimate) {
    const auto& a = *r.statistics.alpha_estimate;
    alpha = {{"hits", a.hits},
             {"samples", a.samples},
             {"alpha_hat", a.alpha_hat},
             {"interval", {a.lower, a.upper}}};
  }
  json flags = json::array();
  for (const auto& f : r.tolerance_flags) {
    flags.push_back({{"origin", f.origin},
                     {"polynomial", f.polynomial},
                     {"degree", f.degree},
                     {"magnitude", f.magnitude},
                     {"threshold", f.threshold}});
  }
  json robustness = nullptr;
  if (r.robustness) {
    robustness = {{"class", r.robustness->kind},
                  {"vanishing_indices", r.robustness->vanishing_indices}};
  }
  j = json{
      {"schema_version", r.schema_version},
      {"verdict", r.verdict},
      {"direction", opt(r.direction)},
      {"certified_by", opt(r.certified_by)},
      {"witness_T", opt(r.witness_T)},
      {"profiles", profiles},
      {"robustness", robustness},
      {"sampling",
       {{"samples", r.sampling.samples},
        {"seed", r.sampling.seed},
        {"exhaustive", r.sampling.exhaustive},
        {"hits", opt(r.sampling.hits)}}},
      {"statistics",
       {{"delta", opt(r.statistics.delta)},
        {"alpha_floor", opt(r.statistics.alpha_floor)},
        {"residual_table", residual},
        {"alpha_estimate", alpha}}},
      {"tolerance_flags", {{"total", r.tolerance_flag_total}, {"reported", flags}}},
      {"provenance",
       {{"tool_version", r.provenance.tool_version},
        {"problem_name", opt(r.provenance.problem_name)},
        {"dimension", r.provenance.dimension},
        {"constraints", r.provenance.constraints},
        {"tol_abs", r.provenance.tol_abs},
        {"tol_rel", r.provenance.tol_rel},
        {"probe_enabled", r.provenance.probe_enabled},
        {"probe_is_heuristic", true}}},
      {"notes", r.notes},
      {"timing",
       {{"decomposition_ms", r.timing.decomposition_ms},
        {"per_1000_samples_ms", r.timing.per_1000_samples_ms}}},
  };
}

void from_json(const json& j, Report& r) {
  r = Report{};
  j.at("schema_version").get_to(r.schema_version);
  j.at("verdict").get_to(r.verdict);
  r.direction = get_opt<std::vector<double>>(j, "direction");
  r.certified_by = get_opt<std::string>(j, "certified_by");
  r.witness_T = get_opt<double>(j, "witness_T");
  for (const auto& p : j.at("profiles")) {
    ProfileReport pr;
    p.at("index").get_to(pr.index);
    p.at("role").get_to(pr.role);
    pr.mu = get_opt<int>(p, "mu");
    p.at("leading_value").get_to(pr.leading_value);
    p.at("sign").get_to(pr.sign);
    pr.finite_value = get_opt<double>(p, "finite_value");
    p.at("ray_coefficients").get_to(pr.ray_coefficients);
    r.profiles.push_back(std::move(pr));
  }
  if (!j.at("robustness").is_null()) {
    const auto& rb = j.at("robustness");
    r.robustness = RobustnessReport{rb.at("class").get<std::string>(),
                                    rb.at("vanishing_indices").get<std::vector<std::size_t>>()};
  }
  const auto& s = j.at("sampling");
  s.at("samples").get_to(r.sampling.samples);
  s.at("seed").get_to(r.sampling.seed);
  s.at("exhaustive").get_to(r.sampling.exhaustive);
  r.sampling.hits = get_opt<std::size_t>(s, "hits");
  const auto& st = j.at("statistics");
  r.statistics.delta = get_opt<double>(st, "delta");
  r.statistics.alpha_floor = get_opt<double>(st, "alpha_floor");
  for (const auto& row : st.at("residual_table")) {
    r.statistics.residual_table.push_back(
        ResidualRow{row.at("alpha").get<double>(), row.at("probability").get<double>(),
                    get_opt<std::size_t>(row, "required_samples")});
  }
  if (!st.at("alpha_estimate").is_null()) {
    const auto& a = st.at("alpha_estimate");
    r.statistics.alpha_estimate =
        AlphaReport{a.at("hits").get<std::size_t>(), a.at("samples").get<std::size_t>(),
                    a.at("alpha_hat").get<double>(), a.at("interval").at(0).get<double>(),
                    a.at("interval").at(1).get<double>()};
  }
  const auto& tf = j.at("tolerance_flags");
  tf.at("total").get_to(r.tolerance_flag_total);
  for (const auto& f : tf.at("reported")) {
    r.tolerance_flags.push_back(FlagReport{
        f.at("origin").get<std::string>(), f.at("polynomial").get<std::size_t>(),
        f.at("degree").get<int>(), f.at("magnitude").get<double>(),
        f.at("threshold").get<double>()});
  }
  const auto& pv = j.at("provenance");
  pv.at("tool_version").get_to(r.provenance.tool_version);
  r.provenance.problem_name = get_opt<std::string>(pv, "problem_name");
  pv.at("dimension").get_to(r.provenance.dimension);
  pv.at("constraints").get_to(r.provenance.constraints);
  pv.at("tol_abs").get_to(r.provenance.tol_abs);
  pv.at("tol_rel").get_to(r.provenance.tol_rel);
  pv.at("probe_enabled").get_to(r.provenance.probe_enabled);
  j.at("notes").get_to(r.notes);
  const auto& tm = j.at("timing");
  tm.at("decomposition_ms").get_to(r.timing.decomposition_ms);
  tm.at("per_1000_samples_ms").get_to(r.timing.per_1000_samples_ms);
}

std::string to_machine(const Report& r) {
  json j = r;
  return j.dump(2) + "\n";
}

void write_human(std::ostream& os, const Report& r) {
  std::ostringstream buf;
  buf << std::setprecision(6);
  buf << "verdict      : " << r.verdict << "\n";
  if (r.provenance.problem_name) buf << "problem      : " << *r.provenance.problem_name << "\n";
  buf << "dimension    : " << r.provenance.dimension << "  (constraints: "
      << r.provenance.constraints << ")\n";
  if (r.direction) {
    buf << "direction    : (";
    for (std::size_t j = 0; j < r.direction->size(); ++j) {
      buf << (j ? ", " : "") << (*r.direction)[j];
    }
    buf << ")  [" << r.certified_by.value_or("?") << "]\n";
    buf << "witness T    : " << r.witness_T.value_or(0.0) << "\n";
    buf << "robustness   : " << r.robustness->kind;
    if (!r.robustness->vanishing_indices.empty()) {
      buf << "  (top form not negative for:";
      for (auto i : r.robustness->vanishing_indices) buf << " g" << i;
      buf << ")";
    }
    buf << "\n\n";
    buf << "  poly  role        mu   leading value   asymptotic\n";
    for (const auto& p : r.profiles) {
      buf << "  g" << std::left << std::setw(4) << p.index << std::setw(12) << p.role
          << std::setw(5) << (p.mu ? std::to_string(*p.mu) : "-inf") << std::setw(16)
          << p.leading_value
          << (p.finite_value ? "finite " + std::to_string(*p.finite_value) : p.sign)
          << std::right << "\n";
    }
  } else {
    buf << "samples      : " << r.sampling.samples << " (seed " << r.sampling.seed << ")\n\n";
    buf << "  alpha0      P(all N samples miss)";
    const bool with_required = !r.statistics.residual_table.empty() &&
                               r.statistics.residual_table.front().required_samples;
    if (with_required) buf << "   N needed for delta=" << *r.statistics.delta;
    buf << "\n";
    for (const auto& row : r.statistics.residual_table) {
      buf << "  " << std::left << std::setw(12) << row.alpha << std::setw(22)
          << row.probability << std::right;
      if (row.required_samples) buf << "   " << *row.required_samples;
      buf << "\n";
    }
    if (r.tolerance_flag_total > 0) {
      buf << "\n  " << r.tolerance_flag_total
          << " coefficient(s) were declared zero within 10x of the threshold\n";
    }
  }
  if (r.sampling.hits) buf << "\nexhaustive hits: " << *r.sampling.hits << "\n";
  if (r.statistics.alpha_estimate) {
    const auto& a = *r.statistics.alpha_estimate;
    buf << "\nalpha estimate: " << a.alpha_hat << "  (" << a.hits << "/" << a.samples
        << ", 95% CI [" << a.lower << ", " << a.upper << "])\n";
  }
  for (const auto& n : r.notes) buf << "note: " << n << "\n";
  buf << "\ntiming: decomposition " << r.timing.decomposition_ms << " ms, "
      << r.timing.per_1000_samples_ms << " ms per 1000 samples\n";
  os << buf.str();
}

}  // namespace polycert
