#include "polycert/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polycert/certify.hpp"
#include "polycert/errors.hpp"
#include "polycert/parser.hpp"
#include "polycert/report.hpp"

namespace polycert::cli {

namespace {

std::vector<double> parse_direction(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size()) {
      throw InputError("--direction: cannot parse component '" + item + "' in \"" + text + "\"");
    }
    v.push_back(x);
  }
  if (v.empty()) throw InputError("--direction: empty direction");
  return v;
}

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open problem file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify unboundedness of a polynomial optimization problem by "
               "searching for feasible descent directions at infinity.",
               "certify"};

  std::string path;
  RunOptions options;
  std::optional<double> delta;
  std::optional<double> alpha_floor;
  std::vector<std::string> directions;
  bool probe = false;
  bool estimate = false;
  std::string format = "human";
  unsigned threads = 0;
  bool exit_on_verdict = false;
  ProbeConfig probe_config;

  app.add_option("problem", path, "Problem file ('-' reads standard input)")->required();
  app.add_option("--samples", options.sampling.count, "Number of sampled directions N")
      ->default_val(10000)
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", options.sampling.seed, "Sampling seed")->default_val(0);
  app.add_option("--delta", delta,
                 "Confidence level; reports the N needed for each alpha0 in the table")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--alpha-floor", alpha_floor, "Extra alpha0 row for the residual table")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--direction", directions,
                 "Direction to test before sampling, e.g. \"1,1\" (repeatable)")
      ->take_all()
      ->allow_extra_args(false);
  app.add_flag("--probe", probe, "Search degenerate strata when sampling fails (heuristic)");
  app.add_option("--probe-restarts", probe_config.restarts, "Probe restarts per subset")
      ->check(CLI::PositiveNumber);
  app.add_option("--probe-iterations", probe_config.max_iterations,
                 "Probe descent iterations per restart")
      ->check(CLI::PositiveNumber);
  app.add_flag("--estimate-alpha", estimate, "Also estimate alpha with a Clopper-Pearson interval");
  app.add_flag("--exhaustive", options.exhaustive, "Count every certifying sample");
  app.add_option("--tol-abs", options.tolerance.abs, "Absolute zero tolerance")
      ->default_val(1e-12)
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tol-rel", options.tolerance.rel, "Relative zero tolerance")
      ->default_val(1e-10)
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--threads", threads, "Worker threads (0 = auto; CERTIFY_THREADS overrides)");
  app.add_flag("--exit-on-verdict", exit_on_verdict,
               "Exit 10 when unbounded, 11 when inconclusive");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (const char* env = std::getenv("CERTIFY_THREADS"); env && *env) {
      try {
        const long v = std::stol(env);
        if (v < 0) throw std::out_of_range("negative");
        threads = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        throw InputError(std::string("CERTIFY_THREADS: invalid value '") + env + "'");
      }
    }
    if (delta && *delta >= 1.0) throw InputError("--delta must lie in (0, 1)");
    if (delta && *delta <= 0.0) throw InputError("--delta must lie in (0, 1)");
    if (alpha_floor && *alpha_floor <= 0.0) throw InputError("--alpha-floor must lie in (0, 1]");
    options.sampling.delta = delta;
    options.sampling.alpha_floor = alpha_floor;
    options.sampling.threads = threads;
    for (const auto& d : directions) options.extra_directions.push_back(parse_direction(d));
    if (probe) options.probe = probe_config;

    Problem problem = [&] {
      const std::string source = read_source(path);
      try {
        return parse_problem(source);
      } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
      } catch (const ResourceError& e) {
        throw InputError(path + ": " + e.what());
      }
    }();
    for (std::size_t k = 0; k < options.extra_directions.size(); ++k) {
      if (options.extra_directions[k].size() != problem.dimension()) {
        throw InputError("--direction \"" + directions[k] + "\": expected " +
                         std::to_string(problem.dimension()) + " components");
      }
    }

    const CertificateOutcome outcome = run_certificate(problem, options);
    std::optional<AlphaEstimate> alpha;
    if (estimate) alpha = estimate_alpha(problem, options.sampling, options.tolerance);
    const Report report = make_report(problem, options, outcome, alpha);

    if (format == "machine") {
      out << to_machine(report);
    } else {
      write_human(out, report);
    }
    out.flush();
    if (exit_on_verdict) return outcome.unbounded() ? kExitUnbounded : kExitInconclusive;
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace polycert::cli
