#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polycert/certify.hpp"
#include "polycert/errors.hpp"
#include "polycert/oracle.hpp"
#include "polycert/parser.hpp"
#include "polycert/report.hpp"

namespace py = pybind11;
using namespace polycert;

namespace {

RunOptions make_options(std::size_t samples, std::uint64_t seed,
                        std::vector<std::vector<double>> directions, bool probe,
                        bool exhaustive, double tol_abs, double tol_rel,
                        std::optional<double> delta, std::optional<double> alpha_floor,
                        unsigned threads) {
  RunOptions o;
  o.sampling.count = samples;
  o.sampling.seed = seed;
  o.sampling.delta = delta;
  o.sampling.alpha_floor = alpha_floor;
  o.sampling.threads = threads;
  o.tolerance = Tolerance{tol_abs, tol_rel};
  o.extra_directions = std::move(directions);
  if (probe) o.probe = ProbeConfig{};
  o.exhaustive = exhaustive;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Directional certificates of unboundedness for polynomial optimization";
  m.attr("__version__") = kToolVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);

  py::class_<Polynomial>(m, "Polynomial")
      .def_property_readonly("dimension", &Polynomial::dimension)
      .def_property_readonly("degree", [](const Polynomial& p) -> std::optional<int> {
        if (p.is_zero()) return std::nullopt;
        return p.degree();
      })
      .def("__len__", &Polynomial::size)
      .def("evaluate", [](const Polynomial& p, const std::vector<double>& x) {
        return p.evaluate(x);
      })
      .def("gradient", [](const Polynomial& p, const std::vector<double>& x) {
        return p.gradient(x);
      })
      .def("homogeneous_parts", [](const Polynomial& p) {
        std::map<int, std::string> out;
        const auto dec = decompose(p);
        for (const auto& [k, part] : dec.parts()) out[k] = part.to_string();
        return out;
      })
      .def("ray_coefficients", [](const Polynomial& p, const std::vector<double>& d) {
        return restrict_to_ray(decompose(p), d);
      })
      .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
      .def("__str__", &Polynomial::to_string)
      .def("__repr__", [](const Polynomial& p) { return "Polynomial('" + p.to_string() + "')"; });

  py::class_<Problem>(m, "Problem")
      .def_property_readonly("dimension", &Problem::dimension)
      .def_property_readonly("constraint_count", &Problem::constraint_count)
      .def_property_readonly("name", &Problem::name)
      .def_property_readonly("objective", &Problem::objective)
      .def_property_readonly("polynomials", &Problem::polynomials);

  m.def("parse_expression",
        [](const std::string& src, std::size_t n) { return parse_expression(src, n); },
        py::arg("source"), py::arg("dimension"));
  m.def("parse_problem", [](const std::string& src) { return parse_problem(src); },
        py::arg("source"));

  m.def("required_samples", &required_samples, py::arg("alpha"), py::arg("delta"));
  m.def("residual_probability", &residual_probability, py::arg("alpha_floor"),
        py::arg("samples"));
  m.def("sample_direction", &sample_direction, py::arg("seed"), py::arg("index"),
        py::arg("dimension"));

  m.def(
      "estimate_alpha",
      [](const Problem& problem, std::size_t samples, std::uint64_t seed, unsigned threads) {
        SampleConfig cfg;
        cfg.count = samples;
        cfg.seed = seed;
        cfg.threads = threads;
        const auto est = estimate_alpha(problem, cfg, Tolerance{});
        py::dict d;
        d["hits"] = est.hits;
        d["samples"] = est.samples;
        d["alpha_hat"] = est.alpha_hat;
        d["interval"] = py::make_tuple(est.interval.lower, est.interval.upper);
        return d;
      },
      py::arg("problem"), py::arg("samples") = 10000, py::arg("seed") = 0,
      py::arg("threads") = 0);

  m.def(
      "grid_alpha",
      [](const Problem& problem, std::size_t resolution) {
        GridSpec spec = GridSpec::defaults_for(problem.dimension());
        if (resolution) spec.resolution = resolution;
        return grid_alpha(problem, spec);
      },
      py::arg("problem"), py::arg("resolution") = 0);

  m.def(
      "verify_ray",
      [](const Problem& problem, const std::vector<double>& d, double T) {
        return verify_ray(problem, d, T).ok;
      },
      py::arg("problem"), py::arg("direction"), py::arg("T"));

  m.def(
      "certify_json",
      [](const Problem& problem, std::size_t samples, std::uint64_t seed,
         std::vector<std::vector<double>> directions, bool probe, bool exhaustive,
         double tol_abs, double tol_rel, std::optional<double> delta,
         std::optional<double> alpha_floor, unsigned threads) {
        const RunOptions options = make_options(samples, seed, std::move(directions), probe,
                                                exhaustive, tol_abs, tol_rel, delta,
                                                alpha_floor, threads);
        CertificateOutcome outcome;
        {
          py::gil_scoped_release release;
          outcome = run_certificate(problem, options);
        }
        return to_machine(make_report(problem, options, outcome));
      },
      py::arg("problem"), py::arg("samples") = 10000, py::arg("seed") = 0,
      py::arg("directions") = std::vector<std::vector<double>>{}, py::arg("probe") = false,
      py::arg("exhaustive") = false, py::arg("tol_abs") = 1e-12, py::arg("tol_rel") = 1e-10,
      py::arg("delta") = py::none(), py::arg("alpha_floor") = py::none(),
      py::arg("threads") = 0);
}
