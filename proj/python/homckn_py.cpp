// Python bindings. Structured results cross the boundary as JSON and come
// back as plain dicts and lists.
#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "homckn/calculus.hpp"
#include "homckn/constants.hpp"
#include "homckn/corpus.hpp"
#include "homckn/error.hpp"
#include "homckn/runner.hpp"
#include "homckn/sharpness.hpp"

namespace py = pybind11;
using namespace homckn;
using nlohmann::ordered_json;

namespace {

py::object to_python(const ordered_json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ordered_json from_python(const py::object& o) {
  const auto text = py::module_::import("json").attr("dumps")(o).cast<std::string>();
  return ordered_json::parse(text);
}

QuasiNormSpec norm_of(const std::string& group, const std::string& norm) { return parse_norm(norm, parse_group(group)); }

ScalarField pick_field(const QuasiNormSpec& norm, const std::string& field, std::uint64_t seed) {
  if (field == "gaussian") return gaussian_field(norm);
  // "<index>" picks entry index of the seeded mixed corpus
  const int index = std::stoi(field);
  CorpusSpec spec;
  spec.count = index + 1;
  spec.seed = seed;
  return make_corpus(norm, spec).back();
}

}  // namespace

PYBIND11_MODULE(_homckn, m) {
  m.doc() = "Hardy and Caffarelli-Kohn-Nirenberg type inequalities on homogeneous groups";

  py::register_exception<Error>(m, "HomcknError", PyExc_RuntimeError);

  m.def("homogeneous_dimension", [](const std::string& group) { return homogeneous_dimension(parse_group(group)); },
        py::arg("group"));

  m.def(
      "norm", [](const std::string& group, const std::string& norm, const std::vector<double>& x) {
        return norm_of(group, norm)(x);
      },
      py::arg("group"), py::arg("norm"), py::arg("x"));

  m.def(
      "homogeneity_deviation",
      [](const std::string& group, const std::string& norm, int samples, std::uint64_t seed) {
        return homogeneity_deviation(norm_of(group, norm), samples, seed);
      },
      py::arg("group"), py::arg("norm"), py::arg("samples") = 1000, py::arg("seed") = 1);

  m.def(
      "radial_derivative",
      [](const std::string& group, const std::string& norm, const std::vector<double>& x, const std::string& field,
         std::uint64_t seed, const std::string& mode) {
        const auto n = norm_of(group, norm);
        const auto f = pick_field(n, field, seed);
        const auto rm = mode == "orbit_fd" ? RadialMode::orbit_fd : RadialMode::analytic;
        return radial_derivative(n, f, x, rm);
      },
      py::arg("group"), py::arg("norm"), py::arg("x"), py::arg("field") = "gaussian", py::arg("seed") = 1,
      py::arg("mode") = "analytic",
      "R f(x) for the truncated Gaussian (field='gaussian') or entry i of the seeded corpus (field='i').");

  m.def(
      "sphere_measure",
      [](const std::string& group, const std::string& norm) {
        const auto n = norm_of(group, norm);
        const auto s = cached_sphere_measure(n, QuadratureConfig{});
        return to_python({{"group", s.group},
                          {"norm", s.norm},
                          {"value", s.value},
                          {"error_estimate", s.error_estimate},
                          {"config_hash", s.config_hash}});
      },
      py::arg("group"), py::arg("norm"));

  m.def(
      "constants",
      [](double q, double p, double alpha, double beta, std::optional<double> theta, int k, int mm) {
        ConstantInputs in{q, p, alpha, beta, theta.value_or(alpha), k, mm};
        py::dict out;
        for (const auto& c : constant_table(in)) {
          out[py::str(c.name)] = c.value ? py::object(py::float_(*c.value)) : py::object(py::none());
        }
        return out;
      },
      py::arg("q"), py::arg("p") = 2.0, py::arg("alpha") = 0.0, py::arg("beta") = 1.0, py::arg("theta") = py::none(),
      py::arg("k") = 1, py::arg("m") = 1, "Constant table; degenerate entries map to None.");

  m.def(
      "verify",
      [](const py::object& config) {
        const auto c = config.is_none() ? RunConfig{} : RunConfig::from_json(from_python(config));
        const auto r = run_verify(c);
        ordered_json reports = ordered_json::array();
        for (const auto& rep : r.reports) reports.push_back(to_json(rep));
        return to_python(
            {{"summary", r.summary()}, {"warnings", r.warnings}, {"errors", r.errors}, {"reports", reports}});
      },
      py::arg("config") = py::none(), "Run a batch given a config dict (same layout as the CLI config file).");

  m.def(
      "sharpness_scan",
      [](const std::string& group, const std::string& norm, double p, double alpha, double beta,
         std::optional<std::vector<std::pair<double, double>>> schedule, const std::string& transitions) {
        const auto r = sharpness_scan(norm_of(group, norm), p, alpha, beta, schedule.value_or(default_schedule()),
                                      QuadratureConfig{}, parse_transition_style(transitions));
        return to_python(to_json(r));
      },
      py::arg("group"), py::arg("norm"), py::arg("p") = 2.0, py::arg("alpha") = 0.0, py::arg("beta") = 1.0,
      py::arg("schedule") = py::none(), py::arg("transitions") = "balanced");
}
