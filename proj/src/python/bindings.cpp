// Python module cotol._core. Values cross the boundary as strings ("7/2",
// "inf") so that exactness survives; cotol/__init__.py wraps them in
// fractions.Fraction.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cotol/errors.hpp"
#include "cotol/generators.hpp"
#include "cotol/io.hpp"
#include "cotol/reference.hpp"
#include "cotol/theorems.hpp"
#include "cotol/tolerance.hpp"

namespace py = pybind11;
using namespace cotol;

namespace {

Rational to_rational(const py::handle& value) {
  if (py::isinstance<py::int_>(value)) return parse_rational(py::str(value).cast<std::string>());
  if (py::isinstance<py::str>(value)) return parse_rational(value.cast<std::string>());
  if (py::hasattr(value, "numerator") && py::hasattr(value, "denominator") &&
      !py::isinstance<py::float_>(value)) {
    return parse_rational(py::str(value.attr("numerator")).cast<std::string>() + "/" +
                          py::str(value.attr("denominator")).cast<std::string>());
  }
  throw ParseError("costs must be int, str or Fraction, not " +
                   py::str(py::type::of(value)).cast<std::string>());
}

Instance make_instance(const py::dict& costs, const std::vector<std::vector<std::string>>& solutions,
                       const std::string& objective, const std::string& name) {
  std::vector<Element> elements;
  for (const auto& [id, cost] : costs) elements.push_back({id.cast<std::string>(), to_rational(cost)});
  return Instance(std::move(elements), solutions, parse_objective(objective), name);
}

ElementSet resolve(const Instance& instance, const std::vector<std::string>& ids) {
  return normalize_subset(instance, instance.resolve(ids));
}

std::pair<std::string, std::string> tolerance(const Instance& instance, const std::string& kind,
                                              const std::vector<std::string>& ids,
                                              const std::string& precision) {
  SearchOptions options;
  options.product_precision = parse_rational(precision);
  const ToleranceResult result =
      compute_tolerance(instance, analyze(instance), parse_tolerance_kind(kind), resolve(instance, ids), options);
  return {result.value.to_string(), std::string(to_string(result.method))};
}

std::string oracle(const Instance& instance, const std::string& kind,
                   const std::vector<std::string>& ids, const std::string& precision) {
  OracleConfig config;
  config.product_precision = parse_rational(precision);
  return oracle_set_tolerance(instance, resolve(instance, ids), parse_tolerance_kind(kind), config)
      .to_string();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact upper and lower tolerances of combinatorial minimization problems";

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedObjective>(m, "UnsupportedObjective", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("costs"), py::arg("solutions"),
           py::arg("objective") = "sum", py::arg("name") = "")
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("objective",
                             [](const Instance& i) { return std::string(to_string(i.objective())); })
      .def_property_readonly("ids",
                             [](const Instance& i) {
                               std::vector<std::string> ids;
                               for (const Element& e : i.elements()) ids.push_back(e.id);
                               return ids;
                             })
      .def_property_readonly("costs",
                             [](const Instance& i) {
                               std::vector<std::pair<std::string, std::string>> costs;
                               for (const Element& e : i.elements()) costs.emplace_back(e.id, to_string(e.cost));
                               return costs;
                             })
      .def_property_readonly("solutions",
                             [](const Instance& i) {
                               std::vector<std::vector<std::string>> out;
                               for (const ElementSet& s : i.solutions()) {
                                 std::vector<std::string> ids;
                                 for (ElementIndex e : s) ids.push_back(i.id(e));
                                 out.push_back(std::move(ids));
                               }
                               return out;
                             })
      .def("to_json", &instance_to_json)
      .def("fingerprint", &instance_fingerprint)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + (i.name().empty() ? std::string("<unnamed>") : i.name()) + " " +
               std::string(to_string(i.objective())) + ", " + std::to_string(i.element_count()) +
               " elements, " + std::to_string(i.solution_count()) + " solutions>";
      });

  m.def("parse_instance", &parse_instance, py::arg("text"), py::arg("source") = "<input>");
  m.def("load_instance", [](const std::string& path) { return load_instance(path); });
  m.def("worked_examples", &worked_examples);
  m.def("example", [](const std::string& name) { return worked_example(name); });
  m.def("random_suite",
        [](const std::string& objective, std::size_t count, std::uint64_t seed, long max_cost) {
          return random_suite(parse_objective(objective), count, seed, max_cost);
        },
        py::arg("objective"), py::arg("count"), py::arg("seed"), py::arg("max_cost") = 50);

  m.def("summary", [](const Instance& instance) {
    const AnalysisCache cache = analyze(instance);
    py::dict out;
    out["optimal_value"] = to_string(cache.optimal_value);
    std::vector<std::string> ute;
    std::vector<std::string> lte;
    for (ElementIndex e : cache.ute) ute.push_back(instance.id(e));
    for (ElementIndex e : cache.lte) lte.push_back(instance.id(e));
    out["optimal_solutions"] = cache.optimal_set.size();
    out["ute"] = ute;
    out["lte"] = lte;
    return out;
  });
  m.def("tolerance", &tolerance, py::arg("instance"), py::arg("kind"), py::arg("ids"),
        py::arg("precision") = "1/1000000",
        "Returns (value, method); value is a rational string or \"inf\".");
  m.def("oracle", &oracle, py::arg("instance"), py::arg("kind"), py::arg("ids"),
        py::arg("precision") = "1/1000000");
  m.def("report_json",
        [](const Instance& instance, bool use_oracle) {
          ReportOptions options;
          options.use_oracle = use_oracle;
          return report_to_json(build_report(instance, default_queries(instance), options));
        },
        py::arg("instance"), py::arg("use_oracle") = false);
  m.def("verify_json",
        [](const std::vector<Instance>& instances, std::size_t subsets, std::uint64_t seed,
           bool oracle_checks) {
          HarnessOptions options;
          options.oracle_checks = oracle_checks;
          py::gil_scoped_release release;
          return verdicts_to_json(check_all(instances, subsets, seed, options));
        },
        py::arg("instances"), py::arg("subsets") = 4, py::arg("seed") = 1,
        py::arg("oracle_checks") = true);
}
