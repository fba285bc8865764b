#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nabla_kit/cli.hpp"

namespace py = pybind11;
using namespace nabla_kit;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_py(v));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default:
      throw std::runtime_error("unsupported JSON value");
  }
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ContractViolation("matrix must have at least one row");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw ContractViolation("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

template <class T>
py::object as_py(const T& value) {
  return to_py(json(value));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Divided differences, weighted-sum identities and positivity certificates";

  auto& base = py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_ValueError);
  py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  (void)base;

  m.def("divided_difference",
        [](const std::vector<double>& points, const std::vector<double>& values) {
          if (points.size() != values.size()) throw ContractViolation("points and values differ in length");
          return divided_difference(points, values);
        },
        py::arg("points"), py::arg("values"));

  m.def("divided_difference_2d",
        [](const std::vector<double>& ys, const std::vector<double>& zs,
           const std::vector<std::vector<double>>& values) {
          return divided_difference_2d(ys, zs, to_matrix(values));
        },
        py::arg("ys"), py::arg("zs"), py::arg("values"));

  m.def("classify_sampled",
        [](const std::vector<double>& grid, const std::vector<double>& values, int m) {
          return as_py(classify_sampled(Grid1D(grid), values, m));
        },
        py::arg("grid"), py::arg("values"), py::arg("m"));

  m.def("seq_identity",
        [](const std::vector<double>& p, const std::vector<double>& a, int order) {
          return as_py(seq_identity(p, a, order));
        },
        py::arg("p"), py::arg("a"), py::arg("m"));

  m.def("func_identity",
        [](const std::vector<double>& p, const std::vector<double>& values, const std::vector<double>& grid,
           int order) { return as_py(func_identity(p, values, Grid1D(grid), order)); },
        py::arg("p"), py::arg("values"), py::arg("grid"), py::arg("m"));

  m.def("double_sum_identity",
        [](const std::vector<std::vector<double>>& p, const std::vector<std::vector<double>>& values,
           const std::vector<double>& ys, const std::vector<double>& zs, int mo, int no) {
          return as_py(double_sum_identity(to_matrix(p), to_matrix(values), Grid2D{Grid1D(ys), Grid1D(zs)}, mo, no));
        },
        py::arg("p"), py::arg("values"), py::arg("ys"), py::arg("zs"), py::arg("m"), py::arg("n"));

  m.def("certify_double_sum",
        [](const std::vector<std::vector<double>>& p, const std::vector<double>& ys, const std::vector<double>& zs,
           int mo, int no, double abs_tol) {
          TolerancePolicy tol;
          tol.abs_tol = abs_tol;
          return as_py(certify_double_sum(to_matrix(p), Grid2D{Grid1D(ys), Grid1D(zs)}, mo, no, tol));
        },
        py::arg("p"), py::arg("ys"), py::arg("zs"), py::arg("m"), py::arg("n"), py::arg("abs_tol") = 1e-10);

  m.def("rodrigues_weight",
        [](int M, const std::vector<double>& x, double a, double b) {
          const auto w = rodrigues_weight(M, a, b);
          std::vector<double> out;
          out.reserve(x.size());
          for (double v : x) out.push_back(w(v));
          return out;
        },
        py::arg("M"), py::arg("x"), py::arg("a") = -1.0, py::arg("b") = 1.0);

  m.def("psd_check",
        [](const std::vector<std::vector<double>>& a) { return as_py(psd_check(to_matrix(a))); },
        py::arg("matrix"));

  m.def("run_json",
        [](const std::string& command, const std::string& input) {
          cli::RunConfig cfg;
          cfg.command = command;
          cfg.input = json::parse(input);
          cfg.tolerance = TolerancePolicy::from_environment();
          return to_py(cli::run(cfg).to_json_untimed());
        },
        py::arg("command"), py::arg("input"),
        "Run a command-line operation on a JSON input; returns the report as a dict.");

  m.def("commands", &cli::commands);
}
